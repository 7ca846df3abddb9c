//! Exact computation of the realizable Picard numbers of complex abelian
//! varieties.
//!
//! For each dimension `g` the Picard number of an abelian variety lies in
//! `[1, g^2]`, but not every value in that range occurs. This crate computes
//! the set `R_g` of realizable values exactly, produces explicit
//! isogeny-decomposition certificates for every realizable value, and checks
//! the structural facts about `R_g`: the two gap windows below `g^2`, the
//! shapes forced at and near the maximum, prefix completeness up to the
//! square-sum bound, and the tiling of large values by translated copies of
//! lower sets.
//!
//! Entry points:
//! - [`ReachTable`]: memoized computation of `R_g` via the sumset recursion.
//! - [`BlockTable`]: block-count-tracked reachability, certificates, and
//!   per-length maxima.
//! - [`analysis`]: densities, gap/distribution verification, four-square
//!   realization.
//!
//! All sets are immutable word-packed bitmaps and safe to share across
//! threads; computations are deterministic regardless of thread count.

pub mod analysis;
pub mod decomp;
pub mod engine;
mod error;
pub mod set;
pub mod spectra;

pub use analysis::{
    below_prefix_bound, density, distribution_onset, four_square, large_threshold,
    prefix_bound_ceil, prefix_complete, realize_by_squares, translated_set, verify_distribution,
    verify_theorems, Check, Rational, VerificationReport,
};
pub use decomp::{Block, Decomposition};
pub use engine::{
    enumerate_shapes, oracle_r, BlockTable, ReachTable, ShapeBlock, Shapes, DEFAULT_G_CAP,
    HARD_G_CAP, ORACLE_G_LIMIT,
};
pub use error::Error;
pub use set::{GapInterval, PicardSet};
pub use spectra::{endo_classes, self_product_spectrum, simple_spectrum, EndoClass, Kind};
