//! Isogeny-decomposition blocks and certificates.

use crate::spectra::{EndoClass, Kind};

/// One isotypic factor of a decomposition: a simple base of dimension `m`
/// raised to the power `k`, together with its endomorphism class and the
/// resulting Picard number.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Block {
    m: u64,
    k: u64,
    endo: EndoClass,
    rho: u64,
}

impl Block {
    /// Builds a block, checking that the endomorphism class is realizable for
    /// base dimension `m`. `rho` is always derived from the class and power.
    pub fn new(m: u64, k: u64, kind: Kind, param: u64) -> Option<Block> {
        if k == 0 {
            return None;
        }
        let endo = EndoClass::new(kind, param, m)?;
        Some(Block { m, k, endo, rho: endo.rho_power(k) })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn endo(&self) -> EndoClass {
        self.endo
    }

    pub fn rho(&self) -> u64 {
        self.rho
    }

    /// Total dimension `m * k` contributed by the block.
    pub fn dim(&self) -> u64 {
        self.m * self.k
    }
}

impl std::fmt::Display for Block {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(m={}, k={}, {}, param={}, rho={})",
            self.m,
            self.k,
            self.endo.kind(),
            self.endo.param(),
            self.rho
        )
    }
}

/// A multiset of blocks witnessing that its total Picard number is realizable
/// in dimension `g`. Repeated identical blocks are allowed; they stand for
/// distinct isogeny classes with the same numerical data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    g: u64,
    blocks: Vec<Block>,
}

impl Decomposition {
    /// Builds a decomposition, checking that block dimensions sum to `g`.
    pub fn new(g: u64, blocks: Vec<Block>) -> Option<Decomposition> {
        if g == 0 || blocks.is_empty() {
            return None;
        }
        let total: u64 = blocks.iter().map(Block::dim).sum();
        (total == g).then_some(Decomposition { g, blocks })
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn total_rho(&self) -> u64 {
        self.blocks.iter().map(Block::rho).sum()
    }
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "g={} rho={}:", self.g, self.total_rho())?;
        for b in &self.blocks {
            write!(f, " {b}")?;
        }
        Ok(())
    }
}
