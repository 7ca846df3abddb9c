//! Inductive computation of the realizable sets `R_g`, an independent
//! brute-force oracle, and certificate search over block decompositions.
//!
//! `R_g` satisfies the recursion
//!
//! ```text
//! R_g = U_{k | g} S(g/k, k)  U  U_{1 <= n <= g-1} (R_n + R_{g-n})
//! ```
//!
//! where `S(m, k)` is the self-product spectrum and `+` the sumset. The
//! equivalent formulation as a closure over block generators (every multiset
//! of blocks whose dimensions sum to `g`) backs the certificate machinery;
//! the two routes are checked against each other in the test suite.

use rayon::prelude::*;

use crate::decomp::{Block, Decomposition};
use crate::error::Error;
use crate::set::{or_shifted, set_bit, test_bit, PicardSet};
use crate::spectra::{divisors, endo_classes, self_product_spectrum, EndoClass};

/// Default dimension cap; bounds the `O(g^2)` per-row memory.
pub const DEFAULT_G_CAP: u64 = 4096;

/// Hard ceiling: every Picard number fits comfortably in 64 bits below it.
pub const HARD_G_CAP: u64 = 100_000;

/// The brute-force oracle enumerates all block multisets; past this
/// dimension the enumeration blows up.
pub const ORACLE_G_LIMIT: u64 = 12;

/// Memoized table of realizable sets, filled in increasing dimension order.
/// Rows are immutable once published.
pub struct ReachTable {
    cap: u64,
    rows: Vec<PicardSet>,
}

impl ReachTable {
    pub fn new() -> Self {
        Self::with_cap(DEFAULT_G_CAP)
    }

    /// A table with a custom dimension cap (clamped to [`HARD_G_CAP`]).
    pub fn with_cap(cap: u64) -> Self {
        ReachTable {
            cap: cap.min(HARD_G_CAP),
            rows: vec![PicardSet::from_members(0, [0])],
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Largest dimension with a computed row.
    pub fn computed_through(&self) -> u64 {
        (self.rows.len() - 1) as u64
    }

    /// The row for `g`, if already computed.
    pub fn get(&self, g: u64) -> Option<&PicardSet> {
        self.rows.get(g as usize)
    }

    /// Computes (and memoizes) `R_g`, filling every lower row first.
    pub fn compute(&mut self, g: u64) -> Result<&PicardSet, Error> {
        if g > self.cap {
            return Err(Error::CapExceeded { g, cap: self.cap });
        }
        while self.computed_through() < g {
            let d = self.rows.len() as u64;
            let row = compute_row(&self.rows, d);
            debug_assert!(d == 0 || (row.contains(1) && row.max_value() == Some(d * d)));
            debug_assert!(d == 0 || !row.contains(0));
            self.rows.push(row);
        }
        Ok(&self.rows[g as usize])
    }
}

impl Default for ReachTable {
    fn default() -> Self {
        Self::new()
    }
}

/// One row of the recursion: self-product spectra for every `k | g`, plus the
/// sumsets of complementary lower rows. The union over splits only needs
/// `n <= g/2` by symmetry, and folds in parallel; OR-accumulation makes the
/// result independent of evaluation order.
fn compute_row(rows: &[PicardSet], g: u64) -> PicardSet {
    let mut words = (1..=g / 2)
        .into_par_iter()
        .fold(
            || PicardSet::zero_words(g),
            |mut acc, n| {
                or_sumset_into(&mut acc, &rows[n as usize], &rows[(g - n) as usize]);
                acc
            },
        )
        .reduce(
            || PicardSet::zero_words(g),
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x |= y;
                }
                a
            },
        );
    for k in divisors(g) {
        for v in self_product_spectrum(g / k, k) {
            set_bit(&mut words, v);
        }
    }
    PicardSet::from_words(g, words)
}

fn or_sumset_into(acc: &mut [u64], a: &PicardSet, b: &PicardSet) {
    let (driver, shifted) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    for x in driver.iter() {
        or_shifted(acc, shifted.words(), x);
    }
}

/// Independent verification oracle: enumerates every multiset of base/power
/// pairs `(m, k)` with total dimension `g` and every choice of spectrum value
/// per pair, and collects the sums. No sumset recursion, no shared memo.
pub fn oracle_r(g: u64) -> Result<PicardSet, Error> {
    if g > ORACLE_G_LIMIT {
        return Err(Error::OracleLimit { g, limit: ORACLE_G_LIMIT });
    }
    if g == 0 {
        return Ok(PicardSet::from_members(0, [0]));
    }
    let mut items: Vec<(u64, Vec<u64>)> = Vec::new();
    for s in 1..=g {
        for m in divisors(s) {
            items.push((s, self_product_spectrum(m, s / m)));
        }
    }
    let mut words = PicardSet::zero_words(g);

    fn walk(items: &[(u64, Vec<u64>)], from: usize, rem: u64, sum: u64, words: &mut [u64]) {
        if rem == 0 {
            set_bit(words, sum);
            return;
        }
        for idx in from..items.len() {
            let (dim, vals) = &items[idx];
            if *dim <= rem {
                for &v in vals {
                    walk(items, idx, rem - dim, sum + v, words);
                }
            }
        }
    }
    walk(&items, 0, g, 0, &mut words);
    Ok(PicardSet::from_words(g, words))
}

/// A block generator: one realizable `(m, k, endo)` with its Picard number.
#[derive(Clone, Copy, Debug)]
struct Gen {
    m: u64,
    k: u64,
    endo: EndoClass,
    rho: u64,
}

impl Gen {
    fn dim(&self) -> u64 {
        self.m * self.k
    }
}

/// Block-count-tracked reachability: `exact[d][c]` is the set of Picard
/// numbers attainable in dimension `d` with exactly `c` blocks. Backs
/// certificate search, the per-length maxima, and the generator-closure
/// route to `R_d`.
pub struct BlockTable {
    g_max: u64,
    gens: Vec<Gen>,
    exact: Vec<Vec<Vec<u64>>>,
}

impl BlockTable {
    pub fn build(g_max: u64) -> BlockTable {
        // Generators ordered by the certificate tie-break: m descending,
        // k descending, kind I<II<III<IV, parameter ascending.
        let mut gens = Vec::new();
        for s in 1..=g_max {
            for m in divisors(s) {
                for endo in endo_classes(m) {
                    let k = s / m;
                    gens.push(Gen { m, k, endo, rho: endo.rho_power(k) });
                }
            }
        }
        gens.sort_by(|a, b| {
            b.m.cmp(&a.m)
                .then(b.k.cmp(&a.k))
                .then(a.endo.kind().cmp(&b.endo.kind()))
                .then(a.endo.param().cmp(&b.endo.param()))
        });

        let mut exact: Vec<Vec<Vec<u64>>> = Vec::with_capacity(g_max as usize + 1);
        let mut zero_layer = PicardSet::zero_words(0);
        set_bit(&mut zero_layer, 0);
        exact.push(vec![zero_layer]);
        for d in 1..=g_max {
            let mut layers = vec![PicardSet::zero_words(d)]; // c = 0: empty
            for c in 1..=d {
                let mut acc = PicardSet::zero_words(d);
                for gen in &gens {
                    let dim = gen.dim();
                    if dim <= d && c - 1 <= d - dim {
                        or_shifted(&mut acc, &exact[(d - dim) as usize][(c - 1) as usize], gen.rho);
                    }
                }
                layers.push(acc);
            }
            exact.push(layers);
        }
        BlockTable { g_max, gens, exact }
    }

    pub fn g_max(&self) -> u64 {
        self.g_max
    }

    /// `R_d` as the union over block counts — the generator-closure route.
    pub fn closure_row(&self, d: u64) -> PicardSet {
        let mut words = PicardSet::zero_words(d);
        for layer in &self.exact[d as usize] {
            for (x, y) in words.iter_mut().zip(layer) {
                *x |= y;
            }
        }
        PicardSet::from_words(d, words)
    }

    /// Maximum total Picard number over decompositions of dimension `g` with
    /// exactly `r` blocks.
    pub fn max_picard_with_blocks(&self, g: u64, r: u64) -> u64 {
        assert!(1 <= r && r <= g && g <= self.g_max);
        let layer = &self.exact[g as usize][r as usize];
        for (i, &w) in layer.iter().enumerate().rev() {
            if w != 0 {
                return (i as u64) * 64 + 63 - u64::from(w.leading_zeros());
            }
        }
        unreachable!("every block count up to g is attainable");
    }

    /// A canonical decomposition witnessing `rho` in dimension `g`, or `None`
    /// when `rho` is not realizable. Deterministic: fewest blocks, then the
    /// generator tie-break at every trace step.
    pub fn find_certificate(&self, g: u64, rho: u64) -> Option<Decomposition> {
        assert!(1 <= g && g <= self.g_max && 1 <= rho && rho <= g * g);
        let c = (1..=g).find(|&c| test_bit(&self.exact[g as usize][c as usize], rho))?;
        let mut blocks = Vec::with_capacity(c as usize);
        let (mut d, mut r, mut c) = (g, rho, c);
        while c > 0 {
            let gen = self
                .gens
                .iter()
                .find(|gen| {
                    let dim = gen.dim();
                    dim <= d
                        && gen.rho <= r
                        && c - 1 <= d - dim
                        && test_bit(&self.exact[(d - dim) as usize][(c - 1) as usize], r - gen.rho)
                })
                .expect("reachable cell must have a generator");
            blocks.push(
                Block::new(gen.m, gen.k, gen.endo.kind(), gen.endo.param())
                    .expect("generators are realizability-checked"),
            );
            d -= gen.dim();
            r -= gen.rho;
            c -= 1;
        }
        debug_assert!(d == 0 && r == 0);
        Some(Decomposition::new(g, blocks).expect("trace preserves the dimension sum"))
    }
}

/// One block of a shape: `(m, k, rho)` with the endomorphism kind quotiented
/// out, so e.g. a `rho = 1` elliptic factor is a single shape whether or not
/// it has complex multiplication.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ShapeBlock {
    pub m: u64,
    pub k: u64,
    pub rho: u64,
}

impl ShapeBlock {
    pub fn dim(&self) -> u64 {
        self.m * self.k
    }
}

impl std::fmt::Display for ShapeBlock {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.m, self.k, self.rho)
    }
}

/// Result of shape enumeration; `truncated` reports that `max_count` cut the
/// search short.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Shapes {
    pub shapes: Vec<Vec<ShapeBlock>>,
    pub truncated: bool,
}

/// All distinct multisets of `(m, k, rho)` triples realizing `(g, rho)`, up
/// to `max_count`. Each shape is reported with blocks in canonical order
/// (dimension descending, rho descending, m ascending) and the list itself is
/// sorted; output is fully deterministic.
pub fn enumerate_shapes(
    table: &mut ReachTable,
    g: u64,
    rho: u64,
    max_count: usize,
) -> Result<Shapes, Error> {
    assert!(1 <= g && 1 <= rho && rho <= g * g);
    table.compute(g)?;

    let mut triples = Vec::new();
    for s in 1..=g {
        for m in divisors(s) {
            for v in self_product_spectrum(m, s / m) {
                triples.push(ShapeBlock { m, k: s / m, rho: v });
            }
        }
    }
    triples.sort_by(|a, b| b.m.cmp(&a.m).then(b.k.cmp(&a.k)).then(a.rho.cmp(&b.rho)));

    let feasible = |d: u64, r: u64, table: &ReachTable| -> bool {
        if d == 0 {
            return r == 0;
        }
        r >= 1 && r <= d * d && table.get(d).is_some_and(|row| row.contains(r))
    };

    struct Search<'a> {
        triples: &'a [ShapeBlock],
        table: &'a ReachTable,
        max_count: usize,
        out: Vec<Vec<ShapeBlock>>,
        stack: Vec<ShapeBlock>,
        truncated: bool,
    }

    impl Search<'_> {
        fn run(&mut self, from: usize, d: u64, r: u64) {
            if self.truncated {
                return;
            }
            if d == 0 {
                debug_assert_eq!(r, 0);
                if self.out.len() == self.max_count {
                    self.truncated = true;
                } else {
                    self.out.push(self.stack.clone());
                }
                return;
            }
            for idx in from..self.triples.len() {
                let t = self.triples[idx];
                if t.dim() > d || t.rho > r {
                    continue;
                }
                let (d2, r2) = (d - t.dim(), r - t.rho);
                if d2 == 0 && r2 != 0 {
                    continue;
                }
                if d2 > 0 && !(r2 >= 1 && r2 <= d2 * d2 && self.table.get(d2).unwrap().contains(r2)) {
                    continue;
                }
                self.stack.push(t);
                self.run(idx, d2, r2);
                self.stack.pop();
                if self.truncated {
                    return;
                }
            }
        }
    }

    let mut shapes = Shapes { shapes: Vec::new(), truncated: false };
    if feasible(g, rho, table) {
        let mut search = Search {
            triples: &triples,
            table,
            max_count,
            out: Vec::new(),
            stack: Vec::new(),
            truncated: false,
        };
        search.run(0, g, rho);
        shapes.truncated = search.truncated;
        shapes.shapes = search.out;
        let key = |b: &ShapeBlock| (std::cmp::Reverse(b.dim()), std::cmp::Reverse(b.rho), b.m, b.k);
        for shape in &mut shapes.shapes {
            shape.sort_by_key(key);
        }
        shapes.shapes.sort_by(|a, b| {
            a.iter().map(key).collect::<Vec<_>>().cmp(&b.iter().map(key).collect())
        });
    }
    Ok(shapes)
}
