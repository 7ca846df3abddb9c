//! Endomorphism-algebra classes of simple abelian varieties and the
//! closed-form Picard numbers of their self-products.
//!
//! A simple abelian variety of dimension `m` carries one of four kinds of
//! endomorphism algebra (Albert's classification). The only numerical data
//! that matters for Picard numbers is a single integer parameter per kind:
//! the field degree `e` for kinds I-III, and the collapsed value
//! `v = e0 * d^2` for kind IV. Realizability in dimension `m` and the Picard
//! number of the `k`-th power are then:
//!
//! | kind | realizable when           | rho(A^k)        |
//! |------|---------------------------|-----------------|
//! | I    | e divides m               | e * k(k+1)/2    |
//! | II   | 2e divides m              | e * k(2k+1)     |
//! | III  | 2e divides m and m > 2e   | e * k(2k-1)     |
//! | IV   | v divides m               | v * k^2         |
//!
//! The kind III exclusion at `m = 2e` encodes the one case where no simple
//! variety exists; every other parameter passing the divisibility test is
//! attained.

/// Endomorphism-algebra kind: totally real field (I), totally indefinite
/// quaternion algebra (II), totally definite quaternion algebra (III),
/// division algebra over a CM field (IV).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Kind {
    I,
    II,
    III,
    IV,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::I, Kind::II, Kind::III, Kind::IV];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::I => "I",
            Kind::II => "II",
            Kind::III => "III",
            Kind::IV => "IV",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<Kind> {
        Some(match s {
            "I" => Kind::I,
            "II" => Kind::II,
            "III" => Kind::III,
            "IV" => Kind::IV,
            _ => return None,
        })
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A realizability-checked endomorphism class: kind plus its value-relevant
/// integer parameter (`e` for I-III, `v = e0 * d^2` for IV).
///
/// Only constructible through [`EndoClass::new`], which enforces the
/// divisibility conditions for a given base dimension.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EndoClass {
    kind: Kind,
    param: u64,
}

impl EndoClass {
    /// Checks that `(kind, param)` is realizable by a simple abelian variety
    /// of dimension `base_dim` and returns the class if so.
    pub fn new(kind: Kind, param: u64, base_dim: u64) -> Option<EndoClass> {
        if param == 0 || base_dim == 0 {
            return None;
        }
        let ok = match kind {
            Kind::I | Kind::IV => base_dim.is_multiple_of(param),
            Kind::II => base_dim.is_multiple_of(2 * param),
            Kind::III => base_dim.is_multiple_of(2 * param) && base_dim / (2 * param) >= 2,
        };
        ok.then_some(EndoClass { kind, param })
    }

    pub fn kind(self) -> Kind {
        self.kind
    }

    pub fn param(self) -> u64 {
        self.param
    }

    /// Picard number of the `k`-th power of a simple variety with this
    /// endomorphism class.
    pub fn rho_power(self, k: u64) -> u64 {
        assert!(k >= 1);
        let p = self.param;
        match self.kind {
            Kind::I => p * k * (k + 1) / 2,
            Kind::II => p * k * (2 * k + 1),
            Kind::III => p * k * (2 * k - 1),
            Kind::IV => p * k * k,
        }
    }
}

pub(crate) fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// All endomorphism classes realizable in base dimension `m`, ordered by
/// `(kind, param)`.
pub fn endo_classes(m: u64) -> Vec<EndoClass> {
    let mut out = Vec::new();
    for kind in Kind::ALL {
        for p in divisors(m) {
            if let Some(c) = EndoClass::new(kind, p, m) {
                out.push(c);
            }
        }
    }
    out
}

/// Picard numbers of simple abelian varieties of dimension `m`
/// (the `k = 1` slice of [`self_product_spectrum`]), sorted ascending.
pub fn simple_spectrum(m: u64) -> Vec<u64> {
    self_product_spectrum(m, 1)
}

/// Picard numbers attainable by `A^k` with `A` simple of dimension `m`,
/// sorted ascending.
pub fn self_product_spectrum(m: u64, k: u64) -> Vec<u64> {
    assert!(m >= 1 && k >= 1);
    let mut vals: Vec<u64> = endo_classes(m).iter().map(|c| c.rho_power(k)).collect();
    vals.sort_unstable();
    vals.dedup();
    vals
}
