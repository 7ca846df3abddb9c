//! Densities, prefix completeness, square-sum realization, distribution of
//! large values, and the consolidated verification report.
//!
//! Every real-valued threshold is evaluated as an exact integer predicate
//! obtained by squaring, never through floating point, so boundary cases are
//! decided correctly.

use crate::decomp::{Block, Decomposition};
use crate::engine::{enumerate_shapes, ReachTable, ShapeBlock};
use crate::error::Error;
use crate::set::{or_shifted, PicardSet};
use crate::spectra::Kind;

/// An exact fraction; kept unreduced so `num` is always the member count and
/// `den` always `g^2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl Rational {
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Density of the realizable set: `|R_g| / g^2` as an exact fraction.
pub fn density(table: &mut ReachTable, g: u64) -> Result<Rational, Error> {
    assert!(g >= 1);
    let count = table.compute(g)?.len();
    Ok(Rational { num: count, den: g * g })
}

/// The largest `N` with `[1, N]` fully contained in `R_g`.
pub fn prefix_complete(table: &mut ReachTable, g: u64) -> Result<u64, Error> {
    assert!(g >= 1);
    let row = table.compute(g)?;
    let mut n = 0;
    while row.contains(n + 1) {
        n += 1;
    }
    Ok(n)
}

/// Exact predicate for `n < b_g` where `b_g = g^2 + 8g + 1 - 4*sqrt(2)*g^(3/2)`:
/// below this bound every value is realizable through the square-sum recipe
/// for large enough `g`.
pub fn below_prefix_bound(g: u64, n: u64) -> bool {
    let c = g * g + 8 * g + 1;
    n < c && u128::from(c - n) * u128::from(c - n) > 32 * u128::from(g) * u128::from(g) * u128::from(g)
}

/// `ceil(b_g)`, computed exactly: `g^2 + 8g + 1 - floor(sqrt(32 g^3))`.
pub fn prefix_bound_ceil(g: u64) -> u64 {
    g * g + 8 * g + 1 - (32 * g * g * g).isqrt()
}

/// The four-square decomposition of `m`: non-increasing, lexicographically
/// greatest among non-increasing solutions, by brute force over `n2 <= sqrt(m)`.
pub fn four_square(m: u64) -> [u64; 4] {
    for n2 in (0..=m.isqrt()).rev() {
        let r2 = m - n2 * n2;
        for n3 in (0..=r2.isqrt().min(n2)).rev() {
            let r3 = r2 - n3 * n3;
            for n4 in (0..=r3.isqrt().min(n3)).rev() {
                let r4 = r3 - n4 * n4;
                let n5 = r4.isqrt();
                if n5 * n5 == r4 && n5 <= n4 {
                    return [n2, n3, n4, n5];
                }
            }
        }
    }
    unreachable!("every nonnegative integer is a sum of four squares");
}

/// Realizes `n` in dimension `g` through the square-sum recipe: a CM elliptic
/// power of exponent `floor(sqrt(n-1))`, four more CM powers covering the
/// remainder, and a very general filler absorbing the leftover dimension.
///
/// Returns `None` when the greedy recipe violates the dimension budget; the
/// recipe is sufficient but not necessary, so `None` does not imply `n` is
/// unrealizable.
pub fn realize_by_squares(n: u64, g: u64) -> Option<Decomposition> {
    assert!(g >= 1 && n >= 1 && n <= g * g);
    let lead = (n - 1).isqrt();
    let rest = four_square(n - 1 - lead * lead);
    let parts: Vec<u64> = std::iter::once(lead).chain(rest).filter(|&p| p > 0).collect();
    let used: u64 = parts.iter().sum();
    if used > g - 1 {
        return None;
    }
    let mut blocks: Vec<Block> = parts
        .iter()
        .map(|&p| Block::new(1, p, Kind::IV, 1).expect("CM elliptic power is always realizable"))
        .collect();
    blocks.push(Block::new(g - used, 1, Kind::I, 1).expect("very general filler"));
    Some(Decomposition::new(g, blocks).expect("parts plus filler sum to g"))
}

/// The largest translate index `s` for which values in `(g-s)^2 + R_s` are
/// provably "large": both exact predicates
/// `(g-s)^2 + 1 >= g(g+1)/2` and `s^2 + 4s + 1 < 2g` hold.
pub fn large_threshold(g: u64) -> Result<u64, Error> {
    if g < 4 {
        return Err(Error::DimensionTooSmall { g, min: 4 });
    }
    let mut s = 0;
    while s < g {
        let t = s + 1;
        let excludes_self_products = 2 * ((g - t) * (g - t) + 1) >= g * (g + 1);
        let disjoint_from_next = t * t + 4 * t + 1 < 2 * g;
        if excludes_self_products && disjoint_from_next {
            s = t;
        } else {
            break;
        }
    }
    Ok(s)
}

/// The translate `(g-s)^2 + R_s`, as a set attached to dimension `g`.
/// With `R_0 = {0}` the zeroth translate is the singleton `{g^2}`.
pub fn translated_set(table: &mut ReachTable, g: u64, s: u64) -> Result<PicardSet, Error> {
    assert!(s <= g);
    let shift = (g - s) * (g - s);
    let row = table.compute(s)?;
    let mut words = PicardSet::zero_words(g);
    or_shifted(&mut words, row.words(), shift);
    Ok(PicardSet::from_words(g, words))
}

/// Checks that the top of `R_g` decomposes exactly as the disjoint union of
/// the translates `(g-s)^2 + R_s` for `s = 0..=ell`:
///
/// ```text
/// [(g-ell)^2 + 1, g^2] n R_g  =  R_{g,ell} u ... u R_{g,1} u R_{g,0}
/// ```
///
/// Errors if `ell` exceeds [`large_threshold`], where the statement is not
/// asserted.
pub fn verify_distribution(table: &mut ReachTable, g: u64, ell: u64) -> Result<bool, Error> {
    let max = large_threshold(g)?;
    if ell > max {
        return Err(Error::ThresholdExceeded { ell, max });
    }
    table.compute(g)?;
    let mut expected = PicardSet::zero_words(g);
    let mut total = 0u64;
    for s in 0..=ell {
        let t = translated_set(table, g, s)?;
        total += t.len();
        for (x, y) in expected.iter_mut().zip(t.words()) {
            *x |= y;
        }
    }
    let expected = PicardSet::from_words(g, expected);
    let disjoint = expected.len() == total;

    let lo = (g - ell) * (g - ell) + 1;
    let row = table.get(g).unwrap();
    let window: Vec<u64> = row.iter().filter(|&x| x >= lo).collect();
    let union: Vec<u64> = expected.iter().collect();
    Ok(disjoint && window == union)
}

/// For a fixed translate index, the smallest dimension in `4..=g_max` at
/// which the distribution identity holds, and whether it then holds for every
/// larger tested dimension. Only dimensions with `large_threshold >= ell` are
/// tested; returns `None` if there are none.
pub fn distribution_onset(
    table: &mut ReachTable,
    ell: u64,
    g_max: u64,
) -> Result<Option<(u64, bool)>, Error> {
    let mut first = None;
    let mut all_later = true;
    for g in 4..=g_max {
        if large_threshold(g)? < ell {
            continue;
        }
        let ok = verify_distribution(table, g, ell)?;
        match (first, ok) {
            (None, true) => first = Some(g),
            (Some(_), false) => all_later = false,
            _ => {}
        }
    }
    Ok(first.map(|g| (g, all_later)))
}

/// One entry of a verification report. Checks below their dimension
/// precondition are marked not applicable; their detail carries the
/// precondition and, where one exists, the concrete counterexample.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub applicable: bool,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub g: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_applicable_passed(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.passed)
    }
}

fn fmt_members(xs: &[u64]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Runs the full battery of structural checks on `R_g`, gated by each
/// statement's dimension precondition.
pub fn verify_theorems(table: &mut ReachTable, g: u64) -> Result<VerificationReport, Error> {
    assert!(g >= 1);
    table.compute(g)?;
    let mut checks = Vec::new();

    // Open window (lo, hi) of R_g, exclusive on both ends.
    let window = |table: &ReachTable, lo: u64, hi: u64| -> Vec<u64> {
        if hi <= lo + 1 {
            return Vec::new();
        }
        table.get(g).unwrap().iter().filter(|&x| x > lo && x < hi).collect()
    };

    {
        let lo = (g - 1) * (g - 1) + 1;
        let hi = g * g;
        let inside = window(table, lo, hi);
        let applicable = g >= 4;
        let detail = if !applicable {
            format!("requires g >= 4; window ({lo},{hi}) contains {}", fmt_members(&inside))
        } else if inside.is_empty() {
            format!("no realizable value in ({lo},{hi})")
        } else {
            format!("window ({lo},{hi}) contains {}", fmt_members(&inside))
        };
        checks.push(Check {
            name: "gap_window_1",
            applicable,
            passed: !applicable || inside.is_empty(),
            detail,
        });
    }

    {
        let applicable = g >= 7;
        let (passed, detail) = if g >= 3 {
            let lo = (g - 2) * (g - 2) + 4;
            let hi = (g - 1) * (g - 1) + 1;
            let inside = window(table, lo, hi);
            let d = if !applicable {
                format!("requires g >= 7; window ({lo},{hi}) contains {}", fmt_members(&inside))
            } else if inside.is_empty() {
                format!("no realizable value in ({lo},{hi})")
            } else {
                format!("window ({lo},{hi}) contains {}", fmt_members(&inside))
            };
            (!applicable || inside.is_empty(), d)
        } else {
            (true, "requires g >= 7; window degenerate below g = 4".to_string())
        };
        checks.push(Check { name: "gap_window_2", applicable, passed, detail });
    }

    let shape_check = |table: &mut ReachTable,
                       name: &'static str,
                       applicable: bool,
                       min_g: u64,
                       rho: u64,
                       expect: &[Vec<ShapeBlock>]|
     -> Result<Check, Error> {
        let shapes = enumerate_shapes(table, g, rho, 16)?;
        let passed = !shapes.truncated && shapes.shapes == expect;
        let listing: Vec<String> = shapes
            .shapes
            .iter()
            .map(|s| {
                let blocks: Vec<String> = s.iter().map(|b| b.to_string()).collect();
                format!("[{}]", blocks.join(" "))
            })
            .collect();
        let mut detail = format!("rho={rho}: {} shape(s): {}", shapes.shapes.len(), listing.join(", "));
        if !applicable {
            detail = format!("requires g >= {min_g}; {detail}");
        }
        Ok(Check { name, applicable, passed: !applicable || passed, detail })
    };

    checks.push(shape_check(
        table,
        "unique_shape_at_max",
        true,
        1,
        g * g,
        &[vec![ShapeBlock { m: 1, k: g, rho: g * g }]],
    )?);

    {
        let rho = (g - 1) * (g - 1) + 1;
        let expect = if g >= 2 {
            vec![vec![
                ShapeBlock { m: 1, k: g - 1, rho: (g - 1) * (g - 1) },
                ShapeBlock { m: 1, k: 1, rho: 1 },
            ]]
        } else {
            Vec::new()
        };
        if g >= 2 {
            checks.push(shape_check(table, "unique_shape_at_second_max", g >= 5, 5, rho, &expect)?);
        } else {
            checks.push(Check {
                name: "unique_shape_at_second_max",
                applicable: false,
                passed: true,
                detail: "requires g >= 5".to_string(),
            });
        }
    }

    for (name, offset, expect_tail) in [
        ("unique_shape_at_third_max", 4u64, vec![vec![ShapeBlock { m: 1, k: 2, rho: 4 }]]),
        (
            "two_shapes_below_third_max",
            3,
            vec![
                vec![ShapeBlock { m: 1, k: 2, rho: 3 }],
                vec![ShapeBlock { m: 2, k: 1, rho: 3 }],
            ],
        ),
    ] {
        if g >= 3 {
            let rho = (g - 2) * (g - 2) + offset;
            let expect: Vec<Vec<ShapeBlock>> = expect_tail
                .iter()
                .map(|tail| {
                    let mut s = vec![ShapeBlock { m: 1, k: g - 2, rho: (g - 2) * (g - 2) }];
                    s.extend(tail.iter().copied());
                    s
                })
                .collect();
            checks.push(shape_check(table, name, g >= 7, 7, rho, &expect)?);
        } else {
            checks.push(Check {
                name,
                applicable: false,
                passed: true,
                detail: "requires g >= 7".to_string(),
            });
        }
    }

    {
        let applicable = g >= 2;
        let row = table.get(g).unwrap();
        let missing: Vec<u64> = (1..=2 * g.min(g * g)).filter(|&x| !row.contains(x)).collect();
        let passed = missing.is_empty();
        let detail = if !applicable {
            "requires g >= 2".to_string()
        } else if passed {
            // The inductive seed only guarantees {1..2g-1}; the full range
            // through 2g holds and is the stronger statement checked here.
            format!("{{1..{}}} fully realizable", 2 * g)
        } else {
            format!("missing below 2g: {}", fmt_members(&missing))
        };
        checks.push(Check { name: "prefix_through_2g", applicable, passed: !applicable || passed, detail });
    }

    {
        let applicable = g >= 4;
        let (passed, detail) = if applicable {
            let ell = large_threshold(g)?;
            let ok = verify_distribution(table, g, ell)?;
            (
                ok,
                format!("translates s=0..={ell} tile [(g-{ell})^2+1, g^2] disjointly: {ok}"),
            )
        } else {
            (true, "requires g >= 4".to_string())
        };
        checks.push(Check { name: "large_value_distribution", applicable, passed, detail });
    }

    Ok(VerificationReport { g, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_examples() {
        let mut t = ReachTable::new();
        assert_eq!(density(&mut t, 1).unwrap(), Rational { num: 1, den: 1 });
        assert_eq!(density(&mut t, 3).unwrap(), Rational { num: 7, den: 9 });
        // Deliberately unreduced: the count over g^2.
        assert_eq!(density(&mut t, 4).unwrap(), Rational { num: 10, den: 16 });
        assert_eq!(density(&mut t, 4).unwrap().to_string(), "10/16");
    }

    #[test]
    fn prefix_examples() {
        let mut t = ReachTable::new();
        assert_eq!(prefix_complete(&mut t, 3).unwrap(), 6);
        assert_eq!(prefix_complete(&mut t, 4).unwrap(), 8);
        assert_eq!(prefix_complete(&mut t, 1).unwrap(), 1);
        assert_eq!(prefix_complete(&mut t, 2).unwrap(), 4);
    }

    #[test]
    fn prefix_bound_predicate_at_g4() {
        // b_4 is roughly 3.74: n = 1..3 are below it, n = 4 is not.
        for n in 1..=3 {
            assert!(below_prefix_bound(4, n));
        }
        assert!(!below_prefix_bound(4, 4));
        assert_eq!(prefix_bound_ceil(4), 4); // ceil(3.74...)
    }

    #[test]
    fn prefix_bound_exact_square_case() {
        // 32 * 8^3 = 16384 = 128^2, so b_8 = 1 exactly and nothing is below it.
        assert_eq!(prefix_bound_ceil(8), 1);
        assert!(!below_prefix_bound(8, 1));
    }

    #[test]
    fn four_square_examples() {
        assert_eq!(four_square(0), [0, 0, 0, 0]);
        assert_eq!(four_square(7), [2, 1, 1, 1]);
        assert_eq!(four_square(310), [17, 4, 2, 1]);
    }

    #[test]
    fn four_square_is_lex_greatest() {
        // Reference: scan all non-increasing quadruples, keep the greatest.
        for m in 0..=200u64 {
            let mut best = None;
            for a in 0..=m.isqrt() {
                for b in 0..=a {
                    for c in 0..=b {
                        for d in 0..=c {
                            if a * a + b * b + c * c + d * d == m {
                                let q = [a, b, c, d];
                                if best.is_none_or(|x| q > x) {
                                    best = Some(q);
                                }
                            }
                        }
                    }
                }
            }
            assert_eq!(four_square(m), best.unwrap(), "m={m}");
        }
    }

    #[test]
    fn realize_examples() {
        let d = realize_by_squares(10, 4).unwrap();
        assert_eq!(d.total_rho(), 10);
        let got: Vec<_> = d.blocks().iter().map(|b| (b.m(), b.k(), b.endo().kind())).collect();
        assert_eq!(got, vec![(1, 3, Kind::IV), (1, 1, Kind::I)]);

        let d = realize_by_squares(2, 2).unwrap();
        assert_eq!(d.total_rho(), 2);
        assert_eq!(d.blocks().len(), 2);

        // Greedy gives 14 = 9 + 4 + 1 with exponent sum 6 > 4; the recipe
        // fails although 15 is realizable in dimension 5 another way.
        assert!(realize_by_squares(15, 5).is_none());
    }

    #[test]
    fn realize_trivial_value() {
        let d = realize_by_squares(1, 6).unwrap();
        assert_eq!(d.total_rho(), 1);
        assert_eq!(d.blocks().len(), 1);
        assert_eq!(d.blocks()[0].dim(), 6);
    }

    #[test]
    fn large_threshold_examples() {
        assert_eq!(large_threshold(4).unwrap(), 1);
        assert_eq!(large_threshold(7).unwrap(), 1);
        assert_eq!(large_threshold(100).unwrap(), 12);
        assert!(matches!(large_threshold(3), Err(Error::DimensionTooSmall { .. })));
    }

    #[test]
    fn translated_set_examples() {
        let mut t = ReachTable::new();
        for g in [1, 4, 9] {
            assert_eq!(
                translated_set(&mut t, g, 0).unwrap().iter().collect::<Vec<_>>(),
                vec![g * g]
            );
        }
        assert_eq!(translated_set(&mut t, 4, 1).unwrap().iter().collect::<Vec<_>>(), vec![10]);
        assert_eq!(
            translated_set(&mut t, 10, 2).unwrap().iter().collect::<Vec<_>>(),
            vec![65, 66, 67, 68]
        );
    }

    #[test]
    fn distribution_examples() {
        let mut t = ReachTable::new();
        assert!(verify_distribution(&mut t, 10, 1).unwrap());
        assert!(verify_distribution(&mut t, 20, 2).unwrap());
        assert!(verify_distribution(&mut t, 100, 12).unwrap());
        assert!(matches!(
            verify_distribution(&mut t, 10, 5),
            Err(Error::ThresholdExceeded { .. })
        ));
    }

    #[test]
    fn distribution_onset_for_small_indices() {
        let mut t = ReachTable::new();
        let (g1, later1) = distribution_onset(&mut t, 1, 24).unwrap().unwrap();
        assert_eq!(g1, 4);
        assert!(later1);
        let (g2, later2) = distribution_onset(&mut t, 2, 24).unwrap().unwrap();
        assert_eq!(g2, 8);
        assert!(later2);
    }

    #[test]
    fn report_g3_gap1_not_applicable_with_counterexample() {
        let mut t = ReachTable::new();
        let r = verify_theorems(&mut t, 3).unwrap();
        let c = r.checks.iter().find(|c| c.name == "gap_window_1").unwrap();
        assert!(!c.applicable);
        assert!(c.detail.contains("requires g >= 4"));
        assert!(c.detail.contains("{6}"), "detail: {}", c.detail);
        assert!(r.all_applicable_passed());
    }

    #[test]
    fn report_g5_gap2_not_applicable_contains_15() {
        let mut t = ReachTable::new();
        let r = verify_theorems(&mut t, 5).unwrap();
        let c = r.checks.iter().find(|c| c.name == "gap_window_2").unwrap();
        assert!(!c.applicable);
        assert!(c.detail.contains("(13,17)"), "detail: {}", c.detail);
        assert!(c.detail.contains("15"), "detail: {}", c.detail);
    }

    #[test]
    fn report_g10_all_applicable_pass() {
        let mut t = ReachTable::new();
        let r = verify_theorems(&mut t, 10).unwrap();
        assert!(r.all_applicable_passed());
        assert!(r.checks.iter().all(|c| c.applicable));
    }
}
