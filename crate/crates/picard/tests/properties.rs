//! Property tests against naive references.

use proptest::prelude::*;
use std::collections::BTreeSet;

use picard::{four_square, realize_by_squares, PicardSet};

fn naive_sumset(a: &PicardSet, b: &PicardSet) -> PicardSet {
    let mut members = Vec::new();
    for x in a.iter() {
        for y in b.iter() {
            members.push(x + y);
        }
    }
    PicardSet::from_members(a.dim() + b.dim(), members)
}

/// Arbitrary set attached to a dimension in 0..=9, members anywhere in
/// `[0, g^2]`.
fn any_set() -> impl Strategy<Value = PicardSet> {
    (0u64..=9).prop_flat_map(|g| {
        let top = g * g;
        prop::collection::btree_set(0..=top, 0..=(top.min(48) + 1) as usize)
            .prop_map(move |members: BTreeSet<u64>| PicardSet::from_members(g, members))
    })
}

/// A set shaped like a realizable range: contains 1 and g^2.
fn range_shaped_set() -> impl Strategy<Value = PicardSet> {
    (1u64..=9).prop_flat_map(|g| {
        let top = g * g;
        let mids = if top >= 3 {
            prop::collection::btree_set(2..top, 0..=(top.min(48)) as usize).boxed()
        } else {
            Just(BTreeSet::new()).boxed()
        };
        mids.prop_map(move |mut members| {
            members.insert(1);
            members.insert(top);
            PicardSet::from_members(g, members)
        })
    })
}

proptest! {
    #[test]
    fn sumset_matches_naive_double_loop(a in any_set(), b in any_set()) {
        prop_assert_eq!(a.sumset(&b), naive_sumset(&a, &b));
    }

    #[test]
    fn sumset_commutes_and_associates(a in any_set(), b in any_set(), c in any_set()) {
        prop_assert_eq!(a.sumset(&b), b.sumset(&a));
        prop_assert_eq!(a.sumset(&b).sumset(&c), a.sumset(&b.sumset(&c)));
    }

    #[test]
    fn gaps_round_trip(s in range_shaped_set()) {
        let gaps = s.gaps();
        // Rebuild membership as [1, g^2] minus the reported gaps.
        let mut members: BTreeSet<u64> = (1..=s.dim() * s.dim()).collect();
        for gap in &gaps {
            prop_assert!(gap.lo <= gap.hi);
            for x in gap.lo..=gap.hi {
                prop_assert!(members.remove(&x));
            }
        }
        let rebuilt = PicardSet::from_members(s.dim(), members);
        prop_assert_eq!(rebuilt, s);
    }

    #[test]
    fn four_square_sums_and_is_sorted(m in 0u64..200_000) {
        let q = four_square(m);
        prop_assert_eq!(q.iter().map(|&x| x * x).sum::<u64>(), m);
        prop_assert!(q.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn square_realization_is_valid_when_present(g in 1u64..=40, frac in 0.0f64..=1.0) {
        let n = 1 + ((g * g - 1) as f64 * frac) as u64;
        if let Some(d) = realize_by_squares(n, g) {
            prop_assert_eq!(d.g(), g);
            prop_assert_eq!(d.total_rho(), n);
            prop_assert_eq!(d.blocks().iter().map(|b| b.dim()).sum::<u64>(), g);
        }
    }
}
