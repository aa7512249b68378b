//! Property-based invariants on randomly built colorings.

use proptest::prelude::*;

use percol::{
    lift_block_monochrome, series_cyclic, series_mirror, Family, MirrorType, PeriodicColoring,
};

fn arb_series() -> impl Strategy<Value = PeriodicColoring> {
    (1usize..=5, 0usize..4).prop_map(|(k, ty)| {
        if k == 1 {
            return series_cyclic(1).unwrap();
        }
        match ty {
            0 => series_cyclic(k).unwrap(),
            1 => series_mirror(k, MirrorType::OneOne).unwrap(),
            2 => series_mirror(k, MirrorType::OneTwo).unwrap(),
            _ => series_mirror(k, MirrorType::TwoTwo).unwrap(),
        }
    })
}

fn arb_lifted() -> impl Strategy<Value = PeriodicColoring> {
    (arb_series(), 1usize..=3, proptest::bool::ANY).prop_map(|(path, n, complete)| {
        let family = if complete {
            Family::complete(n).unwrap()
        } else {
            Family::empty(n).unwrap()
        };
        lift_block_monochrome(&path, family).unwrap()
    })
}

proptest! {
    #[test]
    fn row_sums_equal_degree(c in arb_lifted()) {
        let m = c.infer_matrix().unwrap();
        let degree = c.family().degree();
        prop_assert!(m.row_sums().iter().all(|&s| s == degree));
    }

    #[test]
    fn zero_symmetry(c in arb_lifted()) {
        let m = c.infer_matrix().unwrap();
        prop_assert!(m.zero_symmetric());
    }

    #[test]
    fn canonical_form_is_orbit_invariant(c in arb_lifted(), r in 0usize..20) {
        let canon = c.canonicalize();
        prop_assert_eq!(c.rotated(r % c.period_len()).canonicalize(), canon.clone());
        // doubling the period does not change the canonical form
        let doubled = PeriodicColoring::try_new(
            c.family(),
            c.colors(),
            c.period().iter().chain(c.period()).cloned().collect(),
        ).unwrap();
        prop_assert_eq!(doubled.canonicalize(), canon.clone());
        // reversing the period does not change the canonical form
        let reversed = PeriodicColoring::try_new(
            c.family(),
            c.colors(),
            c.period().iter().rev().cloned().collect(),
        ).unwrap();
        prop_assert_eq!(reversed.canonicalize(), canon);
    }

    #[test]
    fn json_round_trip(c in arb_lifted()) {
        let text = serde_json::to_string(&c).unwrap();
        let back: PeriodicColoring = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn canonicalize_preserves_perfection(c in arb_lifted()) {
        let canon = c.canonicalize();
        prop_assert!(canon.is_perfect());
        prop_assert_eq!(
            canon.infer_matrix().unwrap().row_sums(),
            c.infer_matrix().unwrap().row_sums()
        );
    }
}
