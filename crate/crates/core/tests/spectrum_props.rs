mod common;

use bohrify_core::spectrum::{ExternalSpectrum, SobrietyMode, SobrietyOptions};
use bohrify_core::{Exec, DEFAULT_TOL};
use proptest::prelude::*;

use common::{arb_model, arb_small_model, weyl_poset};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_iff_complement_open((model, field) in arb_small_model(), mask in any::<u64>()) {
        let poset = weyl_poset(&model, &field);
        let s = ExternalSpectrum::build(&poset, DEFAULT_TOL, Exec::default()).unwrap();
        let pts: Vec<usize> = (0..s.len()).filter(|i| (mask >> (i % 64)) & 1 == 1).collect();
        let set = s.set_from(&pts);
        prop_assert_eq!(s.is_closed(&set), s.is_open(&s.complement(&set)));
        // every enumerated closed set passes too
        for closed in s.closed_sets(100_000).unwrap() {
            prop_assert!(s.is_open(&s.complement(&closed)));
        }
    }

    #[test]
    fn point_closure_is_smallest_closed_superset((model, field) in arb_small_model()) {
        let poset = weyl_poset(&model, &field);
        let s = ExternalSpectrum::build(&poset, DEFAULT_TOL, Exec::default()).unwrap();
        let closed = s.closed_sets(100_000).unwrap();
        for p in 0..s.len() {
            let mut smallest = s.full_set();
            for c in closed.iter().filter(|c| c.contains(p)) {
                smallest.intersect_with(c);
            }
            prop_assert_eq!(&smallest, &s.point_closure(p));
        }
    }

    #[test]
    fn finite_spectra_are_sober((model, field) in arb_small_model()) {
        let poset = weyl_poset(&model, &field);
        let s = ExternalSpectrum::build(&poset, DEFAULT_TOL, Exec::default()).unwrap();
        let r = s.sobriety_check(SobrietyOptions::default()).unwrap();
        prop_assert_eq!(r.mode, SobrietyMode::Full);
        prop_assert!(r.sober);
        // the irreducible closed sets are exactly the point closures
        prop_assert_eq!(r.witnesses.len(), s.len());
        let closed = s.closed_sets(100_000).unwrap();
        let single = s.single_valued_closed_sets(100_000).unwrap();
        for set in &closed {
            let irreducible = s.is_irreducible(set).unwrap();
            prop_assert_eq!(irreducible, s.is_irreducible_by_unions(set, &closed));
            if irreducible {
                prop_assert!(single.contains(set));
            }
        }
        prop_assert!(single.iter().all(|set| closed.contains(set)));
    }

    #[test]
    fn strategies_agree((model, field) in arb_small_model()) {
        let poset = weyl_poset(&model, &field);
        let a = ExternalSpectrum::build(&poset, DEFAULT_TOL, Exec::Sequential).unwrap();
        let b = ExternalSpectrum::build(&poset, DEFAULT_TOL, Exec::Parallel).unwrap();
        prop_assert_eq!(a.points(), b.points());
        prop_assert_eq!(a.arrows(), b.arrows());
        let ra = a.sobriety_check_with(SobrietyOptions::default(), Exec::Sequential).unwrap();
        let rb = b.sobriety_check_with(SobrietyOptions::default(), Exec::Parallel).unwrap();
        prop_assert_eq!(ra.witnesses, rb.witnesses);
    }

    #[test]
    fn characters_are_multiplicative((model, field) in arb_model()) {
        let poset = weyl_poset(&model, &field);
        let s = ExternalSpectrum::build(&poset, DEFAULT_TOL, Exec::default()).unwrap();
        for p in 0..s.len() {
            let ctx = &poset.context(s.point(p).context).algebra;
            prop_assert!(s.character(p).is_multiplicative(ctx, DEFAULT_TOL));
        }
        prop_assert!(s.arrows_compose());
    }
}
