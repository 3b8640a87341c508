mod common;

use bohrify_core::holonomy::GroupValuedField;
use bohrify_core::symmetry::{
    alpha_operator, apply_diffeo_to_algebra, apply_gauge_to_algebra, automorphisms,
    constant_gauges, diffeo_invariance_check, gauge_invariance_check, intertwining_check,
    random_gauges,
};
use bohrify_core::{Exec, DEFAULT_TOL};
use proptest::prelude::*;

use common::{arb_model, arb_small_model, weyl_poset};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn alpha_is_a_homomorphism((model, _) in arb_model(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let auts = automorphisms(&model).unwrap();
        let (a, b) = (&auts[i.index(auts.len())], &auts[j.index(auts.len())]);
        let ab = alpha_operator(&a.compose(b, &model).unwrap(), &model);
        prop_assert!(ab.approx_eq(&(&alpha_operator(a, &model) * &alpha_operator(b, &model)), DEFAULT_TOL));
        prop_assert!(alpha_operator(a, &model).is_unitary(DEFAULT_TOL));
    }

    #[test]
    fn intertwining_identity((model, field) in arb_model()) {
        for phi in automorphisms(&model).unwrap() {
            for s in model.surfaces() {
                prop_assert!(intertwining_check(&phi, &model, s, &field));
            }
        }
    }

    #[test]
    fn diffeo_preserves_products_and_adjoints((model, field) in arb_model()) {
        let poset = weyl_poset(&model, &field);
        for phi in automorphisms(&model).unwrap() {
            let alpha = alpha_operator(&phi, &model);
            let images: Vec<_> = poset
                .generators()
                .iter()
                .map(|g| apply_diffeo_to_algebra(&phi, &model, g).unwrap())
                .collect();
            for (g, a) in poset.generators().iter().zip(&images) {
                let adj = &(&alpha * &g.matrix.adjoint()) * &alpha.adjoint();
                prop_assert!(a.adjoint().approx_eq(&adj, DEFAULT_TOL));
                for (h, b) in poset.generators().iter().zip(&images) {
                    let prod = &(&alpha * &(&g.matrix * &h.matrix)) * &alpha.adjoint();
                    prop_assert!((a * b).approx_eq(&prod, DEFAULT_TOL));
                }
            }
        }
    }

    #[test]
    fn gauge_image_is_conjugation((model, field) in arb_model(), seed in any::<u64>()) {
        let poset = weyl_poset(&model, &field);
        for g in random_gauges(&model, 4, seed) {
            let u = g.unitary(&model);
            for gen in poset.generators() {
                let lhs = apply_gauge_to_algebra(&g, gen, &model).unwrap();
                let rhs = &(&u * &gen.matrix) * &u.adjoint();
                prop_assert!(lhs.approx_eq(&rhs, DEFAULT_TOL));
            }
        }
    }

    #[test]
    fn contexts_stay_commutative((model, field) in arb_small_model(), seed in any::<u64>()) {
        let poset = weyl_poset(&model, &field);
        let auts = automorphisms(&model).unwrap();
        prop_assert!(diffeo_invariance_check(&poset, &model, &auts, DEFAULT_TOL, Exec::default()).unwrap().passed());
        let mut gauges = constant_gauges(&model);
        gauges.extend(random_gauges(&model, 8, seed));
        prop_assert!(gauge_invariance_check(&poset, &model, &gauges, DEFAULT_TOL, Exec::default()).unwrap().passed());
    }

    #[test]
    fn field_transport_roundtrip((model, field) in arb_model()) {
        for phi in automorphisms(&model).unwrap() {
            let inv = phi.inverse(&model).unwrap();
            let back: GroupValuedField = inv.transport_field(&phi.transport_field(&field));
            prop_assert_eq!(back, field.clone());
        }
    }
}
