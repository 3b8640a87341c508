mod common;

use bohrify_core::algebra::ComplexMatrix;
use bohrify_core::holonomy::{GroupValuedField, Surface};
use bohrify_core::DEFAULT_TOL;
use proptest::prelude::*;

use common::{c, group, path_model, GROUPS};

fn arb_sigma(n: usize) -> impl Strategy<Value = Vec<(i8, i8)>> {
    prop::collection::vec((-1i8..=1, -1i8..=1), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn weyl_operators_are_unitary(
        gi in 0..GROUPS.len(),
        sigma in arb_sigma(2),
        field in prop::collection::vec(0usize..24, 3),
    ) {
        let g = group(GROUPS[gi]);
        let d = GroupValuedField(field.iter().map(|x| x % g.order()).collect());
        let s = Surface::new("S", sigma, vec![false; 2]).unwrap();
        let m = path_model(g, 2, vec![s]);
        let w = m.weyl_operator(0, &d).unwrap();
        let gram = &w.adjoint() * &w;
        prop_assert!((&gram - &ComplexMatrix::identity(m.hilbert_dim())).frobenius_norm() <= 1e-9);
    }

    #[test]
    fn conjugation_law(
        gi in 0..GROUPS.len(),
        sigma in arb_sigma(2),
        field in prop::collection::vec(0usize..24, 3),
        f in prop::collection::vec(-5.0f64..5.0, 64),
    ) {
        let g = group(GROUPS[gi]);
        let d = GroupValuedField(field.iter().map(|x| x % g.order()).collect());
        let m = path_model(g, 2, vec![Surface::new("S", sigma, vec![false; 2]).unwrap()]);
        let f: Vec<_> = (0..m.hilbert_dim()).map(|i| c(f[i % f.len()])).collect();
        prop_assert!(m.weyl_conjugation_check(0, &d, &f, 1e-9).unwrap());
    }

    #[test]
    fn commuting_fields_compose(
        gi in 0..GROUPS.len(),
        sigma in arb_sigma(2),
        a in prop::collection::vec(0usize..24, 3),
        b in prop::collection::vec(0usize..24, 3),
    ) {
        let g = group(GROUPS[gi]);
        let d1 = GroupValuedField(a.iter().map(|x| x % g.order()).collect());
        let d2 = GroupValuedField(b.iter().map(|x| x % g.order()).collect());
        prop_assume!(d1.pointwise_commutes(&g, &d2));
        let product = d1.pointwise_mul(&g, &d2);
        let m = path_model(g, 2, vec![Surface::new("S", sigma, vec![false; 2]).unwrap()]);
        prop_assert!(m.theta_compose_check(0, &d1, &d2).unwrap());
        let lhs = &m.weyl_operator(0, &d1).unwrap() * &m.weyl_operator(0, &d2).unwrap();
        prop_assert!(lhs.approx_eq(&m.weyl_operator(0, &product).unwrap(), DEFAULT_TOL));
    }

    #[test]
    fn interior_edges_are_fixed(
        gi in 0..GROUPS.len(),
        field in prop::collection::vec(0usize..24, 3),
        idx in 0usize..1000,
    ) {
        let g = group(GROUPS[gi]);
        let d = GroupValuedField(field.iter().map(|x| x % g.order()).collect());
        let s = Surface::new("S", vec![(1, -1), (0, 0)], vec![false, true]).unwrap();
        let m = path_model(g, 2, vec![s]);
        let a = m.connection(idx % m.hilbert_dim());
        let t = m.theta_translate(0, &d, &a).unwrap();
        prop_assert_eq!(t.0[1], a.0[1]);
    }

    #[test]
    fn connection_index_roundtrip(gi in 0..GROUPS.len(), idx in 0usize..1000) {
        let m = path_model(group(GROUPS[gi]), 2, vec![]);
        let i = idx % m.hilbert_dim();
        prop_assert_eq!(m.index_of(&m.connection(i)), i);
    }
}
