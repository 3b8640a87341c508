mod common;

use std::collections::BTreeSet;

use bohrify_core::algebra::{generate_star_algebra, ComplexMatrix};
use bohrify_core::{C64, DEFAULT_TOL};
use nalgebra::DMatrix;
use proptest::prelude::*;

use common::c;

fn random_unitary(dim: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
    let m = DMatrix::from_fn(dim, dim, |i, j| {
        let (re, im) = entries[(i * dim + j) % entries.len()];
        C64::new(re + if i == j { 3.0 } else { 0.0 }, im)
    });
    ComplexMatrix::from_dmatrix(m.qr().q()).unwrap()
}

fn diagonal_family() -> impl Strategy<Value = (usize, Vec<Vec<i8>>)> {
    (2usize..=6).prop_flat_map(|d| {
        (
            Just(d),
            prop::collection::vec(prop::collection::vec(-1i8..=2, d), 1..=3),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // dimension of the algebra of a diagonal family = number of distinct
    // joint value tuples on the standard basis
    #[test]
    fn diagonal_algebra_dimension_counts_joint_values((d, diags) in diagonal_family()) {
        let gens: Vec<ComplexMatrix> = diags
            .iter()
            .map(|row| ComplexMatrix::from_diagonal(&row.iter().map(|&x| c(x as f64)).collect::<Vec<_>>()))
            .collect();
        let alg = generate_star_algebra(&gens, d, DEFAULT_TOL).unwrap();
        let tuples: BTreeSet<Vec<i8>> = (0..d).map(|i| diags.iter().map(|r| r[i]).collect()).collect();
        prop_assert_eq!(alg.linear_dim(), tuples.len());
        prop_assert!(alg.is_commutative());
        prop_assert!(alg.check_invariants(DEFAULT_TOL));
    }

    #[test]
    fn minimal_projections_partition_identity(
        (d, diags) in diagonal_family(),
        entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4..12),
    ) {
        let u = random_unitary(d, &entries);
        let gens: Vec<ComplexMatrix> = diags
            .iter()
            .map(|row| {
                let diag = ComplexMatrix::from_diagonal(&row.iter().map(|&x| c(x as f64)).collect::<Vec<_>>());
                &(&u * &diag) * &u.adjoint()
            })
            .collect();
        let alg = generate_star_algebra(&gens, d, DEFAULT_TOL).unwrap();
        let mins = alg.minimal_projections(DEFAULT_TOL).unwrap();
        prop_assert_eq!(mins.len(), alg.linear_dim());
        let mut sum = ComplexMatrix::zeros(d);
        for (i, p) in mins.iter().enumerate() {
            prop_assert!(p.projection.is_projection(1e-8));
            prop_assert_eq!(p.projection.projection_rank(), p.rank);
            for q in &mins[i + 1..] {
                prop_assert!((&p.projection * &q.projection).approx_eq(&ComplexMatrix::zeros(d), 1e-8));
            }
            // each generator acts as its character value on the block
            for g in &gens {
                let v = g.inner(&p.projection) * C64::new(d as f64 / p.rank as f64, 0.0);
                prop_assert!((g * &p.projection).approx_eq(&p.projection.scale(v), 1e-7));
            }
            sum = &sum + &p.projection;
        }
        prop_assert!(sum.approx_eq(&ComplexMatrix::identity(d), 1e-8));
        let lattice = alg.projection_lattice(DEFAULT_TOL).unwrap();
        prop_assert_eq!(lattice.len(), 1usize << mins.len());
    }

    #[test]
    fn generated_algebra_is_closed(
        d in 2usize..=4,
        a in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16),
        b in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16),
    ) {
        let mk = |e: &[(f64, f64)]| ComplexMatrix::from_fn(d, |i, j| {
            let (re, im) = e[i * d + j];
            C64::new(re, im)
        });
        let alg = generate_star_algebra(&[mk(&a), mk(&b)], d, DEFAULT_TOL).unwrap();
        prop_assert!(alg.linear_dim() <= d * d);
        prop_assert!(alg.check_invariants(DEFAULT_TOL));
        prop_assert!(alg.contains(&mk(&a), 1e-8));
        prop_assert!(alg.contains(&mk(&b).adjoint(), 1e-8));
    }

    #[test]
    fn normalized_inner_product_is_hermitian(
        a in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9),
        b in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9),
    ) {
        let mk = |e: &[(f64, f64)]| ComplexMatrix::from_fn(3, |i, j| C64::new(e[i * 3 + j].0, e[i * 3 + j].1));
        let (x, y) = (mk(&a), mk(&b));
        prop_assert!((x.inner(&y) - y.inner(&x).conj()).norm() < 1e-12);
        prop_assert!(x.inner(&x).re >= 0.0);
        prop_assert!((x.inner(&x).re - x.normalized_norm().powi(2)).abs() < 1e-12);
    }
}
