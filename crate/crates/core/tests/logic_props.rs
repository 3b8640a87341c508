mod common;

use bohrify_core::algebra::ComplexMatrix;
use bohrify_core::logic::{
    alpha_is_order_isomorphism, daseinise, dominates, projection_lattices, ClopenSubobject,
};
use bohrify_core::spectrum::ExternalSpectrum;
use bohrify_core::{Exec, C64, DEFAULT_TOL};
use proptest::prelude::*;

use common::{arb_small_model, weyl_poset};

fn rank_one(v: &[(f64, f64)]) -> ComplexMatrix {
    let norm: f64 = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
    let z: Vec<C64> = v.iter().map(|&(a, b)| C64::new(a, b) / norm).collect();
    ComplexMatrix::from_fn(z.len(), |i, j| z[i] * z[j].conj())
}

fn arb_vector(dim: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim).prop_filter("non-zero", |v| {
        v.iter().any(|(a, b)| a.abs() + b.abs() > 0.1)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn daseinisation_dominates_and_is_monotone(
        (model, field) in arb_small_model(),
        raw in arb_vector(36),
    ) {
        let poset = weyl_poset(&model, &field);
        let d = model.hilbert_dim();
        let p = rank_one(&raw[..d]);
        let lattices = projection_lattices(&poset, DEFAULT_TOL).unwrap();
        let deltas: Vec<ComplexMatrix> = lattices
            .iter()
            .map(|l| daseinise(&p, l, DEFAULT_TOL).unwrap())
            .collect();
        for (ctx, delta) in deltas.iter().enumerate() {
            prop_assert!(dominates(delta, &p, DEFAULT_TOL));
            // oracle: sum of the atoms that overlap P
            let mins = poset.context(ctx).algebra.minimal_projections(DEFAULT_TOL).unwrap();
            let mut oracle = ComplexMatrix::zeros(d);
            for m in &mins {
                if (&m.projection * &p).frobenius_norm() > 1e-6 {
                    oracle = &oracle + &m.projection;
                }
            }
            prop_assert!(delta.approx_eq(&oracle, 1e-7));
        }
        for (lo, hi) in poset.hasse_edges() {
            prop_assert!(dominates(&deltas[lo], &deltas[hi], DEFAULT_TOL));
        }
    }

    #[test]
    fn daseinisation_fixes_context_projections((model, field) in arb_small_model()) {
        let poset = weyl_poset(&model, &field);
        for lattice in projection_lattices(&poset, DEFAULT_TOL).unwrap() {
            for q in &lattice.projections {
                prop_assert!(daseinise(q, &lattice, DEFAULT_TOL).unwrap().approx_eq(q, 1e-8));
            }
        }
    }

    #[test]
    fn alpha_is_an_order_isomorphism((model, field) in arb_small_model()) {
        let poset = weyl_poset(&model, &field);
        let s = ExternalSpectrum::build(&poset, DEFAULT_TOL, Exec::default()).unwrap();
        for (c, lattice) in projection_lattices(&poset, DEFAULT_TOL).unwrap().iter().enumerate() {
            prop_assert!(alpha_is_order_isomorphism(lattice, &poset.context(c).algebra, s.spectrum(c), DEFAULT_TOL).unwrap());
        }
    }

    #[test]
    fn heyting_laws(
        (model, field) in arb_small_model(),
        picks in prop::collection::vec(prop::collection::vec(any::<prop::sample::Index>(), 0..4), 3),
    ) {
        let poset = weyl_poset(&model, &field);
        let s = ExternalSpectrum::build(&poset, DEFAULT_TOL, Exec::default()).unwrap();
        let subs: Vec<ClopenSubobject> = picks
            .iter()
            .map(|ix| {
                let pts: Vec<usize> = ix.iter().map(|i| i.index(s.len())).collect();
                ClopenSubobject::generated_by(&s, &pts)
            })
            .collect();
        let (x, y, z) = (&subs[0], &subs[1], &subs[2]);
        prop_assert_eq!(x.meet(&y.join(z)), x.meet(y).join(&x.meet(z)));
        let imp = y.implies(z, &s);
        prop_assert!(s.is_closed(imp.points()));
        prop_assert_eq!(x.leq(&imp), x.meet(y).leq(z));
        prop_assert!(x.meet(&x.not(&s)) == ClopenSubobject::bottom(&s));
        prop_assert!(x.leq(&x.not(&s).not(&s)));
        // inside each single context the subset lattice is boolean
        let top = ClopenSubobject::top(&s);
        let em = x.join(&x.not(&s));
        for c in 0..s.context_count() {
            let local: Vec<usize> = x.component(&s, c);
            let mut complement: Vec<usize> = (0..s.spectrum(c).len()).filter(|i| !local.contains(i)).collect();
            let mut union = local.clone();
            union.append(&mut complement);
            union.sort_unstable();
            prop_assert_eq!(union, top.component(&s, c));
        }
        prop_assert!(em.leq(&top));
    }
}
