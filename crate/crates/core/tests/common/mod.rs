#![allow(dead_code)]

use bohrify_core::algebra::generate_star_algebra;
use bohrify_core::context::{build_context_poset, ContextPoset};
use bohrify_core::graph::Graph;
use bohrify_core::group::FiniteGroup;
use bohrify_core::holonomy::{GroupValuedField, HolonomyModel, Surface};
use bohrify_core::{C64, DEFAULT_TOL};
use proptest::prelude::*;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn group(name: &str) -> FiniteGroup {
    FiniteGroup::builtin(name).unwrap()
}

/// `n` disjoint edges `v{2i} → v{2i+1}`, one surface per edge at its source.
pub fn disjoint_model(group: FiniteGroup, n: usize) -> HolonomyModel {
    let vertices: Vec<String> = (0..2 * n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..n)
        .map(|i| {
            (
                format!("e{i}"),
                format!("v{}", 2 * i),
                format!("v{}", 2 * i + 1),
            )
        })
        .collect();
    let g = Graph::new(&vertices, &edges).unwrap();
    let surfaces = (0..n)
        .map(|i| Surface::at_sources(format!("S{i}"), n, &[i]))
        .collect();
    HolonomyModel::new(g, group, surfaces).unwrap()
}

/// Path `v0 → v1 → … → vn` with the given surfaces.
pub fn path_model(group: FiniteGroup, n: usize, surfaces: Vec<Surface>) -> HolonomyModel {
    let vertices: Vec<String> = (0..=n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..n)
        .map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", i + 1)))
        .collect();
    HolonomyModel::new(Graph::new(&vertices, &edges).unwrap(), group, surfaces).unwrap()
}

pub const GROUPS: [&str; 4] = ["Z2", "Z3", "S3", "Z4"];

/// Random small model: group, graph size, and a random field per vertex.
pub fn arb_model() -> impl Strategy<Value = (HolonomyModel, GroupValuedField)> {
    (0..GROUPS.len(), 1usize..=2, any::<u64>()).prop_map(|(gi, n, seed)| {
        let g = group(GROUPS[gi]);
        let order = g.order();
        let m = if gi == 2 {
            disjoint_model(g, 1)
        } else {
            disjoint_model(g, n)
        };
        let nv = m.graph().vertex_count();
        let field = GroupValuedField(
            (0..nv)
                .map(|v| ((seed >> (4 * v)) as usize) % order)
                .collect(),
        );
        (m, field)
    })
}

/// Poset generated by one Weyl operator per surface (shared field) and the
/// sign of the first edge's value being the identity.
pub fn weyl_poset(model: &HolonomyModel, field: &GroupValuedField) -> ContextPoset {
    let mut gens = Vec::new();
    for s in 0..model.surfaces().len() {
        gens.push(
            model
                .weyl_generator(format!("w{s}"), s, field.clone())
                .unwrap(),
        );
    }
    let e = model.group().identity();
    let t: Vec<C64> = model
        .connections()
        .map(|a| c(if a.0[0] == e { 1.0 } else { -1.0 }))
        .collect();
    gens.push(model.config_generator("T", t).unwrap());
    let mats: Vec<_> = gens.iter().map(|g| g.matrix.clone()).collect();
    let ambient = generate_star_algebra(&mats, model.hilbert_dim(), DEFAULT_TOL).unwrap();
    build_context_poset(ambient, gens, DEFAULT_TOL).unwrap()
}

/// Models whose closed sets can be enumerated exhaustively.
pub fn arb_small_model() -> impl Strategy<Value = (HolonomyModel, GroupValuedField)> {
    (0usize..4, any::<u64>()).prop_map(|(k, seed)| {
        let (name, n) = [("Z2", 1), ("Z2", 2), ("Z3", 1), ("S3", 1)][k];
        let m = disjoint_model(group(name), n);
        let order = m.group().order();
        let field = GroupValuedField(
            (0..m.graph().vertex_count())
                .map(|v| ((seed >> (4 * v)) as usize) % order)
                .collect(),
        );
        (m, field)
    })
}
