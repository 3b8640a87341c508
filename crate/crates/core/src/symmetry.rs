//! Graph automorphisms as toy diffeomorphisms, gauge transformations, and
//! the exhaustive invariance checks of the context poset under both.
//!
//! An automorphism `φ` lifts to connections by `φ_A(A)(φ(e)) = A(e)`, with an
//! inverse when `φ` reverses `e`. The unitary `α_φ f = f ∘ φ_A⁻¹` stays
//! outside the Weyl algebra; the induced algebra map is conjugation by it:
//!
//! - `A_φ(T_f) = T_{f ∘ φ_A⁻¹}`
//! - `A_φ(w_d^S) = w_{φ(d)}^{φ(S)}` with `φ(d) = d ∘ φ⁻¹`.
//!
//! A gauge `g` acts by `A_g(e) = g(s(e))⁻¹ A(e) g(t(e))`, with
//! `B_g(T_f) = T_{f ∘ (·)_g}` and `B_g(w_d) = w_{g d g⁻¹}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{generate_star_algebra, same_subspace, ComplexMatrix, C64};
use crate::context::ContextPoset;
use crate::exec::Exec;
use crate::graph::Graph;
use crate::holonomy::{
    Connection, Generator, GeneratorKind, GroupValuedField, HolonomyModel, Surface,
};
use crate::{Error, Result};

/// Largest graph whose automorphism group is enumerated.
pub const MAX_AUTOMORPHISM_EDGES: usize = 10;

/// A permutation of vertices together with a compatible edge bijection.
///
/// `edge_map[e] = (e', flipped)` sends `e` to `e'`, or to `e'⁻¹` when flipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAutomorphism {
    pub vertex_perm: Vec<usize>,
    pub edge_map: Vec<(usize, bool)>,
    /// Index of the model surface with the transported intersection data.
    pub surface_map: Vec<Option<usize>>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

impl GraphAutomorphism {
    pub fn new(
        model: &HolonomyModel,
        vertex_perm: Vec<usize>,
        edge_map: Vec<(usize, bool)>,
    ) -> Result<Self> {
        let g = model.graph();
        if vertex_perm.len() != g.vertex_count() || !is_permutation(&vertex_perm) {
            return Err(Error::InvalidAutomorphism(
                "vertex map is not a permutation".into(),
            ));
        }
        let targets: Vec<usize> = edge_map.iter().map(|e| e.0).collect();
        if edge_map.len() != g.edge_count() || !is_permutation(&targets) {
            return Err(Error::InvalidAutomorphism(
                "edge map is not a permutation".into(),
            ));
        }
        for (e, &(img, flip)) in edge_map.iter().enumerate() {
            let src = &g.edges()[e];
            let dst = &g.edges()[img];
            let (s, t) = if flip {
                (dst.target, dst.source)
            } else {
                (dst.source, dst.target)
            };
            if vertex_perm[src.source] != s || vertex_perm[src.target] != t {
                return Err(Error::InvalidAutomorphism(format!(
                    "edge `{}` is not mapped compatibly with its endpoints",
                    src.id
                )));
            }
        }
        let mut out = Self {
            vertex_perm,
            edge_map,
            surface_map: Vec::new(),
        };
        out.surface_map = model
            .surfaces()
            .iter()
            .map(|s| {
                let image = out.transport_surface(s);
                model.surfaces().iter().position(|t| t.same_data(&image))
            })
            .collect();
        Ok(out)
    }

    pub fn identity(model: &HolonomyModel) -> Self {
        let g = model.graph();
        Self::new(
            model,
            (0..g.vertex_count()).collect(),
            (0..g.edge_count()).map(|e| (e, false)).collect(),
        )
        .expect("identity is an automorphism")
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_perm.iter().enumerate().all(|(i, &v)| i == v)
            && self
                .edge_map
                .iter()
                .enumerate()
                .all(|(i, &e)| e == (i, false))
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self, model: &HolonomyModel) -> Result<Self> {
        let vertex_perm = other
            .vertex_perm
            .iter()
            .map(|&v| self.vertex_perm[v])
            .collect();
        let edge_map = other
            .edge_map
            .iter()
            .map(|&(e, f)| {
                let (e2, f2) = self.edge_map[e];
                (e2, f ^ f2)
            })
            .collect();
        Self::new(model, vertex_perm, edge_map)
    }

    pub fn inverse(&self, model: &HolonomyModel) -> Result<Self> {
        let mut vertex_perm = vec![0; self.vertex_perm.len()];
        for (v, &w) in self.vertex_perm.iter().enumerate() {
            vertex_perm[w] = v;
        }
        let mut edge_map = vec![(0, false); self.edge_map.len()];
        for (e, &(img, flip)) in self.edge_map.iter().enumerate() {
            edge_map[img] = (e, flip);
        }
        Self::new(model, vertex_perm, edge_map)
    }

    /// `φ(S)`: intersection data moved along the edge map, with the pair
    /// `(σ(e), σ(e⁻¹))` swapped on reversed edges.
    pub fn transport_surface(&self, surface: &Surface) -> Surface {
        let n = self.edge_map.len();
        let mut sigma = vec![(0, 0); n];
        let mut interior = vec![false; n];
        for (e, &(img, flip)) in self.edge_map.iter().enumerate() {
            let (a, b) = surface.sigma[e];
            sigma[img] = if flip { (b, a) } else { (a, b) };
            interior[img] = surface.interior[e];
        }
        Surface {
            id: format!("φ({})", surface.id),
            sigma,
            interior,
        }
    }

    /// `φ(d) = d ∘ φ⁻¹`.
    pub fn transport_field(&self, d: &GroupValuedField) -> GroupValuedField {
        let mut out = vec![0; d.0.len()];
        for (v, &w) in self.vertex_perm.iter().enumerate() {
            out[w] = d.0[v];
        }
        GroupValuedField(out)
    }

    /// `φ_A(A)`.
    pub fn lift_connection(&self, model: &HolonomyModel, a: &Connection) -> Connection {
        let mut out = vec![0; a.0.len()];
        for (e, &(img, flip)) in self.edge_map.iter().enumerate() {
            out[img] = if flip {
                model.group().inv(a.0[e])
            } else {
                a.0[e]
            };
        }
        Connection(out)
    }
}

/// All automorphisms of the model graph, orientation reversals included, in
/// lexicographic order of the vertex permutation and then the edge map.
pub fn automorphisms(model: &HolonomyModel) -> Result<Vec<GraphAutomorphism>> {
    let g = model.graph();
    if g.edge_count() > MAX_AUTOMORPHISM_EDGES {
        return Err(Error::AutomorphismCap {
            found: g.edge_count(),
            cap: MAX_AUTOMORPHISM_EDGES,
        });
    }
    let nv = g.vertex_count();
    let degree = |v: usize| -> (usize, usize) {
        let loops = g
            .edges()
            .iter()
            .filter(|e| e.source == v && e.target == v)
            .count();
        let other = g
            .edges()
            .iter()
            .filter(|e| (e.source == v) != (e.target == v))
            .count();
        (loops, other)
    };
    let degrees: Vec<(usize, usize)> = (0..nv).map(degree).collect();
    // multiplicity of edges between an unordered vertex pair
    let mult = |a: usize, b: usize| {
        g.edges()
            .iter()
            .filter(|e| (e.source, e.target) == (a, b) || (e.source, e.target) == (b, a))
            .count()
    };
    let mut vertex_perms = Vec::new();
    let mut current = Vec::with_capacity(nv);
    let mut used = vec![false; nv];
    fn extend_vertices(
        current: &mut Vec<usize>,
        used: &mut [bool],
        degrees: &[(usize, usize)],
        mult: &dyn Fn(usize, usize) -> usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = current.len();
        if v == degrees.len() {
            out.push(current.clone());
            return;
        }
        for w in 0..degrees.len() {
            if used[w] || degrees[w] != degrees[v] {
                continue;
            }
            if (0..v).any(|u| mult(u, v) != mult(current[u], w)) || mult(v, v) != mult(w, w) {
                continue;
            }
            used[w] = true;
            current.push(w);
            extend_vertices(current, used, degrees, mult, out);
            current.pop();
            used[w] = false;
        }
    }
    extend_vertices(&mut current, &mut used, &degrees, &mult, &mut vertex_perms);

    let mut out = Vec::new();
    for vp in vertex_perms {
        let mut maps = Vec::new();
        let mut current = Vec::with_capacity(g.edge_count());
        let mut used = vec![false; g.edge_count()];
        extend_edges(g, &vp, &mut current, &mut used, &mut maps);
        for em in maps {
            out.push(GraphAutomorphism::new(model, vp.clone(), em)?);
        }
    }
    Ok(out)
}

fn extend_edges(
    g: &Graph,
    vp: &[usize],
    current: &mut Vec<(usize, bool)>,
    used: &mut [bool],
    out: &mut Vec<Vec<(usize, bool)>>,
) {
    let e = current.len();
    if e == g.edge_count() {
        out.push(current.clone());
        return;
    }
    let src = &g.edges()[e];
    let (s, t) = (vp[src.source], vp[src.target]);
    for (i, cand) in g.edges().iter().enumerate() {
        if used[i] {
            continue;
        }
        for flip in [false, true] {
            let ok = if flip {
                (cand.target, cand.source) == (s, t)
            } else {
                (cand.source, cand.target) == (s, t)
            };
            if ok {
                used[i] = true;
                current.push((i, flip));
                extend_edges(g, vp, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
}

/// `out[i]` is the index of `φ_A(A_i)`.
pub fn lift_to_connections(phi: &GraphAutomorphism, model: &HolonomyModel) -> Vec<usize> {
    model
        .connections()
        .map(|a| model.index_of(&phi.lift_connection(model, &a)))
        .collect()
}

/// `α_φ f = f ∘ φ_A⁻¹` as a permutation matrix.
pub fn alpha_operator(phi: &GraphAutomorphism, model: &HolonomyModel) -> ComplexMatrix {
    let lift = lift_to_connections(phi, model);
    let mut inverse = vec![0; lift.len()];
    for (i, &j) in lift.iter().enumerate() {
        inverse[j] = i;
    }
    ComplexMatrix::pullback(&inverse)
}

/// `Θ_{φ(d)}^{φ(S)} = φ_A ∘ Θ_d^S ∘ φ_A⁻¹` as an identity of permutations.
pub fn intertwining_check(
    phi: &GraphAutomorphism,
    model: &HolonomyModel,
    surface: &Surface,
    d: &GroupValuedField,
) -> bool {
    let lift = lift_to_connections(phi, model);
    let theta = model.theta_permutation_by(surface, d);
    let image =
        model.theta_permutation_by(&phi.transport_surface(surface), &phi.transport_field(d));
    (0..lift.len()).all(|i| image[lift[i]] == lift[theta[i]])
}

/// `w ∘ α_φ = α_φ ∘ w`, without checking hypotheses.
pub fn weyl_alpha_commute(
    phi: &GraphAutomorphism,
    model: &HolonomyModel,
    surface: usize,
    d: &GroupValuedField,
    tol: f64,
) -> Result<bool> {
    let w = model.weyl_operator(surface, d)?;
    let a = alpha_operator(phi, model);
    Ok((&w * &a).approx_eq(&(&a * &w), tol))
}

/// Commutation of `α_φ` with `w_d^S` when `φ` preserves `S` and `d`. Failing
/// hypotheses are reported by name rather than checked.
pub fn symmetric_weyl_check(
    phi: &GraphAutomorphism,
    model: &HolonomyModel,
    surface: usize,
    d: &GroupValuedField,
    tol: f64,
) -> Result<bool> {
    let s = model.surface(surface)?;
    let mut failed = Vec::new();
    if !phi.transport_surface(s).same_data(s) {
        failed.push(format!("φ does not preserve surface `{}`", s.id));
    }
    if d.0.len() == phi.vertex_perm.len() && phi.transport_field(d) != *d {
        failed.push("d is not φ-invariant".to_string());
    }
    if !failed.is_empty() {
        return Err(Error::Hypothesis(failed));
    }
    weyl_alpha_commute(phi, model, surface, d, tol)
}

/// `A_φ` on a tagged generator.
pub fn apply_diffeo_to_algebra(
    phi: &GraphAutomorphism,
    model: &HolonomyModel,
    generator: &Generator,
) -> Result<ComplexMatrix> {
    match &generator.kind {
        GeneratorKind::Configuration { table } => {
            let lift = lift_to_connections(phi, model);
            let mut image = vec![C64::new(0.0, 0.0); table.len()];
            for (i, &j) in lift.iter().enumerate() {
                image[j] = table[i];
            }
            model.config_operator(&image)
        }
        GeneratorKind::Weyl { surface, field } => {
            let s = model.surface(*surface)?;
            Ok(model.weyl_operator_by(&phi.transport_surface(s), &phi.transport_field(field)))
        }
        GeneratorKind::Untagged => Err(Error::UntaggedGenerator(generator.label.clone())),
    }
}

/// A vertex field of group elements acting on connections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeTransformation {
    pub field: GroupValuedField,
}

impl GaugeTransformation {
    pub fn new(model: &HolonomyModel, field: GroupValuedField) -> Result<Self> {
        if field.0.len() != model.graph().vertex_count() {
            return Err(Error::LengthMismatch {
                expected: model.graph().vertex_count(),
                found: field.0.len(),
            });
        }
        if field.0.iter().any(|&g| g >= model.group().order()) {
            return Err(Error::InvalidGroup(
                "gauge value is not a group element".into(),
            ));
        }
        Ok(Self { field })
    }

    /// `A_g(e) = g(s(e))⁻¹ A(e) g(t(e))`.
    pub fn act(&self, model: &HolonomyModel, a: &Connection) -> Connection {
        let g = model.group();
        Connection(
            model
                .graph()
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    g.mul(
                        g.mul(g.inv(self.field.at(e.source)), a.0[i]),
                        self.field.at(e.target),
                    )
                })
                .collect(),
        )
    }

    /// `out[i]` is the index of `(A_i)_g`.
    pub fn permutation(&self, model: &HolonomyModel) -> Vec<usize> {
        model
            .connections()
            .map(|a| model.index_of(&self.act(model, &a)))
            .collect()
    }

    /// `U f = f ∘ (·)_g`, so that `B_g(X) = U X U⁻¹`.
    pub fn unitary(&self, model: &HolonomyModel) -> ComplexMatrix {
        ComplexMatrix::pullback(&self.permutation(model))
    }

    /// Pointwise `g d g⁻¹`.
    pub fn conjugate_field(&self, model: &HolonomyModel, d: &GroupValuedField) -> GroupValuedField {
        GroupValuedField(
            d.0.iter()
                .zip(&self.field.0)
                .map(|(&x, &g)| model.group().conjugate(g, x))
                .collect(),
        )
    }
}

/// Every constant gauge, in group element order.
pub fn constant_gauges(model: &HolonomyModel) -> Vec<GaugeTransformation> {
    let n = model.graph().vertex_count();
    (0..model.group().order())
        .map(|g| GaugeTransformation {
            field: GroupValuedField::constant(n, g),
        })
        .collect()
}

/// `count` vertex-dependent gauges drawn uniformly from a seeded stream.
pub fn random_gauges(model: &HolonomyModel, count: usize, seed: u64) -> Vec<GaugeTransformation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = model.group().order();
    let n = model.graph().vertex_count();
    (0..count)
        .map(|_| GaugeTransformation {
            field: GroupValuedField((0..n).map(|_| rng.random_range(0..order)).collect()),
        })
        .collect()
}

/// `B_g` on a tagged generator.
pub fn apply_gauge_to_algebra(
    g: &GaugeTransformation,
    generator: &Generator,
    model: &HolonomyModel,
) -> Result<ComplexMatrix> {
    match &generator.kind {
        GeneratorKind::Configuration { table } => {
            let p = g.permutation(model);
            let image: Vec<C64> = p.iter().map(|&j| table[j]).collect();
            model.config_operator(&image)
        }
        GeneratorKind::Weyl { surface, field } => {
            model.weyl_operator(*surface, &g.conjugate_field(model, field))
        }
        GeneratorKind::Untagged => Err(Error::UntaggedGenerator(generator.label.clone())),
    }
}

/// Result for one (context, transformation) pair.
#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceEntry {
    pub context: usize,
    pub transform: usize,
    pub commutative: bool,
    /// Poset context equal to the image algebra, if any.
    pub image_context: Option<usize>,
    /// Generator labels of a non-commuting image pair.
    pub offending: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub transforms: usize,
    pub entries: Vec<InvarianceEntry>,
}

impl InvarianceReport {
    pub fn violations(&self) -> impl Iterator<Item = &InvarianceEntry> {
        self.entries.iter().filter(|e| !e.commutative)
    }

    pub fn passed(&self) -> bool {
        self.violations().next().is_none()
    }
}

fn check_images(
    poset: &ContextPoset,
    transforms: usize,
    tol: f64,
    exec: Exec,
    image: &(dyn Fn(usize, &Generator) -> Result<ComplexMatrix> + Sync),
) -> Result<InvarianceReport> {
    for g in poset.generators() {
        if g.kind == GeneratorKind::Untagged {
            return Err(Error::UntaggedGenerator(g.label.clone()));
        }
    }
    let dim = poset.ambient().dim();
    let pairs: Vec<(usize, usize)> = (0..poset.len())
        .flat_map(|c| (0..transforms).map(move |t| (c, t)))
        .collect();
    let entries = exec
        .map(&pairs, |&(c, t)| {
            let ctx = poset.context(c);
            let gens: Vec<(&str, ComplexMatrix)> = ctx
                .generators
                .iter()
                .map(|&i| {
                    let g = &poset.generators()[i];
                    image(t, g).map(|m| (g.label.as_str(), m))
                })
                .collect::<Result<_>>()?;
            let mut offending = None;
            'outer: for (i, (la, a)) in gens.iter().enumerate() {
                for (lb, b) in &gens[i..] {
                    let ok = (a * b).approx_eq(&(b * a), tol)
                        && (a * &b.adjoint()).approx_eq(&(&b.adjoint() * a), tol);
                    if !ok {
                        offending = Some((la.to_string(), lb.to_string()));
                        break 'outer;
                    }
                }
            }
            let mats: Vec<ComplexMatrix> = gens.into_iter().map(|(_, m)| m).collect();
            let algebra = generate_star_algebra(&mats, dim, tol)?;
            let commutative = offending.is_none() && algebra.is_commutative();
            let image_context =
                (0..poset.len()).find(|&j| same_subspace(&poset.context(j).algebra, &algebra, tol));
            Ok(InvarianceEntry {
                context: c,
                transform: t,
                commutative,
                image_context,
                offending,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(InvarianceReport {
        transforms,
        entries,
    })
}

/// Generates the image of every context under every automorphism and checks
/// that it is commutative.
pub fn diffeo_invariance_check(
    poset: &ContextPoset,
    model: &HolonomyModel,
    automorphisms: &[GraphAutomorphism],
    tol: f64,
    exec: Exec,
) -> Result<InvarianceReport> {
    check_images(poset, automorphisms.len(), tol, exec, &|t, g| {
        apply_diffeo_to_algebra(&automorphisms[t], model, g)
    })
}

/// The gauge counterpart of [`diffeo_invariance_check`].
pub fn gauge_invariance_check(
    poset: &ContextPoset,
    model: &HolonomyModel,
    gauges: &[GaugeTransformation],
    tol: f64,
    exec: Exec,
) -> Result<InvarianceReport> {
    check_images(poset, gauges.len(), tol, exec, &|t, g| {
        apply_gauge_to_algebra(&gauges[t], g, model)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_TOL;
    use crate::context::build_context_poset;
    use crate::group::FiniteGroup;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn disjoint(group: FiniteGroup, n: usize) -> HolonomyModel {
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

    fn swap(model: &HolonomyModel) -> GraphAutomorphism {
        GraphAutomorphism::new(model, vec![2, 3, 0, 1], vec![(1, false), (0, false)]).unwrap()
    }

    #[test]
    fn identity_lifts_to_identity() {
        let m = disjoint(FiniteGroup::cyclic(2).unwrap(), 2);
        let id = GraphAutomorphism::identity(&m);
        assert_eq!(lift_to_connections(&id, &m), vec![0, 1, 2, 3]);
        assert!(alpha_operator(&id, &m).approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn swap_exchanges_coordinates() {
        let m = disjoint(FiniteGroup::cyclic(2).unwrap(), 2);
        let phi = swap(&m);
        // (0,1) = index 1 <-> (1,0) = index 2
        assert_eq!(lift_to_connections(&phi, &m), vec![0, 2, 1, 3]);
        let a = alpha_operator(&phi, &m);
        assert!(a.is_unitary(DEFAULT_TOL));
        assert_eq!(a.get(1, 2), c(1.0));
        assert_eq!(a.get(0, 0), c(1.0));
        assert_eq!(phi.surface_map, vec![Some(1), Some(0)]);
    }

    #[test]
    fn incompatible_map_rejected() {
        let m = disjoint(FiniteGroup::cyclic(2).unwrap(), 2);
        assert!(
            GraphAutomorphism::new(&m, vec![1, 0, 2, 3], vec![(0, false), (1, false)]).is_err()
        );
        assert!(GraphAutomorphism::new(&m, vec![1, 0, 2, 3], vec![(0, true), (1, false)]).is_ok());
    }

    #[test]
    fn automorphism_counts() {
        let m = disjoint(FiniteGroup::cyclic(2).unwrap(), 3);
        assert_eq!(automorphisms(&m).unwrap().len(), 48);
        let star = HolonomyModel::new(
            Graph::new(
                &["c", "a", "b", "d"],
                &[("e1", "c", "a"), ("e2", "c", "b"), ("e3", "c", "d")],
            )
            .unwrap(),
            FiniteGroup::cyclic(2).unwrap(),
            vec![],
        )
        .unwrap();
        assert_eq!(automorphisms(&star).unwrap().len(), 6);
        let looped = HolonomyModel::new(
            Graph::new(&["v"], &[("l", "v", "v")]).unwrap(),
            FiniteGroup::cyclic(3).unwrap(),
            vec![],
        )
        .unwrap();
        assert_eq!(automorphisms(&looped).unwrap().len(), 2);
    }

    #[test]
    fn compose_and_inverse() {
        let m = disjoint(FiniteGroup::cyclic(3).unwrap(), 2);
        let auts = automorphisms(&m).unwrap();
        for a in &auts {
            let inv = a.inverse(&m).unwrap();
            assert!(a.compose(&inv, &m).unwrap().is_identity());
            let alpha = alpha_operator(a, &m);
            for b in &auts {
                let ab = alpha_operator(&a.compose(b, &m).unwrap(), &m);
                assert!(ab.approx_eq(&(&alpha * &alpha_operator(b, &m)), DEFAULT_TOL));
            }
        }
    }

    #[test]
    fn intertwining_holds_for_all_automorphisms() {
        let m = disjoint(FiniteGroup::symmetric3().unwrap(), 2);
        let r = m.group().element("r").unwrap();
        let s = m.group().element("s").unwrap();
        let d = GroupValuedField(vec![r, s, 0, r]);
        for phi in automorphisms(&m).unwrap() {
            for surf in m.surfaces() {
                assert!(intertwining_check(&phi, &m, surf, &d));
            }
        }
    }

    #[test]
    fn diffeo_on_weyl_is_conjugation() {
        let m = disjoint(FiniteGroup::cyclic(3).unwrap(), 2);
        let d = GroupValuedField(vec![1, 2, 0, 1]);
        for phi in automorphisms(&m).unwrap() {
            let alpha = alpha_operator(&phi, &m);
            for s in 0..2 {
                let w = m.weyl_generator("w", s, d.clone()).unwrap();
                let lhs = apply_diffeo_to_algebra(&phi, &m, &w).unwrap();
                let rhs = &(&alpha * &w.matrix) * &alpha.adjoint();
                assert!(lhs.approx_eq(&rhs, DEFAULT_TOL));
            }
            let f: Vec<C64> = (0..9).map(|i| c(i as f64)).collect();
            let t = m.config_generator("T", f).unwrap();
            let lhs = apply_diffeo_to_algebra(&phi, &m, &t).unwrap();
            let rhs = &(&alpha * &t.matrix) * &alpha.adjoint();
            assert!(lhs.approx_eq(&rhs, DEFAULT_TOL));
        }
    }

    #[test]
    fn swap_sends_w1_to_w2() {
        let m = disjoint(FiniteGroup::cyclic(2).unwrap(), 2);
        let phi = swap(&m);
        let d = GroupValuedField::constant(4, 1);
        let w1 = m.weyl_generator("w1", 0, d.clone()).unwrap();
        let w2 = m.weyl_operator(1, &d).unwrap();
        assert!(apply_diffeo_to_algebra(&phi, &m, &w1)
            .unwrap()
            .approx_eq(&w2, 0.0));
        // for an involution the image table is also f ∘ φ_A
        let f: Vec<C64> = (0..4).map(|i| c(i as f64)).collect();
        let lift = lift_to_connections(&phi, &m);
        let pulled: Vec<C64> = lift.iter().map(|&j| f[j]).collect();
        let t = m.config_generator("T", f).unwrap();
        assert!(apply_diffeo_to_algebra(&phi, &m, &t)
            .unwrap()
            .approx_eq(&m.config_operator(&pulled).unwrap(), 0.0));
    }

    #[test]
    fn symmetric_weyl_operator_commutes() {
        let m0 = disjoint(FiniteGroup::cyclic(2).unwrap(), 2);
        let both = Surface::at_sources("S", 2, &[0, 1]);
        let m = HolonomyModel::new(m0.graph().clone(), m0.group().clone(), vec![both]).unwrap();
        let phi = swap(&m);
        let d = GroupValuedField::constant(4, 1);
        assert!(symmetric_weyl_check(&phi, &m, 0, &d, DEFAULT_TOL).unwrap());
        assert!(
            symmetric_weyl_check(&GraphAutomorphism::identity(&m), &m, 0, &d, DEFAULT_TOL).unwrap()
        );
        let skew = GroupValuedField(vec![1, 0, 0, 0]);
        match symmetric_weyl_check(&phi, &m, 0, &skew, DEFAULT_TOL) {
            Err(Error::Hypothesis(h)) => assert_eq!(h, vec!["d is not φ-invariant".to_string()]),
            other => panic!("unexpected {other:?}"),
        }
        assert!(!weyl_alpha_commute(&phi, &m, 0, &skew, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn gauge_on_weyl_matches_conjugation() {
        let g = Graph::new(&["v0", "v1"], &[("e", "v0", "v1")]).unwrap();
        let m = HolonomyModel::new(
            g,
            FiniteGroup::symmetric3().unwrap(),
            vec![Surface::at_sources("S", 1, &[0])],
        )
        .unwrap();
        let r = m.group().element("r").unwrap();
        let s = m.group().element("s").unwrap();
        let d = GroupValuedField::constant(2, s);
        let w = m.weyl_generator("w", 0, d).unwrap();
        let mut gauges = constant_gauges(&m);
        gauges.extend(random_gauges(&m, 10, 7));
        gauges.push(GaugeTransformation::new(&m, GroupValuedField(vec![r, s])).unwrap());
        for gauge in &gauges {
            let u = gauge.unitary(&m);
            let lhs = apply_gauge_to_algebra(gauge, &w, &m).unwrap();
            let rhs = &(&u * &w.matrix) * &u.adjoint();
            assert!(lhs.approx_eq(&rhs, DEFAULT_TOL));
            let f: Vec<C64> = (0..6).map(|i| c(i as f64 * 0.5 - 1.0)).collect();
            let t = m.config_generator("T", f).unwrap();
            let lhs = apply_gauge_to_algebra(gauge, &t, &m).unwrap();
            let rhs = &(&u * &t.matrix) * &u.adjoint();
            assert!(lhs.approx_eq(&rhs, DEFAULT_TOL));
        }
        // the 3-cycle gauge moves a transposition field to a different one
        let g3 = &constant_gauges(&m)[r];
        assert_ne!(
            g3.conjugate_field(&m, &GroupValuedField::constant(2, s)).0[0],
            s
        );
    }

    #[test]
    fn abelian_gauge_leaves_weyl_fixed() {
        let m = disjoint(FiniteGroup::cyclic(3).unwrap(), 2);
        let w = m
            .weyl_generator("w", 0, GroupValuedField(vec![1, 2, 0, 1]))
            .unwrap();
        for gauge in random_gauges(&m, 5, 1) {
            assert!(apply_gauge_to_algebra(&gauge, &w, &m)
                .unwrap()
                .approx_eq(&w.matrix, 0.0));
        }
    }

    #[test]
    fn random_gauges_are_seeded() {
        let m = disjoint(FiniteGroup::symmetric3().unwrap(), 2);
        assert_eq!(random_gauges(&m, 4, 9), random_gauges(&m, 4, 9));
        assert_ne!(random_gauges(&m, 4, 9), random_gauges(&m, 4, 10));
    }

    #[test]
    fn invariance_checks_on_two_edges() {
        let m = disjoint(FiniteGroup::cyclic(2).unwrap(), 2);
        let d = GroupValuedField::constant(4, 1);
        let w1 = m.weyl_generator("w1", 0, d.clone()).unwrap();
        let w2 = m.weyl_generator("w2", 1, d).unwrap();
        let t1: Vec<C64> = m
            .connections()
            .map(|a| c(if a.0[0] == 0 { 1.0 } else { -1.0 }))
            .collect();
        let t1 = m.config_generator("T1", t1).unwrap();
        let ambient = generate_star_algebra(
            &[w1.matrix.clone(), w2.matrix.clone(), t1.matrix.clone()],
            4,
            DEFAULT_TOL,
        )
        .unwrap();
        let poset = build_context_poset(ambient, vec![w1, w2, t1], DEFAULT_TOL).unwrap();
        let auts = automorphisms(&m).unwrap();
        let r = diffeo_invariance_check(&poset, &m, &auts, DEFAULT_TOL, Exec::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.entries.len(), poset.len() * auts.len());
        let id = auts.iter().position(|a| a.is_identity()).unwrap();
        let w1_ctx = poset
            .contexts()
            .iter()
            .position(|c| c.label == "w1")
            .unwrap();
        let w2_ctx = poset
            .contexts()
            .iter()
            .position(|c| c.label == "w2")
            .unwrap();
        let sw = auts
            .iter()
            .position(|a| a.edge_map == vec![(1, false), (0, false)])
            .unwrap();
        for e in &r.entries {
            if e.transform == id {
                assert_eq!(e.image_context, Some(e.context));
            }
            if e.transform == sw && e.context == w1_ctx {
                assert_eq!(e.image_context, Some(w2_ctx));
            }
        }
        let mut gauges = constant_gauges(&m);
        gauges.extend(random_gauges(&m, 20, 3));
        let r = gauge_invariance_check(&poset, &m, &gauges, DEFAULT_TOL, Exec::Sequential).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn untagged_generator_rejected() {
        let m = disjoint(FiniteGroup::cyclic(2).unwrap(), 1);
        let g = Generator::untagged("X", ComplexMatrix::identity(2));
        let id = GraphAutomorphism::identity(&m);
        assert!(matches!(
            apply_diffeo_to_algebra(&id, &m, &g),
            Err(Error::UntaggedGenerator(_))
        ));
        assert!(matches!(
            apply_gauge_to_algebra(&constant_gauges(&m)[0], &g, &m),
            Err(Error::UntaggedGenerator(_))
        ));
    }
}
