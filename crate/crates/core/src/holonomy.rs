//! Finite holonomy-flux model: connections on a graph with values in a
//! finite group, surfaces given by their intersection data, the translation
//! maps they induce on connection space, and the configuration and Weyl
//! operators acting on `L²(connections)` with counting measure.
//!
//! Connections are indexed lexicographically with the first edge as the most
//! significant digit and group elements in table order.

use crate::algebra::{generate_star_algebra, ComplexMatrix, StarAlgebra, C64, DEFAULT_DIM_CAP};
use crate::graph::{Graph, PathWord};
use crate::group::FiniteGroup;
use crate::{Error, Result};

/// An assignment of a group element to every edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Connection(pub Vec<usize>);

/// A map from vertices to group elements (translation fields and gauges).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupValuedField(pub Vec<usize>);

impl GroupValuedField {
    pub fn constant(vertices: usize, g: usize) -> Self {
        Self(vec![g; vertices])
    }

    pub fn identity(group: &FiniteGroup, vertices: usize) -> Self {
        Self::constant(vertices, group.identity())
    }

    pub fn at(&self, v: usize) -> usize {
        self.0[v]
    }

    /// Pointwise product `(self · other)(v) = self(v) other(v)`.
    pub fn pointwise_mul(&self, group: &FiniteGroup, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| group.mul(a, b))
                .collect(),
        )
    }

    pub fn pointwise_commutes(&self, group: &FiniteGroup, other: &Self) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| group.commute(a, b))
    }
}

/// Intersection data of an oriented surface with the graph.
///
/// For every edge `e`, `sigma[e] = (σ(e), σ(e⁻¹))` with values in
/// `{-1, 0, 1}`, and `interior[e]` marks edges whose interior lies in the
/// surface (those are left untouched by translations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    pub id: String,
    pub sigma: Vec<(i8, i8)>,
    pub interior: Vec<bool>,
}

impl Surface {
    pub fn new(id: impl Into<String>, sigma: Vec<(i8, i8)>, interior: Vec<bool>) -> Result<Self> {
        let id = id.into();
        if sigma.len() != interior.len() {
            return Err(Error::InvalidSurface(format!(
                "surface `{id}`: sigma and interior tables differ in length"
            )));
        }
        for (e, &(s, t)) in sigma.iter().enumerate() {
            if !(-1..=1).contains(&s) || !(-1..=1).contains(&t) {
                return Err(Error::InvalidSurface(format!(
                    "surface `{id}`: sigma at edge {e} outside {{-1, 0, 1}}"
                )));
            }
            if interior[e] && (s != 0 || t != 0) {
                return Err(Error::InvalidSurface(format!(
                    "surface `{id}`: edge {e} lies in the surface but has non-zero sigma"
                )));
            }
        }
        Ok(Self {
            id,
            sigma,
            interior,
        })
    }

    /// Surface meeting only the given edges, each at its source with sign +1.
    pub fn at_sources(id: impl Into<String>, edge_count: usize, edges: &[usize]) -> Self {
        let mut sigma = vec![(0, 0); edge_count];
        for &e in edges {
            sigma[e] = (1, 0);
        }
        Self {
            id: id.into(),
            sigma,
            interior: vec![false; edge_count],
        }
    }

    /// Edges carrying any intersection data.
    pub fn flagged_edges(&self) -> Vec<usize> {
        (0..self.sigma.len())
            .filter(|&e| self.sigma[e] != (0, 0) || self.interior[e])
            .collect()
    }

    pub fn is_disjoint_from(&self, other: &Surface) -> bool {
        let mine = self.flagged_edges();
        other.flagged_edges().iter().all(|e| !mine.contains(e))
    }

    /// Same intersection data, ignoring the id.
    pub fn same_data(&self, other: &Surface) -> bool {
        self.sigma == other.sigma && self.interior == other.interior
    }
}

/// How a generator of the Weyl algebra was built; needed to transport it
/// along automorphisms and gauge transformations.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorKind {
    Configuration {
        table: Vec<C64>,
    },
    Weyl {
        surface: usize,
        field: GroupValuedField,
    },
    Untagged,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub kind: GeneratorKind,
    pub matrix: ComplexMatrix,
}

impl Generator {
    pub fn untagged(label: impl Into<String>, matrix: ComplexMatrix) -> Self {
        Self {
            label: label.into(),
            kind: GeneratorKind::Untagged,
            matrix,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HolonomyModel {
    graph: Graph,
    group: FiniteGroup,
    surfaces: Vec<Surface>,
    hilbert_dim: usize,
}

impl HolonomyModel {
    pub fn new(graph: Graph, group: FiniteGroup, surfaces: Vec<Surface>) -> Result<Self> {
        Self::with_cap(graph, group, surfaces, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(
        graph: Graph,
        group: FiniteGroup,
        surfaces: Vec<Surface>,
        cap: usize,
    ) -> Result<Self> {
        let mut dim: usize = 1;
        for _ in 0..graph.edge_count() {
            dim = dim.checked_mul(group.order()).filter(|&d| d <= cap).ok_or(
                Error::DimensionCap {
                    dim: group.order().saturating_pow(graph.edge_count() as u32),
                    cap,
                },
            )?;
        }
        for s in &surfaces {
            if s.sigma.len() != graph.edge_count() {
                return Err(Error::InvalidSurface(format!(
                    "surface `{}` has data for {} edges, graph has {}",
                    s.id,
                    s.sigma.len(),
                    graph.edge_count()
                )));
            }
        }
        for (i, s) in surfaces.iter().enumerate() {
            if surfaces[..i].iter().any(|t| t.id == s.id) {
                return Err(Error::InvalidSurface(format!(
                    "duplicate surface id `{}`",
                    s.id
                )));
            }
        }
        Ok(Self {
            graph,
            group,
            surfaces,
            hilbert_dim: dim,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn surfaces(&self) -> &[Surface] {
        &self.surfaces
    }

    pub fn surface(&self, index: usize) -> Result<&Surface> {
        self.surfaces.get(index).ok_or(Error::UnknownSurface(index))
    }

    pub fn surface_index(&self, id: &str) -> Option<usize> {
        self.surfaces.iter().position(|s| s.id == id)
    }

    /// `|G|^{#edges}`.
    pub fn hilbert_dim(&self) -> usize {
        self.hilbert_dim
    }

    pub fn connection(&self, mut index: usize) -> Connection {
        let n = self.group.order();
        let mut values = vec![0; self.graph.edge_count()];
        for slot in values.iter_mut().rev() {
            *slot = index % n;
            index /= n;
        }
        Connection(values)
    }

    pub fn index_of(&self, c: &Connection) -> usize {
        let n = self.group.order();
        c.0.iter().fold(0, |acc, &a| acc * n + a)
    }

    pub fn connections(&self) -> impl Iterator<Item = Connection> + '_ {
        (0..self.hilbert_dim).map(|i| self.connection(i))
    }

    /// Holonomy along a word: the product of edge values in traversal order,
    /// inverted on backward steps.
    pub fn holonomy(&self, connection: &Connection, path: &PathWord) -> Result<usize> {
        if connection.0.len() != self.graph.edge_count() {
            return Err(Error::LengthMismatch {
                expected: self.graph.edge_count(),
                found: connection.0.len(),
            });
        }
        let mut h = self.group.identity();
        let mut at = path.start();
        for (i, s) in path.steps().iter().enumerate() {
            let e = self
                .graph
                .edges()
                .get(s.edge)
                .ok_or_else(|| Error::InvalidPath(format!("edge {} not in model", s.edge)))?;
            let (from, to) = if s.inverse {
                (e.target, e.source)
            } else {
                (e.source, e.target)
            };
            if from != at {
                return Err(Error::InvalidPath(format!("step {i} is not composable")));
            }
            at = to;
            let a = connection.0[s.edge];
            let a = if s.inverse { self.group.inv(a) } else { a };
            h = self.group.mul(h, a);
        }
        Ok(h)
    }

    /// Restricts a connection to a subgraph whose edges (matched by id and
    /// endpoints) all belong to the model graph.
    pub fn restrict_connection(
        &self,
        connection: &Connection,
        subgraph: &Graph,
    ) -> Result<Connection> {
        let mut out = Vec::with_capacity(subgraph.edge_count());
        for e in subgraph.edges() {
            let idx = self.graph.edge(&e.id).ok_or_else(|| {
                Error::InvalidGraph(format!("edge `{}` is not in the model graph", e.id))
            })?;
            let mine = &self.graph.edges()[idx];
            let same_ends = self.graph.vertices()[mine.source] == subgraph.vertices()[e.source]
                && self.graph.vertices()[mine.target] == subgraph.vertices()[e.target];
            if !same_ends {
                return Err(Error::InvalidGraph(format!(
                    "edge `{}` has different endpoints in the subgraph",
                    e.id
                )));
            }
            out.push(connection.0[idx]);
        }
        Ok(Connection(out))
    }

    fn check_field(&self, d: &GroupValuedField) -> Result<()> {
        if d.0.len() != self.graph.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: self.graph.vertex_count(),
                found: d.0.len(),
            });
        }
        if d.0.iter().any(|&g| g >= self.group.order()) {
            return Err(Error::InvalidGroup(
                "field value is not a group element".into(),
            ));
        }
        Ok(())
    }

    /// Translation of a connection by `d` across `surface`: on every edge
    /// not lying in the surface,
    /// `h(e) ↦ d(s(e))^{σ(e)} · h(e) · d(t(e))^{-σ(e⁻¹)}`.
    pub fn theta_translate_by(
        &self,
        surface: &Surface,
        d: &GroupValuedField,
        connection: &Connection,
    ) -> Connection {
        let g = &self.group;
        let values = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let h = connection.0[i];
                if surface.interior[i] {
                    return h;
                }
                let (s, t) = surface.sigma[i];
                let left = g.pow(d.at(e.source), s as i32);
                let right = g.pow(d.at(e.target), -(t as i32));
                g.mul(g.mul(left, h), right)
            })
            .collect();
        Connection(values)
    }

    pub fn theta_translate(
        &self,
        surface: usize,
        d: &GroupValuedField,
        connection: &Connection,
    ) -> Result<Connection> {
        let s = self.surface(surface)?;
        self.check_field(d)?;
        Ok(self.theta_translate_by(s, d, connection))
    }

    /// The translation as an index map on connections: `out[i]` is the index
    /// of `Θ_d(A_i)`.
    pub fn theta_permutation_by(&self, surface: &Surface, d: &GroupValuedField) -> Vec<usize> {
        (0..self.hilbert_dim)
            .map(|i| self.index_of(&self.theta_translate_by(surface, d, &self.connection(i))))
            .collect()
    }

    pub fn theta_permutation(&self, surface: usize, d: &GroupValuedField) -> Result<Vec<usize>> {
        let s = self.surface(surface)?;
        self.check_field(d)?;
        Ok(self.theta_permutation_by(s, d))
    }

    /// Checks `Θ_{d₂} ∘ Θ_{d₁} = Θ_{d₁d₂}` (apply `Θ_{d₁}` first) on every
    /// connection, with the pointwise product `d₁d₂`.
    pub fn theta_compose_check(
        &self,
        surface: usize,
        d1: &GroupValuedField,
        d2: &GroupValuedField,
    ) -> Result<bool> {
        self.check_field(d1)?;
        self.check_field(d2)?;
        let first = self.theta_permutation(surface, d1)?;
        let second = self.theta_permutation(surface, d2)?;
        let product = self.theta_permutation(surface, &d1.pointwise_mul(&self.group, d2))?;
        Ok((0..self.hilbert_dim).all(|i| second[first[i]] == product[i]))
    }

    /// Multiplication operator `T_f`: diagonal in connection order.
    pub fn config_operator(&self, f: &[C64]) -> Result<ComplexMatrix> {
        if f.len() != self.hilbert_dim {
            return Err(Error::LengthMismatch {
                expected: self.hilbert_dim,
                found: f.len(),
            });
        }
        Ok(ComplexMatrix::from_diagonal(f))
    }

    /// Pullback of the translation: `(w f)(A) = f(Θ_d(A))`.
    pub fn weyl_operator_by(&self, surface: &Surface, d: &GroupValuedField) -> ComplexMatrix {
        ComplexMatrix::pullback(&self.theta_permutation_by(surface, d))
    }

    pub fn weyl_operator(&self, surface: usize, d: &GroupValuedField) -> Result<ComplexMatrix> {
        Ok(ComplexMatrix::pullback(
            &self.theta_permutation(surface, d)?,
        ))
    }

    /// `f ∘ Θ_d` as a table.
    pub fn translate_function(
        &self,
        surface: usize,
        d: &GroupValuedField,
        f: &[C64],
    ) -> Result<Vec<C64>> {
        if f.len() != self.hilbert_dim {
            return Err(Error::LengthMismatch {
                expected: self.hilbert_dim,
                found: f.len(),
            });
        }
        let theta = self.theta_permutation(surface, d)?;
        Ok(theta.iter().map(|&j| f[j]).collect())
    }

    /// Checks `w T_f w⁻¹ = T_{f∘Θ}` as a matrix identity.
    pub fn weyl_conjugation_check(
        &self,
        surface: usize,
        d: &GroupValuedField,
        f: &[C64],
        tol: f64,
    ) -> Result<bool> {
        let w = self.weyl_operator(surface, d)?;
        let t = self.config_operator(f)?;
        let lhs = &(&w * &t) * &w.adjoint();
        let rhs = self.config_operator(&self.translate_function(surface, d, f)?)?;
        Ok(lhs.approx_eq(&rhs, tol))
    }

    pub fn config_generator(&self, label: impl Into<String>, table: Vec<C64>) -> Result<Generator> {
        let matrix = self.config_operator(&table)?;
        Ok(Generator {
            label: label.into(),
            kind: GeneratorKind::Configuration { table },
            matrix,
        })
    }

    pub fn weyl_generator(
        &self,
        label: impl Into<String>,
        surface: usize,
        field: GroupValuedField,
    ) -> Result<Generator> {
        let matrix = self.weyl_operator(surface, &field)?;
        Ok(Generator {
            label: label.into(),
            kind: GeneratorKind::Weyl { surface, field },
            matrix,
        })
    }

    /// Indicator of a single connection.
    pub fn indicator_table(&self, connection: &Connection) -> Vec<C64> {
        let target = self.index_of(connection);
        (0..self.hilbert_dim)
            .map(|i| C64::new(if i == target { 1.0 } else { 0.0 }, 0.0))
            .collect()
    }

    /// `A ↦ values[h_A(path)]`, e.g. a group character of a loop holonomy.
    pub fn holonomy_table(&self, path: &PathWord, values: &[C64]) -> Result<Vec<C64>> {
        if values.len() != self.group.order() {
            return Err(Error::LengthMismatch {
                expected: self.group.order(),
                found: values.len(),
            });
        }
        self.connections()
            .map(|c| self.holonomy(&c, path).map(|h| values[h]))
            .collect()
    }

    /// Finite stand-in for the full Weyl algebra: the `*`-algebra generated by
    /// the given configuration operators and Weyl operators.
    pub fn build_weyl_algebra(
        &self,
        config_fns: &[Vec<C64>],
        weyl_specs: &[(usize, GroupValuedField)],
        tol: f64,
    ) -> Result<StarAlgebra> {
        let mut gens = Vec::with_capacity(config_fns.len() + weyl_specs.len());
        for f in config_fns {
            gens.push(self.config_operator(f)?);
        }
        for (s, d) in weyl_specs {
            gens.push(self.weyl_operator(*s, d)?);
        }
        generate_star_algebra(&gens, self.hilbert_dim, tol)
    }
}
