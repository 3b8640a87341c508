//! Projection lattices of contexts, outer daseinisation, and the Heyting
//! algebra of clopen subobjects of the spectral presheaf.
//!
//! The spectral presheaf assigns `Σ_V` to each context and restricts
//! characters along inclusions `V' ⊆ V`. Its clopen subobjects are exactly the
//! closed sets of the external spectrum, so a [`ClopenSubobject`] wraps a
//! [`PointSet`] that is downward closed under restriction.

use crate::algebra::{ComplexMatrix, StarAlgebra, C64};
use crate::context::ContextPoset;
use crate::spectrum::{Character, ExternalSpectrum, PointSet};
use crate::{Error, Result};

/// All projections of one context with the order `P ⪯ Q ⇔ PQ = P`.
#[derive(Clone, Debug)]
pub struct ProjectionLattice {
    pub context: usize,
    pub projections: Vec<ComplexMatrix>,
    /// Minimal projections (characters) below each element.
    pub supports: Vec<Vec<bool>>,
    /// `order[i][j]` iff `P_i ⪯ P_j`.
    pub order: Vec<Vec<bool>>,
}

impl ProjectionLattice {
    pub fn build(algebra: &StarAlgebra, context: usize, tol: f64) -> Result<Self> {
        let lattice = algebra.projection_lattice(tol)?;
        let projections: Vec<ComplexMatrix> = lattice.iter().map(|p| p.matrix.clone()).collect();
        let order = projections
            .iter()
            .map(|p| projections.iter().map(|q| dominates(q, p, tol)).collect())
            .collect();
        Ok(Self {
            context,
            supports: lattice.into_iter().map(|p| p.support).collect(),
            projections,
            order,
        })
    }

    pub fn len(&self) -> usize {
        self.projections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projections.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.projections.len() - 1
    }

    /// Index of the lattice element nearest to `m` in Frobenius norm.
    pub fn nearest(&self, m: &ComplexMatrix) -> usize {
        let mut best = 0;
        let mut dist = f64::INFINITY;
        for (i, p) in self.projections.iter().enumerate() {
            let d = (p - m).frobenius_norm();
            if d < dist {
                best = i;
                dist = d;
            }
        }
        best
    }
}

/// `Q ⪰ P`, i.e. `PQ = P`.
pub fn dominates(q: &ComplexMatrix, p: &ComplexMatrix, tol: f64) -> bool {
    (p * q).approx_eq(p, tol * 1e3)
}

/// Outer daseinisation `δ(P)_V`: the meet of all projections of the context
/// that dominate `P`.
pub fn daseinise(
    p: &ComplexMatrix,
    lattice: &ProjectionLattice,
    tol: f64,
) -> Result<ComplexMatrix> {
    Ok(lattice.projections[daseinise_index(p, lattice, tol)?].clone())
}

/// As [`daseinise`], returning the lattice index.
pub fn daseinise_index(p: &ComplexMatrix, lattice: &ProjectionLattice, tol: f64) -> Result<usize> {
    let dim = lattice.projections[0].dim();
    if p.dim() != dim {
        return Err(Error::DimensionMismatch {
            index: 0,
            expected: dim,
            found: p.dim(),
        });
    }
    if !p.is_projection(tol * 1e3) {
        return Err(Error::NotAProjection);
    }
    // projections of a commutative algebra commute, so the meet is the product
    let meet = lattice
        .projections
        .iter()
        .filter(|q| dominates(q, p, tol))
        .fold(ComplexMatrix::identity(dim), |acc, q| &acc * q);
    Ok(lattice.nearest(&meet))
}

/// `α(P) = {λ | λ(P) = 1}` for a projection of the context.
pub fn alpha_iso(
    p: &ComplexMatrix,
    algebra: &StarAlgebra,
    characters: &[Character],
    tol: f64,
) -> Result<Vec<usize>> {
    if !p.is_projection(tol * 1e3) {
        return Err(Error::NotAProjection);
    }
    if !algebra.contains(p, tol * 1e3) {
        return Err(Error::NotInContext);
    }
    Ok(characters
        .iter()
        .enumerate()
        .filter(|(_, ch)| (ch.evaluate(algebra, p) - C64::new(1.0, 0.0)).norm() < 0.5)
        .map(|(i, _)| i)
        .collect())
}

/// `P ⪯ Q ⇔ α(P) ⊆ α(Q)` over the whole lattice, and `α` is injective.
pub fn alpha_is_order_isomorphism(
    lattice: &ProjectionLattice,
    algebra: &StarAlgebra,
    characters: &[Character],
    tol: f64,
) -> Result<bool> {
    let images: Vec<Vec<usize>> = lattice
        .projections
        .iter()
        .map(|p| alpha_iso(p, algebra, characters, tol))
        .collect::<Result<_>>()?;
    let n = lattice.len();
    if n != 1 << characters.len() {
        return Ok(false);
    }
    for i in 0..n {
        for j in 0..n {
            let subset = images[i].iter().all(|x| images[j].contains(x));
            if subset != lattice.order[i][j] || (i != j && images[i] == images[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A subfunctor of the spectral presheaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClopenSubobject {
    points: PointSet,
}

impl ClopenSubobject {
    /// Fails with [`Error::NotClosed`] unless `points` is closed under
    /// restriction.
    pub fn new(spectrum: &ExternalSpectrum, points: PointSet) -> Result<Self> {
        if points.len() != spectrum.len() || !spectrum.is_closed(&points) {
            return Err(Error::NotClosed);
        }
        Ok(Self { points })
    }

    /// The smallest subobject containing the given points.
    pub fn generated_by(spectrum: &ExternalSpectrum, points: &[usize]) -> Self {
        let mut set = spectrum.empty_set();
        for &p in points {
            set.union_with(&spectrum.point_closure(p));
        }
        Self { points: set }
    }

    pub fn top(spectrum: &ExternalSpectrum) -> Self {
        Self {
            points: spectrum.full_set(),
        }
    }

    pub fn bottom(spectrum: &ExternalSpectrum) -> Self {
        Self {
            points: spectrum.empty_set(),
        }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn component(&self, spectrum: &ExternalSpectrum, context: usize) -> Vec<usize> {
        spectrum.component(&self.points, context)
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.points.is_subset(&other.points)
    }

    pub fn meet(&self, other: &Self) -> Self {
        let mut points = self.points.clone();
        points.intersect_with(&other.points);
        Self { points }
    }

    pub fn join(&self, other: &Self) -> Self {
        let mut points = self.points.clone();
        points.union_with(&other.points);
        Self { points }
    }

    /// `λ ∈ (S ⇒ T)_V` iff every restriction of `λ` lying in `S` lies in `T`.
    pub fn implies(&self, other: &Self, spectrum: &ExternalSpectrum) -> Self {
        let mut points = spectrum.empty_set();
        for p in 0..spectrum.len() {
            let ok = (0..spectrum.context_count()).all(|d| match spectrum.restrict(p, d) {
                Some(q) => !self.points.contains(q) || other.points.contains(q),
                None => true,
            });
            points.set(p, ok);
        }
        Self { points }
    }

    pub fn not(&self, spectrum: &ExternalSpectrum) -> Self {
        self.implies(&Self::bottom(spectrum), spectrum)
    }
}

/// Projection lattices of every context in poset order.
pub fn projection_lattices(poset: &ContextPoset, tol: f64) -> Result<Vec<ProjectionLattice>> {
    (0..poset.len())
        .map(|c| ProjectionLattice::build(&poset.context(c).algebra, c, tol))
        .collect()
}

/// `S_P` with components `α(δ(P)_V)`.
pub fn daseinise_global(
    p: &ComplexMatrix,
    poset: &ContextPoset,
    lattices: &[ProjectionLattice],
    spectrum: &ExternalSpectrum,
    tol: f64,
) -> Result<ClopenSubobject> {
    let mut points = spectrum.empty_set();
    for (c, lattice) in lattices.iter().enumerate() {
        let delta = daseinise(p, lattice, tol)?;
        for i in alpha_iso(&delta, &poset.context(c).algebra, spectrum.spectrum(c), tol)? {
            points.insert(spectrum.point_index(c, i));
        }
    }
    ClopenSubobject::new(spectrum, points).map_err(|_| {
        Error::Numerical("daseinised components are not closed under restriction".into())
    })
}

/// Classical laws tested on one daseinised projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcludedMiddleEntry {
    pub label: String,
    /// `S ∨ ¬S = ⊤`.
    pub excluded_middle: bool,
    /// `¬¬S ≤ S`.
    pub double_negation: bool,
}

impl ExcludedMiddleEntry {
    pub fn is_violation(&self) -> bool {
        !(self.excluded_middle && self.double_negation)
    }
}

pub fn excluded_middle_search(
    poset: &ContextPoset,
    spectrum: &ExternalSpectrum,
    projections: &[(String, ComplexMatrix)],
    tol: f64,
) -> Result<Vec<ExcludedMiddleEntry>> {
    let lattices = projection_lattices(poset, tol)?;
    let top = ClopenSubobject::top(spectrum);
    projections
        .iter()
        .map(|(label, p)| {
            let s = daseinise_global(p, poset, &lattices, spectrum, tol)?;
            let not = s.not(spectrum);
            Ok(ExcludedMiddleEntry {
                label: label.clone(),
                excluded_middle: s.join(&not) == top,
                double_negation: not.not(spectrum).leq(&s),
            })
        })
        .collect()
}
