//! Dense complex matrices and finite-dimensional `*`-algebras.
//!
//! A [`StarAlgebra`] is a unital, adjoint-closed, product-closed linear
//! subspace of `d × d` matrices, stored as a basis that is orthonormal for the
//! normalised trace inner product `⟨A, B⟩ = tr(A* B) / d`. Membership tests
//! are projection residuals against that basis.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
pub use num_complex::Complex64 as C64;

use crate::exec::Exec;
use crate::{Error, Result};

/// Relative Frobenius tolerance used for membership and commutation tests.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default cap on the ambient Hilbert-space dimension.
pub const DEFAULT_DIM_CAP: usize = 4096;

/// Number of minimal projections above which the full projection lattice
/// (2^k elements) is not enumerated.
pub const MAX_LATTICE_ATOMS: usize = 20;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Square complex matrix; the carrier of every operator in the crate.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.0)
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::EntryCount {
                dim,
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self(DMatrix::from_row_slice(dim, dim, &entries)))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let entries: Vec<C64> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| C64::new(x, 0.0)))
            .collect();
        Self::new(dim, entries)
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(DMatrix::from_fn(dim, dim, f))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_diagonal(values: &[C64]) -> Self {
        let n = values.len();
        Self::from_fn(n, |i, j| if i == j { values[i] } else { ZERO })
    }

    /// Permutation matrix with a single 1 in row `i` at column `targets[i]`,
    /// so `(M v)_i = v_{targets[i]}`.
    pub fn pullback(targets: &[usize]) -> Self {
        let n = targets.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &j) in targets.iter().enumerate() {
            m[(i, j)] = ONE;
        }
        Self(m)
    }

    /// Matrix unit `e_{ij}`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        m[(i, j)] = ONE;
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn from_dmatrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::EntryCount {
                dim: m.nrows(),
                expected: m.nrows() * m.nrows(),
                found: m.len(),
            });
        }
        Ok(Self(m))
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self(&self.0 * c)
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Normalised trace inner product `tr(self* other) / dim`.
    pub fn inner(&self, other: &Self) -> C64 {
        let mut acc = ZERO;
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            acc += a.conj() * b;
        }
        acc / self.dim() as f64
    }

    /// Norm induced by [`ComplexMatrix::inner`].
    pub fn normalized_norm(&self) -> f64 {
        self.frobenius_norm() / (self.dim() as f64).sqrt()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0 - &other.0 * &self.0)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim()
            && (&self.0 - &other.0)
                .iter()
                .map(|z| z.norm_sqr())
                .sum::<f64>()
                .sqrt()
                <= tol * self.frobenius_norm().max(other.frobenius_norm()).max(1.0)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.approx_eq(&self.adjoint(), tol)
    }

    pub fn is_projection(&self, tol: f64) -> bool {
        self.is_hermitian(tol) && self.approx_eq(&(self * self), tol)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let id = Self::identity(self.dim());
        let a = self.adjoint();
        (&a * self).approx_eq(&id, tol) && (self * &a).approx_eq(&id, tol)
    }

    /// Rank of a projection, read off its trace.
    pub fn projection_rank(&self) -> usize {
        self.trace().re.round().max(0.0) as usize
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// True iff `‖AB − BA‖_F ≤ tol · max(1, ‖A‖_F ‖B‖_F)`.
pub fn commutes(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            index: 1,
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let bound = tol * (a.frobenius_norm() * b.frobenius_norm()).max(1.0);
    Ok(a.commutator(b).frobenius_norm() <= bound)
}

/// A unital `*`-subalgebra of `d × d` matrices.
#[derive(Clone, Debug)]
pub struct StarAlgebra {
    dim: usize,
    basis: Vec<ComplexMatrix>,
    commutative: bool,
}

/// Incremental Gram–Schmidt span in insertion order.
struct Span {
    dim: usize,
    tol: f64,
    basis: Vec<ComplexMatrix>,
}

impl Span {
    fn new(dim: usize, tol: f64) -> Self {
        Self {
            dim,
            tol,
            basis: Vec::new(),
        }
    }

    fn residual(&self, m: &ComplexMatrix) -> ComplexMatrix {
        // two passes of classical Gram–Schmidt
        let mut r = m.clone().into_dmatrix();
        for _ in 0..2 {
            for b in &self.basis {
                let c = b.inner(&ComplexMatrix(r.clone()));
                r -= b.as_dmatrix() * c;
            }
        }
        ComplexMatrix(r)
    }

    /// Appends the normalised residual of `m`; returns whether the span grew.
    fn push(&mut self, m: &ComplexMatrix) -> bool {
        if self.basis.len() >= self.dim * self.dim {
            return false;
        }
        let r = self.residual(m);
        let n = r.normalized_norm();
        if n <= self.tol * m.normalized_norm().max(1.0) {
            return false;
        }
        self.basis.push(r.scale(C64::new(1.0 / n, 0.0)));
        true
    }
}

/// Smallest unital `*`-closed subalgebra containing `generators`.
pub fn generate_star_algebra(
    generators: &[ComplexMatrix],
    ambient_dim: usize,
    tol: f64,
) -> Result<StarAlgebra> {
    generate_star_algebra_with(generators, ambient_dim, tol, Exec::default())
}

pub fn generate_star_algebra_with(
    generators: &[ComplexMatrix],
    ambient_dim: usize,
    tol: f64,
    exec: Exec,
) -> Result<StarAlgebra> {
    if ambient_dim == 0 {
        return Err(Error::DimensionMismatch {
            index: 0,
            expected: 1,
            found: 0,
        });
    }
    for (index, g) in generators.iter().enumerate() {
        if g.dim() != ambient_dim {
            return Err(Error::DimensionMismatch {
                index,
                expected: ambient_dim,
                found: g.dim(),
            });
        }
    }
    let mut span = Span::new(ambient_dim, tol);
    span.push(&ComplexMatrix::identity(ambient_dim));
    for g in generators {
        span.push(g);
        span.push(&g.adjoint());
    }
    // Products of pairs with at least one element newer than `done`.
    let mut done = 0;
    loop {
        let n = span.basis.len();
        if done == n {
            break;
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i >= done || j >= done)
            .collect();
        let basis = &span.basis;
        let products = exec.map(&pairs, |&(i, j)| &basis[i] * &basis[j]);
        for p in &products {
            span.push(p);
        }
        done = n;
    }
    let basis = span.basis;
    let commutative = pairwise_commute(&basis, tol);
    Ok(StarAlgebra {
        dim: ambient_dim,
        basis,
        commutative,
    })
}

fn pairwise_commute(basis: &[ComplexMatrix], tol: f64) -> bool {
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let bound = tol * (a.frobenius_norm() * b.frobenius_norm()).max(1.0);
            if a.commutator(b).frobenius_norm() > bound {
                return false;
            }
        }
    }
    true
}

/// A minimal projection of a commutative algebra together with the
/// character it induces on the algebra's basis.
#[derive(Clone, Debug)]
pub struct MinimalProjection {
    pub projection: ComplexMatrix,
    /// `values[i]` is the scalar by which basis element `i` acts on the range.
    pub values: Vec<C64>,
    pub rank: usize,
}

/// A projection of a commutative algebra, recorded with the set of minimal
/// projections it dominates.
#[derive(Clone, Debug)]
pub struct LatticeProjection {
    pub matrix: ComplexMatrix,
    pub support: Vec<bool>,
    pub rank: usize,
}

impl StarAlgebra {
    /// The scalar algebra `span{I}`.
    pub fn scalars(dim: usize) -> Self {
        Self {
            dim,
            basis: vec![ComplexMatrix::identity(dim)],
            commutative: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Linear dimension of the algebra (number of basis elements).
    pub fn linear_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Coordinates `⟨b_i, m⟩` of `m` against the orthonormal basis.
    pub fn coords(&self, m: &ComplexMatrix) -> Vec<C64> {
        self.basis.iter().map(|b| b.inner(m)).collect()
    }

    pub fn contains(&self, m: &ComplexMatrix, tol: f64) -> bool {
        if m.dim() != self.dim {
            return false;
        }
        let mut r = m.as_dmatrix().clone();
        for b in &self.basis {
            let c = b.inner(&ComplexMatrix(r.clone()));
            r -= b.as_dmatrix() * c;
        }
        ComplexMatrix(r).normalized_norm() <= tol * m.normalized_norm().max(1.0)
    }

    /// Re-checks the structural invariants: orthonormal basis, identity
    /// membership, closure under adjoints and products.
    pub fn check_invariants(&self, tol: f64) -> bool {
        let loose = tol * 1e3;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (a.inner(b) - C64::new(expect, 0.0)).norm() > loose {
                    return false;
                }
            }
        }
        if !self.contains(&ComplexMatrix::identity(self.dim), tol) {
            return false;
        }
        for a in &self.basis {
            if !self.contains(&a.adjoint(), tol) {
                return false;
            }
            for b in &self.basis {
                if !self.contains(&(a * b), tol) {
                    return false;
                }
            }
        }
        true
    }

    /// Minimal projections of a commutative algebra, i.e. its joint
    /// eigenspaces, in canonical order.
    ///
    /// Blocks are refined one Hermitian part of one basis element at a time:
    /// each basis element preserves every joint eigenspace, so compressing it
    /// to a block and diagonalising splits the block further.
    pub fn minimal_projections(&self, tol: f64) -> Result<Vec<MinimalProjection>> {
        if !self.commutative {
            return Err(Error::NotCommutative);
        }
        let d = self.dim;
        let cluster_tol = 1e-7;
        let mut blocks: Vec<DMatrix<C64>> = vec![DMatrix::identity(d, d)];
        let half = C64::new(0.5, 0.0);
        let minus_half_i = C64::new(0.0, -0.5);
        for b in &self.basis {
            let bm = b.as_dmatrix();
            let ba = bm.adjoint();
            let parts = [(bm + &ba) * half, (bm - &ba) * minus_half_i];
            for h in &parts {
                if h.iter().all(|z| z.norm() <= tol) {
                    continue;
                }
                let mut next = Vec::with_capacity(blocks.len());
                for q in &blocks {
                    if q.ncols() == 1 {
                        next.push(q.clone());
                        continue;
                    }
                    let compressed = q.adjoint() * h * q;
                    // symmetrise to remove round-off before the Hermitian solver
                    let compressed = (&compressed + compressed.adjoint()) * half;
                    let eig = SymmetricEigen::new(compressed);
                    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
                    order.sort_by(|&x, &y| {
                        eig.eigenvalues[x]
                            .partial_cmp(&eig.eigenvalues[y])
                            .unwrap_or(Ordering::Equal)
                    });
                    let mut start = 0;
                    while start < order.len() {
                        let mut end = start + 1;
                        while end < order.len()
                            && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]]
                                <= cluster_tol
                        {
                            end += 1;
                        }
                        let cols: Vec<usize> = order[start..end].to_vec();
                        let v = eig.eigenvectors.select_columns(cols.iter());
                        next.push(q * v);
                        start = end;
                    }
                }
                blocks = next;
            }
        }
        if blocks.len() != self.linear_dim() {
            return Err(Error::Numerical(format!(
                "found {} joint eigenspaces for an algebra of dimension {}",
                blocks.len(),
                self.linear_dim()
            )));
        }
        let mut out = Vec::with_capacity(blocks.len());
        for q in blocks {
            let rank = q.ncols();
            let p = ComplexMatrix(&q * q.adjoint());
            let values: Vec<C64> = self
                .basis
                .iter()
                .map(|b| (q.adjoint() * b.as_dmatrix() * &q).trace() / rank as f64)
                .collect();
            for (b, &v) in self.basis.iter().zip(&values) {
                if !(b * &p).approx_eq(&p.scale(v), tol * 1e3) {
                    return Err(Error::Numerical(
                        "basis element does not act as a scalar on a joint eigenspace".into(),
                    ));
                }
            }
            out.push(MinimalProjection {
                projection: p,
                values,
                rank,
            });
        }
        out.sort_by(|a, b| cmp_values_desc(&a.values, &b.values));
        Ok(out)
    }

    /// Every projection of a commutative algebra, ordered by rank and then by
    /// support pattern (earlier minimal projections first).
    pub fn projection_lattice(&self, tol: f64) -> Result<Vec<LatticeProjection>> {
        let minimal = self.minimal_projections(tol)?;
        let k = minimal.len();
        if k > MAX_LATTICE_ATOMS {
            return Err(Error::EnumerationCap {
                cap: 1 << MAX_LATTICE_ATOMS,
            });
        }
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u32..(1u32 << k) {
            let support: Vec<bool> = (0..k).map(|i| mask & (1 << i) != 0).collect();
            let mut m = DMatrix::zeros(self.dim, self.dim);
            let mut rank = 0;
            for (i, mp) in minimal.iter().enumerate() {
                if support[i] {
                    m += mp.projection.as_dmatrix();
                    rank += mp.rank;
                }
            }
            out.push(LatticeProjection {
                matrix: ComplexMatrix(m),
                support,
                rank,
            });
        }
        out.sort_by(|a, b| {
            a.rank
                .cmp(&b.rank)
                // `true` sorts first so lower-index atoms come first
                .then_with(|| b.support.cmp(&a.support))
        });
        Ok(out)
    }
}

/// Lexicographic, descending, tolerance-aware comparison of value tuples.
pub(crate) fn cmp_values_desc(a: &[C64], b: &[C64]) -> Ordering {
    const EPS: f64 = 1e-7;
    for (x, y) in a.iter().zip(b) {
        if (x.re - y.re).abs() > EPS {
            return y.re.partial_cmp(&x.re).unwrap_or(Ordering::Equal);
        }
        if (x.im - y.im).abs() > EPS {
            return y.im.partial_cmp(&x.im).unwrap_or(Ordering::Equal);
        }
    }
    Ordering::Equal
}

pub fn is_commutative_algebra(a: &StarAlgebra, tol: f64) -> bool {
    pairwise_commute(&a.basis, tol)
}

/// All projections of a commutative algebra, including `0` and `I`.
pub fn projections_of(a: &StarAlgebra, tol: f64) -> Result<Vec<ComplexMatrix>> {
    Ok(a.projection_lattice(tol)?
        .into_iter()
        .map(|p| p.matrix)
        .collect())
}

/// True iff every basis element of `a` lies in the span of `b`.
pub fn subalgebra_leq(a: &StarAlgebra, b: &StarAlgebra, tol: f64) -> bool {
    a.dim == b.dim && a.linear_dim() <= b.linear_dim() && a.basis.iter().all(|m| b.contains(m, tol))
}

/// Mutual inclusion.
pub fn same_subspace(a: &StarAlgebra, b: &StarAlgebra, tol: f64) -> bool {
    a.linear_dim() == b.linear_dim() && subalgebra_leq(a, b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn z() -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&[c(1.0), c(-1.0)])
    }

    fn e11() -> ComplexMatrix {
        ComplexMatrix::unit(2, 0, 0)
    }

    fn e22() -> ComplexMatrix {
        ComplexMatrix::unit(2, 1, 1)
    }

    /// Independent span-dimension oracle: rank of the matrix whose rows are
    /// the vectorised elements of every word of length <= 4 in the generators
    /// and their adjoints.
    fn brute_force_closure_dim(gens: &[ComplexMatrix]) -> usize {
        let d = gens[0].dim();
        let mut letters: Vec<ComplexMatrix> = gens.to_vec();
        letters.extend(gens.iter().map(|g| g.adjoint()));
        let mut words = vec![ComplexMatrix::identity(d)];
        let mut frontier = words.clone();
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &frontier {
                for l in &letters {
                    next.push(w * l);
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let rows = words.len();
        let m = DMatrix::from_fn(rows, d * d, |r, k| words[r].get(k / d, k % d));
        m.svd(false, false)
            .singular_values
            .iter()
            .filter(|&&s| s > 1e-8)
            .count()
    }

    #[test]
    fn identity_generates_scalars() {
        let a = generate_star_algebra(&[ComplexMatrix::identity(2)], 2, DEFAULT_TOL).unwrap();
        assert_eq!(a.linear_dim(), 1);
        assert!(a.is_commutative());
    }

    #[test]
    fn matrix_unit_generates_diagonal() {
        let a = generate_star_algebra(&[e11()], 2, DEFAULT_TOL).unwrap();
        assert_eq!(a.linear_dim(), 2);
        assert!(a.contains(&e22(), DEFAULT_TOL));
        assert!(!a.contains(&x(), DEFAULT_TOL));
        assert_eq!(brute_force_closure_dim(&[e11()]), 2);
    }

    #[test]
    fn swap_and_sign_generate_full_matrix_algebra() {
        let a = generate_star_algebra(&[x(), z()], 2, DEFAULT_TOL).unwrap();
        assert_eq!(a.linear_dim(), 4);
        assert_eq!(brute_force_closure_dim(&[x(), z()]), 4);
        assert!(!a.is_commutative());
        assert!(a.check_invariants(DEFAULT_TOL));
    }

    #[test]
    fn dimension_mismatch_names_generator() {
        let err =
            generate_star_algebra(&[x(), ComplexMatrix::identity(3)], 2, DEFAULT_TOL).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                index: 1,
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn commutation_examples() {
        let tol = DEFAULT_TOL;
        assert!(commutes(&ComplexMatrix::identity(2), &x(), tol).unwrap());
        assert!(commutes(&e11(), &e22(), tol).unwrap());
        assert!(!commutes(&x(), &z(), tol).unwrap());
        // XZ = -ZX
        assert!((&x() * &z()).approx_eq(&(&z() * &x()).scale(c(-1.0)), tol));
        assert!(commutes(&x(), &ComplexMatrix::identity(3), tol).is_err());
    }

    #[test]
    fn commutative_algebra_examples() {
        let tol = DEFAULT_TOL;
        assert!(is_commutative_algebra(&StarAlgebra::scalars(2), tol));
        let diag = generate_star_algebra(&[e11()], 2, tol).unwrap();
        assert!(is_commutative_algebra(&diag, tol));
        let full = generate_star_algebra(&[x(), z()], 2, tol).unwrap();
        assert!(!is_commutative_algebra(&full, tol));
    }

    #[test]
    fn projections_of_examples() {
        let tol = DEFAULT_TOL;
        let ps = projections_of(&StarAlgebra::scalars(2), tol).unwrap();
        assert_eq!(ps.len(), 2);
        assert!(ps[0].approx_eq(&ComplexMatrix::zeros(2), tol));
        assert!(ps[1].approx_eq(&ComplexMatrix::identity(2), tol));

        let diag = generate_star_algebra(&[e11()], 2, tol).unwrap();
        let ps = projections_of(&diag, tol).unwrap();
        assert_eq!(ps.len(), 4);
        assert!(ps[1].approx_eq(&e11(), 1e-8));
        assert!(ps[2].approx_eq(&e22(), 1e-8));

        let sx = generate_star_algebra(&[x()], 2, tol).unwrap();
        let ps = projections_of(&sx, tol).unwrap();
        let id = ComplexMatrix::identity(2);
        let plus = (&id + &x()).scale(c(0.5));
        let minus = (&id - &x()).scale(c(0.5));
        assert!(ps[1].approx_eq(&plus, 1e-8));
        assert!(ps[2].approx_eq(&minus, 1e-8));
        assert!(ps[3].approx_eq(&id, 1e-8));

        let full = generate_star_algebra(&[x(), z()], 2, tol).unwrap();
        assert_eq!(
            projections_of(&full, tol).unwrap_err(),
            Error::NotCommutative
        );
    }

    #[test]
    fn subalgebra_order_examples() {
        let tol = DEFAULT_TOL;
        let diag = generate_star_algebra(&[e11()], 2, tol).unwrap();
        let full = generate_star_algebra(&[x(), z()], 2, tol).unwrap();
        let sx = generate_star_algebra(&[x()], 2, tol).unwrap();
        assert!(subalgebra_leq(&StarAlgebra::scalars(2), &sx, tol));
        assert!(subalgebra_leq(&diag, &full, tol));
        assert!(!subalgebra_leq(&diag, &sx, tol));
    }

    #[test]
    fn sequential_and_parallel_generation_agree() {
        let gens = [x(), z()];
        let a = generate_star_algebra_with(&gens, 2, DEFAULT_TOL, Exec::Sequential).unwrap();
        let b = generate_star_algebra_with(&gens, 2, DEFAULT_TOL, Exec::Parallel).unwrap();
        assert_eq!(a.basis(), b.basis());
    }
}
