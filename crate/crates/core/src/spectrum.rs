//! Gelfand spectra of contexts and the external spectrum over a context
//! poset.
//!
//! The external spectrum is the set of pairs `(C, λ)` with `λ` a character of
//! context `C`. Each finite `Σ_C` carries the discrete weak* topology, so the
//! per-context closedness/openness conditions are vacuous and only the
//! relational conditions along restriction maps are tested:
//!
//! - a set is **closed** iff `λ ∈ V_C` and `D ⊆ C` imply `λ|_D ∈ V_D`;
//! - a set is **open** iff `λ ∈ U_C`, `C ⊆ C'` and `λ'|_C = λ` imply
//!   `λ' ∈ U_{C'}`.
//!
//! Finite external spectra are sober. [`truncated_chain`] builds the truncated
//! ascending chain of Weyl contexts whose infinite limit is what breaks
//! sobriety, and reports how the closure witness escapes at every depth.

use fixedbitset::FixedBitSet;

use crate::algebra::{cmp_values_desc, generate_star_algebra, ComplexMatrix, StarAlgebra, C64};
use crate::context::{Context, ContextPoset};
use crate::exec::Exec;
use crate::holonomy::{Generator, GroupValuedField, HolonomyModel};
use crate::{Error, Result};

/// Default cap on the number of closed sets enumerated by the sobriety check.
pub const DEFAULT_CLOSED_SET_CAP: usize = 1_000_000;

/// A subset of the points of an [`ExternalSpectrum`].
pub type PointSet = FixedBitSet;

/// A multiplicative unital functional on a context, realised by a minimal
/// projection `p` through `A p = λ(A) p`.
#[derive(Clone, Debug)]
pub struct Character {
    pub context: usize,
    /// Position in the canonical order of the context's minimal projections.
    pub index: usize,
    /// Values on the context's orthonormal basis.
    pub values: Vec<C64>,
    pub projection: ComplexMatrix,
}

impl Character {
    /// `λ(m)` for `m` in the context, by linearity over the basis.
    pub fn evaluate(&self, algebra: &StarAlgebra, m: &ComplexMatrix) -> C64 {
        algebra
            .coords(m)
            .iter()
            .zip(&self.values)
            .map(|(c, v)| c * v)
            .sum()
    }

    /// Multiplicativity on basis pairs and `λ(I) = 1`.
    pub fn is_multiplicative(&self, algebra: &StarAlgebra, tol: f64) -> bool {
        let loose = tol * 1e3;
        let id = ComplexMatrix::identity(algebra.dim());
        if (self.evaluate(algebra, &id) - C64::new(1.0, 0.0)).norm() > loose {
            return false;
        }
        let basis = algebra.basis();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let lhs = self.evaluate(algebra, &(a * b));
                let rhs = self.values[i] * self.values[j];
                if (lhs - rhs).norm() > loose * (1.0 + rhs.norm()) {
                    return false;
                }
            }
        }
        true
    }
}

/// Characters of a commutative context, one per minimal projection.
pub fn gelfand_spectrum(algebra: &StarAlgebra, context: usize, tol: f64) -> Result<Vec<Character>> {
    Ok(algebra
        .minimal_projections(tol)?
        .into_iter()
        .enumerate()
        .map(|(index, mp)| Character {
            context,
            index,
            values: mp.values,
            projection: mp.projection,
        })
        .collect())
}

fn match_tol(tol: f64) -> f64 {
    (tol * 1e3).max(1e-10)
}

/// Restricts `λ` from `from` to the subcontext `to` and returns the index of
/// the matching canonical character of `to`.
pub fn restrict_character(
    character: &Character,
    from: &StarAlgebra,
    to: &StarAlgebra,
    to_spectrum: &[Character],
    tol: f64,
) -> Result<usize> {
    let values: Vec<C64> = to
        .basis()
        .iter()
        .map(|b| character.evaluate(from, b))
        .collect();
    let mt = match_tol(tol);
    to_spectrum
        .iter()
        .position(|c| {
            c.values
                .iter()
                .zip(&values)
                .all(|(x, y)| (x - y).norm() <= mt * (1.0 + y.norm()))
        })
        .ok_or_else(|| {
            Error::Numerical("restricted functional matches no character of the subcontext".into())
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectrumPoint {
    pub context: usize,
    pub character: usize,
}

/// All pairs `(C, λ)` over a context poset, with the restriction arrows
/// `(C, λ) → (D, λ|_D)` for `D ⊆ C`.
#[derive(Clone, Debug)]
pub struct ExternalSpectrum {
    spectra: Vec<Vec<Character>>,
    points: Vec<SpectrumPoint>,
    offsets: Vec<usize>,
    order: Vec<Vec<bool>>,
    linear_dims: Vec<usize>,
    /// `restrictions[p][d]` is the point `(D, λ|_D)` when `D ⊆ C(p)`.
    restrictions: Vec<Vec<Option<usize>>>,
}

pub fn external_spectrum(poset: &ContextPoset, tol: f64) -> Result<ExternalSpectrum> {
    ExternalSpectrum::build(poset, tol, Exec::default())
}

impl ExternalSpectrum {
    pub fn build(poset: &ContextPoset, tol: f64, exec: Exec) -> Result<Self> {
        let n = poset.len();
        let spectra: Vec<Vec<Character>> = exec
            .map_range(n, |i| gelfand_spectrum(&poset.context(i).algebra, i, tol))
            .into_iter()
            .collect::<Result<_>>()?;
        let mut points = Vec::new();
        let mut offsets = Vec::with_capacity(n + 1);
        for (ctx, chars) in spectra.iter().enumerate() {
            offsets.push(points.len());
            points.extend((0..chars.len()).map(|character| SpectrumPoint {
                context: ctx,
                character,
            }));
        }
        offsets.push(points.len());
        let restrictions: Vec<Vec<Option<usize>>> = exec
            .map(&points, |p| {
                (0..n)
                    .map(|d| {
                        if !poset.leq(d, p.context) {
                            return Ok(None);
                        }
                        if d == p.context {
                            return Ok(Some(offsets[d] + p.character));
                        }
                        let idx = restrict_character(
                            &spectra[p.context][p.character],
                            &poset.context(p.context).algebra,
                            &poset.context(d).algebra,
                            &spectra[d],
                            tol,
                        )?;
                        Ok(Some(offsets[d] + idx))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .into_iter()
            .collect::<Result<_>>()?;
        let out = Self {
            spectra,
            points,
            offsets,
            order: poset.order().to_vec(),
            linear_dims: poset
                .contexts()
                .iter()
                .map(|c| c.algebra.linear_dim())
                .collect(),
            restrictions,
        };
        if !out.arrows_compose() {
            return Err(Error::Numerical("restriction arrows do not compose".into()));
        }
        Ok(out)
    }

    /// `(C→D→E) = (C→E)` for every chain `E ⊆ D ⊆ C`.
    pub fn arrows_compose(&self) -> bool {
        let n = self.context_count();
        (0..self.len()).all(|p| {
            (0..n).all(|d| match self.restrictions[p][d] {
                None => true,
                Some(q) => (0..n).all(|e| {
                    !self.order[e][d] || self.restrictions[q][e] == self.restrictions[p][e]
                }),
            })
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn context_count(&self) -> usize {
        self.spectra.len()
    }

    pub fn points(&self) -> &[SpectrumPoint] {
        &self.points
    }

    pub fn point(&self, p: usize) -> SpectrumPoint {
        self.points[p]
    }

    pub fn point_index(&self, context: usize, character: usize) -> usize {
        self.offsets[context] + character
    }

    pub fn spectrum(&self, context: usize) -> &[Character] {
        &self.spectra[context]
    }

    pub fn character(&self, p: usize) -> &Character {
        let sp = self.points[p];
        &self.spectra[sp.context][sp.character]
    }

    /// Points of context `c`, as a range of point indices.
    pub fn points_of(&self, c: usize) -> std::ops::Range<usize> {
        self.offsets[c]..self.offsets[c + 1]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order[a][b]
    }

    /// The point `(D, λ|_D)` for `D ⊆ C(p)`.
    pub fn restrict(&self, p: usize, d: usize) -> Option<usize> {
        self.restrictions[p][d]
    }

    /// Non-identity restriction arrows `(C, λ) → (D, λ|_D)`.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for d in 0..self.context_count() {
                if d != self.points[p].context {
                    if let Some(q) = self.restrictions[p][d] {
                        out.push((p, q));
                    }
                }
            }
        }
        out
    }

    pub fn empty_set(&self) -> PointSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn set_from(&self, points: &[usize]) -> PointSet {
        let mut s = self.empty_set();
        for &p in points {
            s.insert(p);
        }
        s
    }

    /// Character indices of `set` at context `c`.
    pub fn component(&self, set: &PointSet, c: usize) -> Vec<usize> {
        self.points_of(c)
            .filter(|&p| set.contains(p))
            .map(|p| self.points[p].character)
            .collect()
    }

    /// Downward closure under restriction.
    pub fn is_closed(&self, set: &PointSet) -> bool {
        set.ones().all(|p| {
            self.restrictions[p]
                .iter()
                .all(|r| r.is_none_or(|q| set.contains(q)))
        })
    }

    /// Upward closure along extensions: whenever `λ ∈ U_C` and a character
    /// `λ'` of some `C' ⊇ C` restricts to `λ`, then `λ' ∈ U_{C'}`.
    pub fn is_open(&self, set: &PointSet) -> bool {
        let n = self.context_count();
        for c in 0..n {
            for p in self.points_of(c) {
                if !set.contains(p) {
                    continue;
                }
                for c2 in 0..n {
                    if c2 == c || !self.order[c][c2] {
                        continue;
                    }
                    for q in self.points_of(c2) {
                        if self.restrictions[q][c] == Some(p) && !set.contains(q) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn complement(&self, set: &PointSet) -> PointSet {
        let mut c = set.clone();
        c.toggle_range(..);
        c
    }

    /// `{(D, λ|_D) | D ⊆ C}` for the point `(C, λ)`.
    pub fn point_closure(&self, p: usize) -> PointSet {
        let mut s = self.empty_set();
        for q in self.restrictions[p].iter().flatten() {
            s.insert(*q);
        }
        s
    }

    /// Irreducibility of a nonempty closed set: at most one character per
    /// context, and any two occupied contexts lie below a common occupied
    /// context.
    pub fn is_irreducible(&self, set: &PointSet) -> Result<bool> {
        if !self.is_closed(set) {
            return Err(Error::NotClosed);
        }
        Ok(self.irreducible_unchecked(set))
    }

    fn irreducible_unchecked(&self, set: &PointSet) -> bool {
        if set.is_clear() {
            return false;
        }
        let n = self.context_count();
        let mut occupied = Vec::new();
        for c in 0..n {
            let k = self.points_of(c).filter(|&p| set.contains(p)).count();
            if k > 1 {
                return false;
            }
            if k == 1 {
                occupied.push(c);
            }
        }
        occupied.iter().all(|&a| {
            occupied.iter().all(|&b| {
                occupied
                    .iter()
                    .any(|&c| self.order[a][c] && self.order[b][c])
            })
        })
    }

    /// Irreducibility in the topological sense: `set` is nonempty and not the
    /// union of two closed proper subsets. `closed_sets` must list every
    /// closed set contained in `set`.
    pub fn is_irreducible_by_unions(&self, set: &PointSet, closed_sets: &[PointSet]) -> bool {
        if set.is_clear() {
            return false;
        }
        let proper: Vec<&PointSet> = closed_sets
            .iter()
            .filter(|c| c.is_subset(set) && *c != set)
            .collect();
        for (i, a) in proper.iter().enumerate() {
            for b in &proper[i..] {
                let mut u = (*a).clone();
                u.union_with(b);
                if &u == set {
                    return false;
                }
            }
        }
        true
    }

    /// Points ordered so that every strict restriction precedes the point.
    fn topological_points(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&p| (self.linear_dims[self.points[p].context], p));
        idx
    }

    /// Every closed set, by depth-first inclusion/exclusion over points in
    /// restriction order. Fails once more than `cap` sets have been produced.
    pub fn closed_sets(&self, cap: usize) -> Result<Vec<PointSet>> {
        self.enumerate_closed(cap, false)
    }

    /// Closed sets with at most one character per context. Every irreducible
    /// closed set is among them.
    pub fn single_valued_closed_sets(&self, cap: usize) -> Result<Vec<PointSet>> {
        self.enumerate_closed(cap, true)
    }

    fn enumerate_closed(&self, cap: usize, single_valued: bool) -> Result<Vec<PointSet>> {
        struct Walk<'a> {
            spectrum: &'a ExternalSpectrum,
            order: Vec<usize>,
            below: Vec<Vec<usize>>,
            single_valued: bool,
            occupied: Vec<bool>,
            current: PointSet,
            out: Vec<PointSet>,
            cap: usize,
        }
        impl Walk<'_> {
            fn run(&mut self, pos: usize) -> bool {
                if pos == self.order.len() {
                    if self.out.len() >= self.cap {
                        return false;
                    }
                    self.out.push(self.current.clone());
                    return true;
                }
                let p = self.order[pos];
                if !self.run(pos + 1) {
                    return false;
                }
                let ctx = self.spectrum.points[p].context;
                let free = !self.single_valued || !self.occupied[ctx];
                if free && self.below[p].iter().all(|&q| self.current.contains(q)) {
                    self.current.insert(p);
                    self.occupied[ctx] = true;
                    let ok = self.run(pos + 1);
                    self.occupied[ctx] = false;
                    self.current.set(p, false);
                    if !ok {
                        return false;
                    }
                }
                true
            }
        }
        let below = (0..self.len())
            .map(|p| {
                self.restrictions[p]
                    .iter()
                    .flatten()
                    .copied()
                    .filter(|&q| q != p)
                    .collect()
            })
            .collect();
        let mut walk = Walk {
            spectrum: self,
            order: self.topological_points(),
            below,
            single_valued,
            occupied: vec![false; self.context_count()],
            current: self.empty_set(),
            out: Vec::new(),
            cap,
        };
        if walk.run(0) {
            Ok(walk.out)
        } else {
            Err(Error::EnumerationCap { cap })
        }
    }

    /// Points whose closure equals `set`.
    pub fn closure_witnesses(&self, set: &PointSet) -> Vec<usize> {
        set.ones()
            .filter(|&p| &self.point_closure(p) == set)
            .collect()
    }

    pub fn sobriety_check(&self, options: SobrietyOptions) -> Result<SobrietyReport> {
        self.sobriety_check_with(options, Exec::default())
    }

    /// Searches every nonempty irreducible closed set for a unique point whose
    /// closure it is. Candidates are the closed sets with at most one
    /// character per context; when they outnumber the cap, falls back (if
    /// allowed) to closures of one- and two-point antichains.
    pub fn sobriety_check_with(
        &self,
        options: SobrietyOptions,
        exec: Exec,
    ) -> Result<SobrietyReport> {
        let (mode, candidates) = match self.single_valued_closed_sets(options.cap) {
            Ok(all) => (SobrietyMode::Full, all),
            Err(Error::EnumerationCap { cap }) if !options.allow_partial => {
                return Err(Error::EnumerationCap { cap })
            }
            Err(Error::EnumerationCap { .. }) => (SobrietyMode::Partial, self.antichain_closures()),
            Err(e) => return Err(e),
        };
        let examined = candidates.len();
        let verdicts: Vec<Option<(PointSet, Vec<usize>)>> = exec.map(&candidates, |s| {
            if self.irreducible_unchecked(s) {
                Some((s.clone(), self.closure_witnesses(s)))
            } else {
                None
            }
        });
        let mut witnesses = Vec::new();
        let mut counterexample = None;
        for (set, w) in verdicts.into_iter().flatten() {
            if w.len() == 1 {
                witnesses.push((set, w[0]));
            } else if counterexample.is_none() {
                counterexample = Some((set, w));
            }
        }
        Ok(SobrietyReport {
            mode,
            sober: counterexample.is_none(),
            candidates_examined: examined,
            witnesses,
            counterexample,
        })
    }

    fn antichain_closures(&self) -> Vec<PointSet> {
        let closures: Vec<PointSet> = (0..self.len()).map(|p| self.point_closure(p)).collect();
        let mut out: Vec<PointSet> = closures.clone();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if closures[i].contains(j) || closures[j].contains(i) {
                    continue;
                }
                let mut u = closures[i].clone();
                u.union_with(&closures[j]);
                out.push(u);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SobrietyOptions {
    pub cap: usize,
    pub allow_partial: bool,
}

impl Default for SobrietyOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CLOSED_SET_CAP,
            allow_partial: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SobrietyMode {
    Full,
    Partial,
}

#[derive(Clone, Debug)]
pub struct SobrietyReport {
    pub mode: SobrietyMode,
    pub sober: bool,
    pub candidates_examined: usize,
    /// Each irreducible closed set with its unique generic point.
    pub witnesses: Vec<(PointSet, usize)>,
    /// An irreducible closed set with zero or several generic points.
    pub counterexample: Option<(PointSet, Vec<usize>)>,
}

/// How the requested character value on the next Weyl operator was realised.
#[derive(Clone, Debug)]
pub struct ChainCharacter {
    pub requested: C64,
    pub realized: C64,
    /// Distinct eigenvalues of the Weyl operator over the context.
    pub available: Vec<C64>,
    pub snapped: bool,
}

#[derive(Clone, Debug)]
pub struct ChainStep {
    /// Truncation depth `k`.
    pub depth: usize,
    pub set: PointSet,
    pub closed: bool,
    pub irreducible: bool,
    pub witnesses: Vec<usize>,
    /// The unique witness is the chain top `(V_k, λ_k)`.
    pub witness_is_top: bool,
    /// The witness lies in no shallower truncation.
    pub escapes: bool,
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub poset: ContextPoset,
    pub spectrum: ExternalSpectrum,
    /// Linear dimensions of `V_1, …, V_n`.
    pub dims: Vec<usize>,
    pub strictly_ascending: bool,
    pub characters: Vec<ChainCharacter>,
    /// Point `(V_k, λ_k)` for `k = 0..=n`.
    pub top_points: Vec<usize>,
    pub steps: Vec<ChainStep>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        let mut seen: Vec<usize> = self
            .steps
            .iter()
            .flat_map(|s| s.witnesses.clone())
            .collect();
        let total = seen.len();
        seen.sort_unstable();
        seen.dedup();
        self.strictly_ascending
            && seen.len() == total
            && self.steps.iter().all(|s| {
                s.closed && s.irreducible && s.witnesses.len() == 1 && s.witness_is_top && s.escapes
            })
    }
}

/// Truncated ascending chain `V_1 ⊂ … ⊂ V_n` of contexts generated by Weyl
/// operators on pairwise disjoint surfaces, with characters `λ_k` extended
/// one operator at a time and the truncated irreducible closed sets `X*_k`.
///
/// A requested value `c` on the unit circle is snapped to the nearest value
/// actually taken by an extension of `λ_{k-1}`.
pub fn truncated_chain(
    model: &HolonomyModel,
    surfaces: &[usize],
    field: &GroupValuedField,
    targets: &[C64],
    tol: f64,
) -> Result<ChainReport> {
    let n = surfaces.len();
    if n < 2 {
        return Err(Error::ChainPrecondition(
            "at least two surfaces are required".into(),
        ));
    }
    if targets.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: targets.len(),
        });
    }
    for (i, &a) in surfaces.iter().enumerate() {
        let sa = model.surface(a)?;
        for &b in &surfaces[i + 1..] {
            if a == b || !sa.is_disjoint_from(model.surface(b)?) {
                return Err(Error::ChainPrecondition(format!(
                    "surfaces `{}` and `{}` are not disjoint",
                    sa.id,
                    model.surface(b)?.id
                )));
            }
        }
    }
    for &c in targets {
        if (c.norm() - 1.0).abs() > 1e-6 {
            return Err(Error::UnrealizableCharacter {
                requested: format!("{c}"),
                available: "values on the unit circle only".into(),
            });
        }
    }
    let dim = model.hilbert_dim();
    let generators: Vec<Generator> = surfaces
        .iter()
        .map(|&s| {
            let label = format!("w[{}]", model.surface(s)?.id);
            model.weyl_generator(label, s, field.clone())
        })
        .collect::<Result<_>>()?;
    let mats: Vec<ComplexMatrix> = generators.iter().map(|g| g.matrix.clone()).collect();
    let mut contexts = vec![Context {
        algebra: StarAlgebra::scalars(dim),
        generators: vec![],
        label: "1".into(),
    }];
    for k in 1..=n {
        contexts.push(Context {
            algebra: generate_star_algebra(&mats[..k], dim, tol)?,
            generators: (0..k).collect(),
            label: format!("V{k}"),
        });
    }
    let dims: Vec<usize> = contexts[1..]
        .iter()
        .map(|c| c.algebra.linear_dim())
        .collect();
    let strictly_ascending = std::iter::once(1)
        .chain(dims.iter().copied())
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[1] > w[0]);
    if !strictly_ascending {
        return Err(Error::ChainPrecondition(format!(
            "context dimensions {dims:?} do not strictly increase"
        )));
    }
    let ambient = contexts[n].algebra.clone();
    let poset = ContextPoset::from_contexts(ambient, generators, contexts, tol)?;
    let spectrum = ExternalSpectrum::build(&poset, tol, Exec::default())?;

    let mut top_points = vec![spectrum.point_index(0, 0)];
    let mut characters = Vec::with_capacity(n);
    for k in 1..=n {
        let alg = &poset.context(k).algebra;
        let w = &mats[k - 1];
        let prev = top_points[k - 1];
        let values: Vec<C64> = spectrum
            .spectrum(k)
            .iter()
            .map(|ch| ch.evaluate(alg, w))
            .collect();
        let mut available = values.clone();
        available.sort_by(|a, b| cmp_values_desc(&[*a], &[*b]));
        available.dedup_by(|a, b| (*a - *b).norm() <= 1e-7);
        let target = targets[k - 1];
        let (best, realized) = spectrum
            .points_of(k)
            .zip(values.iter())
            .filter(|(p, _)| spectrum.restrict(*p, k - 1) == Some(prev))
            .min_by(|a, b| {
                (a.1 - target)
                    .norm()
                    .partial_cmp(&(b.1 - target).norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .map(|(p, v)| (p, *v))
            .ok_or_else(|| Error::UnrealizableCharacter {
                requested: format!("{target}"),
                available: format!("{available:?}"),
            })?;
        characters.push(ChainCharacter {
            requested: target,
            realized,
            snapped: (realized - target).norm() > 1e-9,
            available,
        });
        top_points.push(best);
    }

    // X*_k: points (C, λ_{j+1}|_C) with V_j ⊆ C ⊆ V_{j+1}, j < k
    let truncations: Vec<PointSet> = (1..=n)
        .map(|k| {
            let mut s = spectrum.empty_set();
            for j in 0..k {
                for c in 0..poset.len() {
                    if poset.leq(j, c) && poset.leq(c, j + 1) {
                        if let Some(q) = spectrum.restrict(top_points[j + 1], c) {
                            s.insert(q);
                        }
                    }
                }
            }
            s
        })
        .collect();
    let steps = (1..=n)
        .map(|k| {
            let set = truncations[k - 1].clone();
            let closed = spectrum.is_closed(&set);
            let irreducible = closed && spectrum.irreducible_unchecked(&set);
            let witnesses = spectrum.closure_witnesses(&set);
            let witness_is_top = witnesses == [top_points[k]];
            let escapes = witnesses
                .iter()
                .all(|&p| truncations[..k - 1].iter().all(|t| !t.contains(p)));
            ChainStep {
                depth: k,
                set,
                closed,
                irreducible,
                witnesses,
                witness_is_top,
                escapes,
            }
        })
        .collect();
    Ok(ChainReport {
        poset,
        spectrum,
        dims,
        strictly_ascending,
        characters,
        top_points,
        steps,
    })
}
