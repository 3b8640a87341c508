//! The inclusion-ordered family of commutative contexts.
//!
//! Contexts are the unital `*`-algebras generated by pairwise commuting
//! subsets of a declared generator list, plus the scalars. This is a finite
//! selection from the (continuum-sized) set of all commutative subalgebras.

use crate::algebra::{
    commutes, generate_star_algebra_with, is_commutative_algebra, same_subspace, subalgebra_leq,
    ComplexMatrix, StarAlgebra, C64,
};
use crate::exec::Exec;
use crate::holonomy::{Generator, GroupValuedField, HolonomyModel};
use crate::{Error, Result};

/// Cap on the number of generators whose commuting subsets are enumerated.
pub const MAX_GENERATORS: usize = 20;

#[derive(Clone, Debug)]
pub struct Context {
    pub algebra: StarAlgebra,
    /// Indices into the poset's generator list that generate this context.
    pub generators: Vec<usize>,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct ContextPoset {
    ambient: StarAlgebra,
    generators: Vec<Generator>,
    contexts: Vec<Context>,
    order: Vec<Vec<bool>>,
}

fn label_for(generators: &[Generator], ids: &[usize]) -> String {
    if ids.is_empty() {
        "1".to_string()
    } else {
        ids.iter()
            .map(|&i| generators[i].label.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// All cliques (including the empty one) of the commutation graph, ordered
/// by size and then lexicographically.
fn commuting_subsets(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn extend(adj: &[Vec<bool>], current: &mut Vec<usize>, from: usize, out: &mut Vec<Vec<usize>>) {
        for v in from..adj.len() {
            if current.iter().all(|&u| adj[u][v]) {
                current.push(v);
                out.push(current.clone());
                extend(adj, current, v + 1, out);
                current.pop();
            }
        }
    }
    let mut out = vec![Vec::new()];
    extend(adj, &mut Vec::new(), 0, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

pub fn build_context_poset(
    ambient: StarAlgebra,
    generators: Vec<Generator>,
    tol: f64,
) -> Result<ContextPoset> {
    build_context_poset_with(ambient, generators, tol, Exec::default())
}

/// Generates one context per commuting subset of `generators`, merges equal
/// subspaces (keeping the first, smallest generating set) and computes the
/// inclusion order.
pub fn build_context_poset_with(
    ambient: StarAlgebra,
    generators: Vec<Generator>,
    tol: f64,
    exec: Exec,
) -> Result<ContextPoset> {
    if generators.len() > MAX_GENERATORS {
        return Err(Error::TooManyGenerators {
            found: generators.len(),
            cap: MAX_GENERATORS,
        });
    }
    let dim = ambient.dim();
    for (i, g) in generators.iter().enumerate() {
        if g.matrix.dim() != dim {
            return Err(Error::DimensionMismatch {
                index: i,
                expected: dim,
                found: g.matrix.dim(),
            });
        }
        if !ambient.contains(&g.matrix, tol) {
            return Err(Error::GeneratorOutsideAmbient(g.label.clone()));
        }
    }
    let n = generators.len();
    let mut adj = vec![vec![true; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = commutes(&generators[i].matrix, &generators[j].matrix, tol)?;
            adj[i][j] = c;
            adj[j][i] = c;
        }
    }
    let subsets = commuting_subsets(&adj);
    let algebras: Vec<Result<StarAlgebra>> = exec.map(&subsets, |ids| {
        let mats: Vec<ComplexMatrix> = ids.iter().map(|&i| generators[i].matrix.clone()).collect();
        generate_star_algebra_with(&mats, dim, tol, Exec::Sequential)
    });
    let mut candidates: Vec<Context> = Vec::new();
    for (ids, alg) in subsets.into_iter().zip(algebras) {
        let alg = alg?;
        if candidates
            .iter()
            .any(|c| same_subspace(&c.algebra, &alg, tol))
        {
            continue;
        }
        candidates.push(Context {
            label: label_for(&generators, &ids),
            algebra: alg,
            generators: ids,
        });
    }
    // stable sort: bottom first, then by linear dimension
    candidates.sort_by_key(|c| c.algebra.linear_dim());
    ContextPoset::from_contexts_with(ambient, generators, candidates, tol, exec)
}

impl ContextPoset {
    /// Assembles a poset from explicit contexts; the first context must be
    /// the scalars. Checks every structural invariant.
    pub fn from_contexts(
        ambient: StarAlgebra,
        generators: Vec<Generator>,
        contexts: Vec<Context>,
        tol: f64,
    ) -> Result<Self> {
        Self::from_contexts_with(ambient, generators, contexts, tol, Exec::default())
    }

    pub fn from_contexts_with(
        ambient: StarAlgebra,
        generators: Vec<Generator>,
        contexts: Vec<Context>,
        tol: f64,
        exec: Exec,
    ) -> Result<Self> {
        let n = contexts.len();
        if n == 0 || contexts[0].algebra.linear_dim() != 1 {
            return Err(Error::Numerical("first context must be the scalars".into()));
        }
        for c in &contexts {
            if !is_commutative_algebra(&c.algebra, tol) {
                return Err(Error::NotCommutative);
            }
        }
        let order: Vec<Vec<bool>> = exec.map_range(n, |i| {
            (0..n)
                .map(|j| i == j || subalgebra_leq(&contexts[i].algebra, &contexts[j].algebra, tol))
                .collect()
        });
        let poset = Self {
            ambient,
            generators,
            contexts,
            order,
        };
        poset.check_order()?;
        Ok(poset)
    }

    fn check_order(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.order[0][i] {
                return Err(Error::Numerical(
                    "bottom context is not below all others".into(),
                ));
            }
            for j in 0..n {
                if i != j && self.order[i][j] && self.order[j][i] {
                    return Err(Error::Numerical(format!(
                        "contexts {i} and {j} coincide as subspaces"
                    )));
                }
                for k in 0..n {
                    if self.order[i][j] && self.order[j][k] && !self.order[i][k] {
                        return Err(Error::Numerical("inclusion order is not transitive".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ambient(&self) -> &StarAlgebra {
        &self.ambient
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn context(&self, i: usize) -> &Context {
        &self.contexts[i]
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    /// `contexts[i] ⊆ contexts[j]`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order[i][j]
    }

    pub fn order(&self) -> &[Vec<bool>] {
        &self.order
    }

    /// Contexts below `i`, including `i`.
    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.order[j][i]).collect()
    }

    /// Covering pairs `(lower, upper)` of the Hasse diagram.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.order[i][j] {
                    continue;
                }
                let covered =
                    (0..n).any(|k| k != i && k != j && self.order[i][k] && self.order[k][j]);
                if !covered {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Finite posets always satisfy the ascending chain condition; returns
    /// `true` with a longest strictly ascending chain (lexicographically
    /// smallest among ties).
    pub fn ascending_chain_check(&self) -> (bool, Vec<usize>) {
        let n = self.len();
        // best[i]: longest chain starting at i going up
        let mut best: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut by_dim: Vec<usize> = (0..n).collect();
        by_dim.sort_by_key(|&i| std::cmp::Reverse(self.contexts[i].algebra.linear_dim()));
        for &i in &by_dim {
            let mut chain = vec![i];
            for (j, above) in best.iter().enumerate() {
                if i != j && self.order[i][j] {
                    let mut cand = vec![i];
                    cand.extend(above.iter().copied());
                    if cand.len() > chain.len() || (cand.len() == chain.len() && cand < chain) {
                        chain = cand;
                    }
                }
            }
            best[i] = chain;
        }
        (true, best[self.bottom()].clone())
    }
}

/// Outcome of testing one candidate function against one Weyl operator.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedContextResult {
    pub label: String,
    /// `f ∘ Θ = f`.
    pub invariant: bool,
    /// `w T_f = T_f w` as matrices.
    pub commutes: bool,
}

/// For each candidate `f`, decides translation invariance and checks the
/// commutation of `T_f` with the Weyl operator; invariant pairs seed mixed
/// contexts combining configuration and momentum operators.
pub fn mixed_context_search(
    model: &HolonomyModel,
    surface: usize,
    d: &GroupValuedField,
    config_fns: &[(String, Vec<C64>)],
    tol: f64,
) -> Result<Vec<MixedContextResult>> {
    let w = model.weyl_operator(surface, d)?;
    let mut out = Vec::with_capacity(config_fns.len());
    for (label, f) in config_fns {
        let translated = model.translate_function(surface, d, f)?;
        let scale = f.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let invariant = f
            .iter()
            .zip(&translated)
            .all(|(a, b)| (a - b).norm() <= tol * scale);
        let t = model.config_operator(f)?;
        let commutes = (&w * &t).approx_eq(&(&t * &w), tol);
        out.push(MixedContextResult {
            label: label.clone(),
            invariant,
            commutes,
        });
    }
    Ok(out)
}
