//! Model files: a JSON document describing the graph, the group, surfaces,
//! generators and the symmetry sets to check.
//!
//! ```json
//! {
//!   "schema": "bohrify-model/1",
//!   "name": "z2-one-edge",
//!   "group": "Z2",
//!   "graph": { "vertices": ["v0", "v1"],
//!              "edges": [{ "id": "e", "source": "v0", "target": "v1" }] },
//!   "surfaces": [{ "id": "S", "sigma": { "e": [1, 0] } }],
//!   "config_functions": [{ "name": "T", "table": [1, -1] }],
//!   "weyl_generators": [{ "name": "w", "surface": "S", "field": { "v0": "a" } }],
//!   "projections": [{ "name": "e11", "diagonal": [1, 0] }],
//!   "automorphisms": "auto",
//!   "gauges": ["constants", "random:100:1"]
//! }
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use bohrify_core::algebra::{generate_star_algebra, ComplexMatrix, StarAlgebra, DEFAULT_DIM_CAP};
use bohrify_core::graph::{Graph, PathWord, Step};
use bohrify_core::group::FiniteGroup;
use bohrify_core::holonomy::{Connection, Generator, GroupValuedField, HolonomyModel, Surface};
use bohrify_core::spectrum::DEFAULT_CLOSED_SET_CAP;
use bohrify_core::symmetry::{
    automorphisms, constant_gauges, random_gauges, GaugeTransformation, GraphAutomorphism,
};
use bohrify_core::{C64, DEFAULT_TOL};
use serde::Deserialize;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "bohrify-model/1";

/// Environment variable overriding the Hilbert-space dimension cap.
pub const CAP_ENV: &str = "BOHRIFY_CAP_DIM";

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] bohrify_core::Error),
}

fn invalid(msg: impl Into<String>) -> ModelError {
    ModelError::Invalid(msg.into())
}

/// A real number or a `[re, im]` pair.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Number {
    Real(f64),
    Complex([f64; 2]),
}

impl Number {
    pub fn value(self) -> C64 {
        match self {
            Number::Real(x) => C64::new(x, 0.0),
            Number::Complex([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Builtin(String),
    Table {
        #[serde(default)]
        name: Option<String>,
        labels: Vec<String>,
        table: Vec<Vec<String>>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub id: String,
    /// `edge id → [σ(e), σ(e⁻¹)]`; unlisted edges get `[0, 0]`.
    #[serde(default)]
    pub sigma: BTreeMap<String, [i8; 2]>,
    /// Edges lying inside the surface.
    #[serde(default)]
    pub interior: Vec<String>,
}

/// A constant group element, or `vertex → element` with the identity on
/// unlisted vertices.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Constant(String),
    Map(BTreeMap<String, String>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HolonomySpec {
    pub start: String,
    /// Edge ids, `e^-1` for a backward step.
    pub path: Vec<String>,
    /// Value per group element, in table order.
    pub values: Vec<Number>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    pub name: String,
    #[serde(default)]
    pub table: Option<Vec<Number>>,
    /// `edge id → element` naming one connection.
    #[serde(default)]
    pub indicator: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub holonomy: Option<HolonomySpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylSpec {
    pub name: String,
    pub surface: String,
    pub field: FieldSpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionSpec {
    pub name: String,
    /// Diagonal 0/1 entries in connection order.
    #[serde(default)]
    pub diagonal: Option<Vec<f64>>,
    /// Rank-one projection onto this vector.
    #[serde(default)]
    pub vector: Option<Vec<Number>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismSpec {
    pub vertices: BTreeMap<String, String>,
    /// `edge id → image id`, `id^-1` for a reversed image.
    pub edges: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum AutomorphismsSpec {
    Keyword(String),
    List(Vec<AutomorphismSpec>),
}

impl Default for AutomorphismsSpec {
    fn default() -> Self {
        AutomorphismsSpec::Keyword("auto".into())
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GaugeItem {
    /// `constants`, `identity`, `random:N` or `random:N:SEED`.
    Keyword(String),
    Field(BTreeMap<String, String>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    pub surfaces: Vec<String>,
    pub field: FieldSpec,
    /// Requested character values on successive Weyl operators; default 1.
    #[serde(default)]
    pub values: Vec<Number>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsSpec {
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub closed_sets: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub schema: String,
    pub name: String,
    pub group: GroupSpec,
    pub graph: GraphSpec,
    #[serde(default)]
    pub surfaces: Vec<SurfaceSpec>,
    #[serde(default)]
    pub config_functions: Vec<ConfigSpec>,
    #[serde(default)]
    pub weyl_generators: Vec<WeylSpec>,
    #[serde(default)]
    pub projections: Vec<ProjectionSpec>,
    #[serde(default)]
    pub automorphisms: AutomorphismsSpec,
    #[serde(default)]
    pub gauges: Vec<GaugeItem>,
    #[serde(default)]
    pub chain: Option<ChainSpec>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub caps: CapsSpec,
}

#[derive(Clone, Debug)]
pub struct ChainSetup {
    pub surfaces: Vec<usize>,
    pub field: GroupValuedField,
    pub values: Vec<C64>,
}

/// Options that override values from the file.
#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub dim_cap: Option<usize>,
}

/// A validated model with every derived object built.
#[derive(Clone, Debug)]
pub struct LoadedModel {
    pub name: String,
    /// Hex SHA-256 of the file contents.
    pub digest: String,
    pub tol: f64,
    pub closed_set_cap: usize,
    pub model: HolonomyModel,
    /// Configuration generators first, then Weyl generators, in file order.
    pub generators: Vec<Generator>,
    pub ambient: StarAlgebra,
    pub projections: Vec<(String, ComplexMatrix)>,
    pub automorphisms: Vec<GraphAutomorphism>,
    pub gauges: Vec<GaugeTransformation>,
    pub chain: Option<ChainSetup>,
}

impl LoadedModel {
    pub fn weyl_generators(&self) -> impl Iterator<Item = (&str, usize, &GroupValuedField)> {
        self.generators.iter().filter_map(|g| match &g.kind {
            bohrify_core::holonomy::GeneratorKind::Weyl { surface, field } => {
                Some((g.label.as_str(), *surface, field))
            }
            _ => None,
        })
    }

    pub fn config_tables(&self) -> impl Iterator<Item = (&str, &[C64])> {
        self.generators.iter().filter_map(|g| match &g.kind {
            bohrify_core::holonomy::GeneratorKind::Configuration { table } => {
                Some((g.label.as_str(), table.as_slice()))
            }
            _ => None,
        })
    }
}

pub fn load_model(path: &Path, options: LoadOptions) -> Result<LoadedModel, ModelError> {
    let text = std::fs::read_to_string(path).map_err(|e| ModelError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_model(&text, options)
}

fn dim_cap(options: &LoadOptions, spec: &CapsSpec) -> Result<usize, ModelError> {
    if let Some(cap) = options.dim_cap {
        return Ok(cap);
    }
    if let Ok(v) = std::env::var(CAP_ENV) {
        return v
            .trim()
            .parse()
            .map_err(|_| invalid(format!("{CAP_ENV} must be a positive integer, got `{v}`")));
    }
    Ok(spec.dim.unwrap_or(DEFAULT_DIM_CAP))
}

pub fn parse_model(text: &str, options: LoadOptions) -> Result<LoadedModel, ModelError> {
    let spec: ModelSpec = serde_json::from_str(text).map_err(|e| ModelError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if spec.schema != SCHEMA {
        return Err(invalid(format!(
            "unsupported schema `{}`, expected `{SCHEMA}`",
            spec.schema
        )));
    }
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    let tol = options.tol.or(spec.tolerance).unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol < 1.0) {
        return Err(invalid(format!("tolerance {tol} outside (0, 1)")));
    }
    let group = build_group(&spec.group)?;
    let vertex_ids: Vec<&str> = spec.graph.vertices.iter().map(String::as_str).collect();
    let edges: Vec<(&str, &str, &str)> = spec
        .graph
        .edges
        .iter()
        .map(|e| (e.id.as_str(), e.source.as_str(), e.target.as_str()))
        .collect();
    let graph = Graph::new(&vertex_ids, &edges)?;
    let surfaces = spec
        .surfaces
        .iter()
        .map(|s| build_surface(&graph, s))
        .collect::<Result<Vec<_>, _>>()?;
    let cap = dim_cap(&options, &spec.caps)?;
    let model = HolonomyModel::with_cap(graph, group, surfaces, cap)?;

    let mut names = BTreeSet::new();
    let mut generators = Vec::new();
    for c in &spec.config_functions {
        if !names.insert(c.name.clone()) {
            return Err(invalid(format!("duplicate generator name `{}`", c.name)));
        }
        let table = config_table(&model, c)?;
        generators.push(model.config_generator(c.name.clone(), table)?);
    }
    for w in &spec.weyl_generators {
        if !names.insert(w.name.clone()) {
            return Err(invalid(format!("duplicate generator name `{}`", w.name)));
        }
        let s = surface_ref(&model, &w.surface, &w.name)?;
        let field = build_field(&model, &w.field)?;
        generators.push(model.weyl_generator(w.name.clone(), s, field)?);
    }
    let mats: Vec<ComplexMatrix> = generators.iter().map(|g| g.matrix.clone()).collect();
    let ambient = generate_star_algebra(&mats, model.hilbert_dim(), tol)?;

    let mut projections = Vec::new();
    for p in &spec.projections {
        if projections
            .iter()
            .any(|(n, _): &(String, ComplexMatrix)| n == &p.name)
        {
            return Err(invalid(format!("duplicate projection name `{}`", p.name)));
        }
        projections.push((p.name.clone(), build_projection(&model, p, tol)?));
    }

    let automorphisms = match &spec.automorphisms {
        AutomorphismsSpec::Keyword(k) if k == "auto" => automorphisms(&model)?,
        AutomorphismsSpec::Keyword(k) if k == "none" => Vec::new(),
        AutomorphismsSpec::Keyword(k) => {
            return Err(invalid(format!("unknown automorphisms keyword `{k}`")))
        }
        AutomorphismsSpec::List(list) => {
            let mut out = vec![GraphAutomorphism::identity(&model)];
            for a in list {
                out.push(build_automorphism(&model, a)?);
            }
            out
        }
    };

    let mut gauges = Vec::new();
    for item in &spec.gauges {
        match item {
            GaugeItem::Keyword(k) if k == "constants" => gauges.extend(constant_gauges(&model)),
            GaugeItem::Keyword(k) if k == "identity" => gauges.push(GaugeTransformation {
                field: GroupValuedField::identity(model.group(), model.graph().vertex_count()),
            }),
            GaugeItem::Keyword(k) if k.starts_with("random:") => {
                let parts: Vec<&str> = k.split(':').collect();
                let parsed = match parts.as_slice() {
                    [_, n] => n.parse::<usize>().ok().map(|n| (n, 0)),
                    [_, n, s] => n.parse::<usize>().ok().zip(s.parse::<u64>().ok()),
                    _ => None,
                };
                let (n, seed) = parsed.ok_or_else(|| {
                    invalid(format!("gauge spec `{k}` is not random:N or random:N:SEED"))
                })?;
                gauges.extend(random_gauges(&model, n, options.seed.unwrap_or(seed)));
            }
            GaugeItem::Keyword(k) => return Err(invalid(format!("unknown gauge keyword `{k}`"))),
            GaugeItem::Field(map) => {
                let field = build_field(&model, &FieldSpec::Map(map.clone()))?;
                gauges.push(GaugeTransformation::new(&model, field)?);
            }
        }
    }

    let chain = spec
        .chain
        .as_ref()
        .map(|c| -> Result<ChainSetup, ModelError> {
            let surfaces = c
                .surfaces
                .iter()
                .map(|s| surface_ref(&model, s, "chain"))
                .collect::<Result<Vec<_>, _>>()?;
            let values = if c.values.is_empty() {
                vec![C64::new(1.0, 0.0); surfaces.len()]
            } else if c.values.len() == surfaces.len() {
                c.values.iter().map(|v| v.value()).collect()
            } else {
                return Err(invalid(format!(
                    "chain has {} surfaces but {} values",
                    surfaces.len(),
                    c.values.len()
                )));
            };
            Ok(ChainSetup {
                surfaces,
                field: build_field(&model, &c.field)?,
                values,
            })
        })
        .transpose()?;

    Ok(LoadedModel {
        name: spec.name.clone(),
        digest,
        tol,
        closed_set_cap: spec.caps.closed_sets.unwrap_or(DEFAULT_CLOSED_SET_CAP),
        model,
        generators,
        ambient,
        projections,
        automorphisms,
        gauges,
        chain,
    })
}

fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, ModelError> {
    match spec {
        GroupSpec::Builtin(name) => Ok(FiniteGroup::builtin(name)?),
        GroupSpec::Table {
            name,
            labels,
            table,
        } => {
            let index = |l: &str| {
                labels
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| invalid(format!("Cayley table entry `{l}` is not an element")))
            };
            let rows = table
                .iter()
                .map(|row| row.iter().map(|l| index(l)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FiniteGroup::from_cayley(
                name.clone().unwrap_or_else(|| "G".into()),
                labels.clone(),
                rows,
            )?)
        }
    }
}

fn edge_ref(graph: &Graph, id: &str, owner: &str) -> Result<usize, ModelError> {
    graph
        .edge(id)
        .ok_or_else(|| invalid(format!("`{owner}` refers to unknown edge `{id}`")))
}

fn vertex_ref(graph: &Graph, id: &str, owner: &str) -> Result<usize, ModelError> {
    graph
        .vertex(id)
        .ok_or_else(|| invalid(format!("`{owner}` refers to unknown vertex `{id}`")))
}

fn element_ref(group: &FiniteGroup, label: &str) -> Result<usize, ModelError> {
    group
        .element(label)
        .ok_or_else(|| invalid(format!("`{label}` is not an element of {}", group.name())))
}

fn surface_ref(model: &HolonomyModel, id: &str, owner: &str) -> Result<usize, ModelError> {
    model
        .surface_index(id)
        .ok_or_else(|| invalid(format!("`{owner}` refers to unknown surface `{id}`")))
}

fn build_surface(graph: &Graph, s: &SurfaceSpec) -> Result<Surface, ModelError> {
    let n = graph.edge_count();
    let mut sigma = vec![(0, 0); n];
    let mut interior = vec![false; n];
    for (e, [a, b]) in &s.sigma {
        sigma[edge_ref(graph, e, &s.id)?] = (*a, *b);
    }
    for e in &s.interior {
        interior[edge_ref(graph, e, &s.id)?] = true;
    }
    Ok(Surface::new(s.id.clone(), sigma, interior)?)
}

fn build_field(model: &HolonomyModel, spec: &FieldSpec) -> Result<GroupValuedField, ModelError> {
    let g = model.group();
    let n = model.graph().vertex_count();
    match spec {
        FieldSpec::Constant(label) => Ok(GroupValuedField::constant(n, element_ref(g, label)?)),
        FieldSpec::Map(map) => {
            let mut out = GroupValuedField::identity(g, n);
            for (v, label) in map {
                out.0[vertex_ref(model.graph(), v, "field")?] = element_ref(g, label)?;
            }
            Ok(out)
        }
    }
}

fn parse_step(graph: &Graph, token: &str, owner: &str) -> Result<Step, ModelError> {
    match token.strip_suffix("^-1") {
        Some(id) => Ok(Step::backward(edge_ref(graph, id, owner)?)),
        None => Ok(Step::forward(edge_ref(graph, token, owner)?)),
    }
}

fn config_table(model: &HolonomyModel, c: &ConfigSpec) -> Result<Vec<C64>, ModelError> {
    let given = [
        c.table.is_some(),
        c.indicator.is_some(),
        c.holonomy.is_some(),
    ];
    if given.iter().filter(|&&x| x).count() != 1 {
        return Err(invalid(format!(
            "configuration function `{}` needs exactly one of table, indicator, holonomy",
            c.name
        )));
    }
    if let Some(t) = &c.table {
        if t.len() != model.hilbert_dim() {
            return Err(invalid(format!(
                "table of `{}` has {} entries, expected {}",
                c.name,
                t.len(),
                model.hilbert_dim()
            )));
        }
        return Ok(t.iter().map(|v| v.value()).collect());
    }
    if let Some(ind) = &c.indicator {
        let graph = model.graph();
        let mut values = vec![None; graph.edge_count()];
        for (e, label) in ind {
            values[edge_ref(graph, e, &c.name)?] = Some(element_ref(model.group(), label)?);
        }
        let values: Option<Vec<usize>> = values.into_iter().collect();
        let values = values
            .ok_or_else(|| invalid(format!("indicator `{}` must assign every edge", c.name)))?;
        return Ok(model.indicator_table(&Connection(values)));
    }
    let h = c.holonomy.as_ref().expect("one variant is present");
    let graph = model.graph();
    let path = if h.path.is_empty() {
        PathWord::empty(graph, vertex_ref(graph, &h.start, &c.name)?)?
    } else {
        let steps = h
            .path
            .iter()
            .map(|t| parse_step(graph, t, &c.name))
            .collect::<Result<Vec<_>, _>>()?;
        let p = PathWord::new(graph, steps)?;
        if p.start() != vertex_ref(graph, &h.start, &c.name)? {
            return Err(invalid(format!(
                "path of `{}` does not start at `{}`",
                c.name, h.start
            )));
        }
        p
    };
    let values: Vec<C64> = h.values.iter().map(|v| v.value()).collect();
    Ok(model.holonomy_table(&path, &values)?)
}

fn build_projection(
    model: &HolonomyModel,
    p: &ProjectionSpec,
    tol: f64,
) -> Result<ComplexMatrix, ModelError> {
    let d = model.hilbert_dim();
    let m = match (&p.diagonal, &p.vector) {
        (Some(diag), None) => {
            if diag.len() != d {
                return Err(invalid(format!(
                    "projection `{}` needs {d} diagonal entries",
                    p.name
                )));
            }
            ComplexMatrix::from_diagonal(
                &diag.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>(),
            )
        }
        (None, Some(v)) => {
            if v.len() != d {
                return Err(invalid(format!(
                    "projection `{}` needs a vector of length {d}",
                    p.name
                )));
            }
            let z: Vec<C64> = v.iter().map(|x| x.value()).collect();
            let norm = z.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(invalid(format!(
                    "projection `{}` has a zero vector",
                    p.name
                )));
            }
            ComplexMatrix::from_fn(d, |i, j| z[i] * z[j].conj() / (norm * norm))
        }
        _ => {
            return Err(invalid(format!(
                "projection `{}` needs exactly one of diagonal, vector",
                p.name
            )))
        }
    };
    if !m.is_projection(tol * 1e3) {
        return Err(invalid(format!("`{}` is not a projection", p.name)));
    }
    Ok(m)
}

fn build_automorphism(
    model: &HolonomyModel,
    a: &AutomorphismSpec,
) -> Result<GraphAutomorphism, ModelError> {
    let g = model.graph();
    let mut vertex_perm = vec![usize::MAX; g.vertex_count()];
    for (from, to) in &a.vertices {
        vertex_perm[vertex_ref(g, from, "automorphism")?] = vertex_ref(g, to, "automorphism")?;
    }
    // unlisted vertices are fixed
    for (v, slot) in vertex_perm.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = v;
        }
    }
    let mut edge_map: Vec<(usize, bool)> = (0..g.edge_count()).map(|e| (e, false)).collect();
    for (from, to) in &a.edges {
        let step = parse_step(g, to, "automorphism")?;
        edge_map[edge_ref(g, from, "automorphism")?] = (step.edge, step.inverse);
    }
    Ok(GraphAutomorphism::new(model, vertex_perm, edge_map)?)
}
