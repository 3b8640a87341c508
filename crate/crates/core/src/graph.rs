//! Finite graphs of independent edges and reduced edge words.

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from vertex ids and `(edge id, source id, target id)`.
    pub fn new<V, E>(vertices: &[V], edges: &[(E, V, V)]) -> Result<Self>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidGraph(format!("duplicate vertex id `{v}`")));
            }
        }
        let lookup = |v: &str| {
            vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex `{v}`")))
        };
        let mut out = Vec::with_capacity(edges.len());
        for (id, s, t) in edges {
            let id = id.as_ref().to_string();
            if out.iter().any(|e: &Edge| e.id == id) {
                return Err(Error::InvalidGraph(format!("duplicate edge id `{id}`")));
            }
            out.push(Edge {
                id,
                source: lookup(s.as_ref())?,
                target: lookup(t.as_ref())?,
            });
        }
        Ok(Self {
            vertices,
            edges: out,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn edge(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }
}

/// One traversal of an edge, forwards or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub edge: usize,
    pub inverse: bool,
}

impl Step {
    pub fn forward(edge: usize) -> Self {
        Self {
            edge,
            inverse: false,
        }
    }

    pub fn backward(edge: usize) -> Self {
        Self {
            edge,
            inverse: true,
        }
    }

    fn start(&self, g: &Graph) -> usize {
        let e = &g.edges[self.edge];
        if self.inverse {
            e.target
        } else {
            e.source
        }
    }

    fn end(&self, g: &Graph) -> usize {
        let e = &g.edges[self.edge];
        if self.inverse {
            e.source
        } else {
            e.target
        }
    }
}

/// A composable, freely reduced word in edges and their formal inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWord {
    start: usize,
    end: usize,
    steps: Vec<Step>,
}

impl PathWord {
    /// The trivial path at `vertex`.
    pub fn empty(graph: &Graph, vertex: usize) -> Result<Self> {
        if vertex >= graph.vertex_count() {
            return Err(Error::InvalidPath(format!("vertex {vertex} out of range")));
        }
        Ok(Self {
            start: vertex,
            end: vertex,
            steps: Vec::new(),
        })
    }

    /// Validates composability and free reduction. An empty `steps` list
    /// needs an explicit start, so this constructor rejects it.
    pub fn new(graph: &Graph, steps: Vec<Step>) -> Result<Self> {
        let first = steps
            .first()
            .ok_or_else(|| Error::InvalidPath("empty word needs a start vertex".into()))?;
        for s in &steps {
            if s.edge >= graph.edge_count() {
                return Err(Error::InvalidPath(format!("edge {} out of range", s.edge)));
            }
        }
        for (i, w) in steps.windows(2).enumerate() {
            if w[0].end(graph) != w[1].start(graph) {
                return Err(Error::InvalidPath(format!(
                    "steps {i} and {} are not composable",
                    i + 1
                )));
            }
            if w[0].edge == w[1].edge && w[0].inverse != w[1].inverse {
                return Err(Error::InvalidPath(format!(
                    "retraced edge `{}` at step {i}",
                    graph.edges[w[0].edge].id
                )));
            }
        }
        Ok(Self {
            start: first.start(graph),
            end: steps
                .last()
                .map(|s| s.end(graph))
                .unwrap_or(first.start(graph)),
            steps,
        })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_loop(&self) -> bool {
        self.start == self.end
    }
}
