//! Directed multigraphs, paths, the prefix order, and bounded path
//! enumeration.
//!
//! Vertex and edge identifiers are opaque strings. They are interned into
//! dense indices sorted lexicographically, so every enumeration in this
//! crate is reproducible: paths are listed by length, then lexicographically
//! on their identifiers.

use std::collections::HashSet;

use thiserror::Error;

/// Interned vertex handle. Index order equals lexicographic order of names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub(crate) u32);

/// Interned edge handle. Index order equals lexicographic order of names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate identifier {0}")]
    DuplicateIdentifier(String),
    #[error("dangling endpoint {vertex} on edge {edge}")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("edge sequence does not compose into a path")]
    BrokenEdgeChain,
}

/// A finite directed multigraph with identified source/range maps.
///
/// Immutable after construction; all query operations are pure.
#[derive(Debug, Clone)]
pub struct Graph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    edge_ends: Vec<(VertexId, VertexId)>,
    out_edges: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Validates a raw description and builds the graph.
    ///
    /// Each edge is given as `(id, src, dst)`. Fails on duplicate
    /// identifiers (within the vertex or the edge namespace) and on edge
    /// endpoints that name no vertex.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph, GraphError>
    where
        V: IntoIterator<Item = String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut vertex_names: Vec<String> = vertices.into_iter().collect();
        vertex_names.sort();
        for pair in vertex_names.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::DuplicateIdentifier(pair[0].clone()));
            }
        }

        let mut edge_list: Vec<(String, String, String)> = edges.into_iter().collect();
        edge_list.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in edge_list.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(GraphError::DuplicateIdentifier(pair[0].0.clone()));
            }
        }

        let lookup = |name: &str, edge: &str| -> Result<VertexId, GraphError> {
            vertex_names
                .binary_search_by(|v| v.as_str().cmp(name))
                .map(|i| VertexId(i as u32))
                .map_err(|_| GraphError::DanglingEndpoint {
                    edge: edge.to_string(),
                    vertex: name.to_string(),
                })
        };

        let mut edge_names = Vec::with_capacity(edge_list.len());
        let mut edge_ends = Vec::with_capacity(edge_list.len());
        let mut out_edges = vec![Vec::new(); vertex_names.len()];
        for (idx, (id, src, dst)) in edge_list.into_iter().enumerate() {
            let s = lookup(&src, &id)?;
            let r = lookup(&dst, &id)?;
            out_edges[s.index()].push(EdgeId(idx as u32));
            edge_names.push(id);
            edge_ends.push((s, r));
        }

        Ok(Graph {
            vertex_names,
            edge_names,
            edge_ends,
            out_edges,
        })
    }

    /// One vertex `v` with `loops` loop edges `p0, p1, ...`.
    pub fn rose(loops: u32) -> Graph {
        let width = digits(loops.saturating_sub(1) as usize);
        let edges = (0..loops).map(|i| {
            let id = format!("p{:0width$}", i, width = width);
            (id, "v".to_string(), "v".to_string())
        });
        Graph::new(["v".to_string()], edges).expect("rose graph is well formed")
    }

    /// The truncated ladder: vertices `1..2N`, one edge `(2n-1) -> 2n` per
    /// rung `n`. Vertex `2n-1` is the source and `2n` the range of rung `n`.
    pub fn ladder(rungs: u32) -> Graph {
        let vw = digits(2 * rungs as usize);
        let ew = digits(rungs as usize);
        let vertices = (1..=2 * rungs).map(|i| format!("{:0vw$}", i, vw = vw));
        let edges = (1..=rungs).map(|n| {
            (
                format!("e{:0ew$}", n, ew = ew),
                format!("{:0vw$}", 2 * n - 1, vw = vw),
                format!("{:0vw$}", 2 * n, vw = vw),
            )
        });
        Graph::new(vertices, edges).expect("ladder graph is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_names.len() as u32).map(EdgeId)
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_names
            .binary_search_by(|v| v.as_str().cmp(name))
            .ok()
            .map(|i| VertexId(i as u32))
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_names
            .binary_search_by(|e| e.as_str().cmp(name))
            .ok()
            .map(|i| EdgeId(i as u32))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.index()]
    }

    pub fn src(&self, e: EdgeId) -> VertexId {
        self.edge_ends[e.index()].0
    }

    pub fn dst(&self, e: EdgeId) -> VertexId {
        self.edge_ends[e.index()].1
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    /// Builds a path from a composable edge sequence; the start vertex is
    /// the source of the first edge.
    pub fn path_from_edges(&self, edges: &[EdgeId]) -> Result<Path, GraphError> {
        let Some(first) = edges.first() else {
            return Err(GraphError::BrokenEdgeChain);
        };
        let path = Path {
            start: self.src(*first),
            edges: edges.to_vec(),
        };
        if self.is_valid_path(&path) {
            Ok(path)
        } else {
            Err(GraphError::BrokenEdgeChain)
        }
    }

    /// Builds a path from identifier names: a start vertex plus edge names.
    pub fn path(&self, start: &str, edges: &[&str]) -> Result<Path, GraphError> {
        let start = self
            .vertex(start)
            .ok_or_else(|| GraphError::UnknownVertex(start.to_string()))?;
        let edges = edges
            .iter()
            .map(|name| {
                self.edge(name)
                    .ok_or_else(|| GraphError::UnknownEdge(name.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let path = Path { start, edges };
        if self.is_valid_path(&path) {
            Ok(path)
        } else {
            Err(GraphError::BrokenEdgeChain)
        }
    }

    pub fn is_valid_path(&self, p: &Path) -> bool {
        if p.start.index() >= self.vertex_count() {
            return false;
        }
        let mut at = p.start;
        for &e in &p.edges {
            if e.index() >= self.edge_count() || self.src(e) != at {
                return false;
            }
            at = self.dst(e);
        }
        true
    }

    /// The range of a path: its start vertex when empty, otherwise the
    /// destination of its last edge.
    pub fn range(&self, p: &Path) -> VertexId {
        match p.edges.last() {
            Some(&e) => self.dst(e),
            None => p.start,
        }
    }

    /// Path composition. Defined exactly when `range(p) = source(q)`.
    pub fn concat(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.range(p) != q.start {
            return None;
        }
        let mut edges = Vec::with_capacity(p.edges.len() + q.edges.len());
        edges.extend_from_slice(&p.edges);
        edges.extend_from_slice(&q.edges);
        Some(Path {
            start: p.start,
            edges,
        })
    }

    /// If `q = p k` for some path `k`, returns `k` (which starts at
    /// `range(p)`); otherwise `None`. A vertex path is a prefix of `q`
    /// exactly when it is `q`'s source.
    pub fn strip_prefix(&self, p: &Path, q: &Path) -> Option<Path> {
        if q.start != p.start || !q.edges.starts_with(&p.edges) {
            return None;
        }
        Some(Path {
            start: self.range(p),
            edges: q.edges[p.edges.len()..].to_vec(),
        })
    }

    /// The prefix order on paths: `a <= b` iff `b` is a prefix of `a`, so
    /// extensions sit below their prefixes.
    pub fn path_leq(&self, a: &Path, b: &Path) -> bool {
        self.strip_prefix(b, a).is_some()
    }

    /// All prefixes of `p`, from the source vertex to `p` itself.
    pub fn prefixes(&self, p: &Path) -> Vec<Path> {
        (0..=p.edges.len())
            .map(|n| Path {
                start: p.start,
                edges: p.edges[..n].to_vec(),
            })
            .collect()
    }

    /// All paths of length at most `max_len`, each exactly once, ordered by
    /// length and then lexicographically on identifiers: vertex name for
    /// the empty paths, edge-name sequence otherwise.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = self.vertices().map(Path::vertex).collect();
        let mut level: Vec<Path> = all.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &level {
                for &e in self.out_edges(self.range(p)) {
                    let mut edges = Vec::with_capacity(p.edges.len() + 1);
                    edges.extend_from_slice(&p.edges);
                    edges.push(e);
                    next.push(Path {
                        start: p.start,
                        edges,
                    });
                }
            }
            // Children arrive grouped by parent vertex; the contract is
            // lexicographic on the edge sequences themselves.
            next.sort_by(|p, q| p.edges.cmp(&q.edges));
            all.extend(next.iter().cloned());
            level = next;
            if level.is_empty() {
                break;
            }
        }
        debug_assert_eq!(
            all.iter().collect::<HashSet<_>>().len(),
            all.len(),
            "path enumeration must be duplicate-free"
        );
        all
    }

    /// Human-readable label: the vertex name for empty paths, otherwise the
    /// edge names joined by spaces.
    pub fn format_path(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertex_name(p.start).to_string()
        } else {
            p.edges
                .iter()
                .map(|&e| self.edge_name(e))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

fn digits(n: usize) -> usize {
    n.max(1).to_string().len()
}

/// A start vertex plus a composable (possibly empty) edge sequence.
///
/// The start vertex is carried explicitly so that length-zero paths at
/// different vertices are distinct values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    /// The length-zero path at `v`.
    pub fn vertex(v: VertexId) -> Path {
        Path {
            start: v,
            edges: Vec::new(),
        }
    }

    pub(crate) fn from_parts(start: VertexId, edges: Vec<EdgeId>) -> Path {
        Path { start, edges }
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}
