//! Simple undirected graphs, the standard families used throughout, induced
//! subgraphs and the linear-forest predicate.
//!
//! Complete bipartite graphs follow a fixed layout: the `X` part
//! `x_1..x_n` occupies vertex indices `0..n`, the `Y` part `y_1..y_m`
//! occupies `n..n+m`, and edge `(x_i, y_j)` has index `(i-1)*m + (j-1)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::search::{self, SearchBudget};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("graph must have at least one edge")]
    NoEdges,
    #[error("edge {index} is a loop at vertex {vertex}")]
    Loop { index: usize, vertex: usize },
    #[error("edge {index} ({u},{v}) duplicates an earlier edge")]
    MultiEdge { index: usize, u: usize, v: usize },
    #[error("edge {index} references vertex {vertex}, but the graph has {vertex_count} vertices")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("graph is not connected")]
    Disconnected,
    #[error("part labels: {0}")]
    BadParts(String),
    #[error("edge {index} ({u},{v}) does not join X to Y")]
    EdgeWithinPart { index: usize, u: usize, v: usize },
    #[error("{family} needs {what}, got {got}")]
    BadParameter {
        family: &'static str,
        what: &'static str,
        got: usize,
    },
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    NoSuchVertex { vertex: usize, vertex_count: usize },
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// Side of a bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Part {
    X,
    Y,
}

/// Anything with numbered vertices and a list of edges between them.
pub trait GraphLike {
    fn vertex_count(&self) -> usize;
    fn edge_list(&self) -> &[(usize, usize)];

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for &(u, v) in self.edge_list() {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }
}

/// An immutable simple connected graph with at least one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    parts: Option<Vec<Part>>,
    incident: Vec<Vec<usize>>,
    /// `(m, n)` when built as `K_{m,n}` with the canonical layout.
    bipartite_dims: Option<(usize, usize)>,
}

impl Graph {
    /// Builds a graph and checks every structural invariant.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>, parts: Option<Vec<Part>>) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        if edges.is_empty() {
            return Err(GraphError::NoEdges);
        }
        let mut seen = BTreeSet::new();
        for (index, &(u, v)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        index,
                        vertex,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::Loop { index, vertex: u });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::MultiEdge { index, u, v });
            }
        }
        if let Some(parts) = &parts {
            if parts.len() != vertex_count {
                return Err(GraphError::BadParts(format!(
                    "{} labels for {} vertices",
                    parts.len(),
                    vertex_count
                )));
            }
            for (index, &(u, v)) in edges.iter().enumerate() {
                if parts[u] == parts[v] {
                    return Err(GraphError::EdgeWithinPart { index, u, v });
                }
            }
        }
        let mut incident = vec![Vec::new(); vertex_count];
        for (e, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(e);
            incident[v].push(e);
        }
        let g = Graph {
            vertex_count,
            edges,
            parts,
            incident,
            bipartite_dims: None,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// `K_{m,n}` with `|Y| = m`, `|X| = n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Result<Self, GraphError> {
        if m == 0 {
            return Err(GraphError::BadParameter {
                family: "K_{m,n}",
                what: "m >= 1",
                got: m,
            });
        }
        if n == 0 {
            return Err(GraphError::BadParameter {
                family: "K_{m,n}",
                what: "n >= 1",
                got: n,
            });
        }
        let mut edges = Vec::with_capacity(m * n);
        for i in 0..n {
            for j in 0..m {
                edges.push((i, n + j));
            }
        }
        let mut parts = vec![Part::X; n];
        parts.extend(std::iter::repeat_n(Part::Y, m));
        let mut g = Graph::new(m + n, edges, Some(parts))?;
        g.bipartite_dims = Some((m, n));
        Ok(g)
    }

    /// Simple cycle `C_k`.
    pub fn cycle(k: usize) -> Result<Self, GraphError> {
        if k < 3 {
            return Err(GraphError::BadParameter {
                family: "cycle",
                what: "k >= 3",
                got: k,
            });
        }
        let edges = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Graph::new(k, edges, None)
    }

    /// Simple path on `k` vertices.
    pub fn path(k: usize) -> Result<Self, GraphError> {
        if k < 2 {
            return Err(GraphError::BadParameter {
                family: "path",
                what: "k >= 2",
                got: k,
            });
        }
        let edges = (0..k - 1).map(|i| (i, i + 1)).collect();
        Graph::new(k, edges, None)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Edge indices incident to `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn parts(&self) -> Option<&[Part]> {
        self.parts.as_deref()
    }

    /// Vertices labelled with `part`, ascending. Empty when unlabelled.
    pub fn part_vertices(&self, part: Part) -> Vec<usize> {
        match &self.parts {
            Some(p) => (0..self.vertex_count).filter(|&v| p[v] == part).collect(),
            None => Vec::new(),
        }
    }

    /// `(m, n)` when this graph was built by [`Graph::complete_bipartite`].
    pub fn bipartite_dims(&self) -> Option<(usize, usize)> {
        self.bipartite_dims
    }

    /// Vertex index of `x_i` (1-based `i`) in a `K_{m,n}` layout.
    pub fn x_vertex(&self, i: usize) -> Option<usize> {
        let (_, n) = self.bipartite_dims?;
        (1..=n).contains(&i).then(|| i - 1)
    }

    /// Vertex index of `y_j` (1-based `j`) in a `K_{m,n}` layout.
    pub fn y_vertex(&self, j: usize) -> Option<usize> {
        let (m, n) = self.bipartite_dims?;
        (1..=m).contains(&j).then(|| n + j - 1)
    }

    /// Edge index of `(x_i, y_j)` in a `K_{m,n}` layout, 1-based `i`, `j`.
    pub fn bipartite_edge(&self, i: usize, j: usize) -> Option<usize> {
        let (m, n) = self.bipartite_dims?;
        ((1..=n).contains(&i) && (1..=m).contains(&j)).then(|| (i - 1) * m + (j - 1))
    }

    /// Edge index joining `u` and `v`, if any.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.incident.get(u)?.iter().copied().find(|&e| {
            let (a, b) = self.edges[e];
            (a == u && b == v) || (a == v && b == u)
        })
    }

    /// Two edges sharing an endpoint.
    pub fn adjacent_edges(&self, e1: usize, e2: usize) -> bool {
        let (a, b) = self.edges[e1];
        let (c, d) = self.edges[e2];
        e1 != e2 && (a == c || a == d || b == c || b == d)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &e in &self.incident[u] {
                let (a, b) = self.edges[e];
                let w = if a == u { b } else { a };
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Proper 2-coloring of the vertices if one exists.
    pub fn bipartition(&self) -> Option<Vec<Part>> {
        let mut side: Vec<Option<Part>> = vec![None; self.vertex_count];
        side[0] = Some(Part::X);
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            let here = side[u].expect("queued vertices are labelled");
            let there = if here == Part::X { Part::Y } else { Part::X };
            for &e in &self.incident[u] {
                let (a, b) = self.edges[e];
                let w = if a == u { b } else { a };
                match side[w] {
                    None => {
                        side[w] = Some(there);
                        queue.push_back(w);
                    }
                    Some(s) if s == here => return None,
                    Some(_) => {}
                }
            }
        }
        side.into_iter().collect()
    }

    pub fn is_bipartite(&self) -> bool {
        self.parts.is_some() || self.bipartition().is_some()
    }

    /// Exact chromatic index. Bipartite graphs return `Δ` directly; other
    /// graphs decide between `Δ` and `Δ + 1` by exhaustive search.
    pub fn chromatic_index(&self, budget: &SearchBudget) -> ChromaticIndex {
        let delta = self.max_degree();
        if self.is_bipartite() {
            return ChromaticIndex::Exact(delta);
        }
        match search::proper_coloring_exists(self, delta as u32, budget) {
            Ok(Some(true)) => ChromaticIndex::Exact(delta),
            Ok(Some(false)) => ChromaticIndex::Exact(delta + 1),
            Ok(None) | Err(_) => ChromaticIndex::Unknown { lower: delta },
        }
    }

    /// Subgraph induced by `vertices`; exempt from the connectivity and
    /// non-emptiness invariants.
    pub fn induced_subgraph(&self, vertices: &BTreeSet<usize>) -> Result<Subgraph, GraphError> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.vertex_count) {
            return Err(GraphError::NoSuchVertex {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        let local: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((*local.get(&u)?, *local.get(&v)?)))
            .collect();
        Ok(Subgraph {
            original: vertices.iter().copied().collect(),
            edges,
        })
    }

    /// The whole graph viewed as a [`Subgraph`].
    pub fn as_subgraph(&self) -> Subgraph {
        Subgraph {
            original: (0..self.vertex_count).collect(),
            edges: self.edges.clone(),
        }
    }

    /// Human-readable vertex name (`x1`, `y3`, or `v5`).
    pub fn vertex_name(&self, v: usize) -> String {
        match (&self.parts, self.bipartite_dims) {
            (Some(_), Some((_, n))) if v < n => format!("x{}", v + 1),
            (Some(_), Some((_, n))) => format!("y{}", v - n + 1),
            _ => format!("v{v}"),
        }
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            parts: self.parts.as_ref().map(|_| PartsJson {
                x: self.part_vertices(Part::X),
                y: self.part_vertices(Part::Y),
            }),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, GraphError> {
        let raw: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        Graph::try_from(raw)
    }
}

impl GraphLike for Graph {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    fn edge_list(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bipartite_dims {
            Some((m, n)) => write!(f, "K_{{{m},{n}}}"),
            None => write!(f, "G(|V|={}, |E|={})", self.vertex_count, self.edges.len()),
        }
    }
}

/// Result of [`Graph::chromatic_index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChromaticIndex {
    Exact(usize),
    /// The search budget ran out before `Δ`-colorability was decided.
    Unknown {
        lower: usize,
    },
}

impl ChromaticIndex {
    pub fn exact(self) -> Option<usize> {
        match self {
            ChromaticIndex::Exact(k) => Some(k),
            ChromaticIndex::Unknown { .. } => None,
        }
    }
}

/// A possibly disconnected, possibly edgeless graph on a vertex subset of a
/// parent graph. Local vertex `i` corresponds to parent vertex `original[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub original: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphLike for Subgraph {
    fn vertex_count(&self) -> usize {
        self.original.len()
    }
    fn edge_list(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// True iff `g` is acyclic and no vertex has degree above 2, i.e. every
/// component is a simple path.
pub fn is_linear_forest<G: GraphLike + ?Sized>(g: &G) -> bool {
    if g.degrees().iter().any(|&d| d > 2) {
        return false;
    }
    // union-find cycle detection
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for &(u, v) in g.edge_list() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartsJson {
    #[serde(rename = "X")]
    pub x: Vec<usize>,
    #[serde(rename = "Y")]
    pub y: Vec<usize>,
}

/// Serialized graph: `{ "vertex_count", "edges": [[u,v],...], "parts"? }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertex_count: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<PartsJson>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(raw: GraphJson) -> Result<Self, GraphError> {
        let parts = match &raw.parts {
            None => None,
            Some(p) => {
                let mut labels: Vec<Option<Part>> = vec![None; raw.vertex_count];
                for (list, part) in [(&p.x, Part::X), (&p.y, Part::Y)] {
                    for &v in list {
                        let slot = labels
                            .get_mut(v)
                            .ok_or_else(|| GraphError::BadParts(format!("vertex {v} out of range")))?;
                        if slot.is_some() {
                            return Err(GraphError::BadParts(format!("vertex {v} labelled twice")));
                        }
                        *slot = Some(part);
                    }
                }
                let labels: Option<Vec<Part>> = labels.into_iter().collect();
                Some(labels.ok_or_else(|| GraphError::BadParts("some vertex is unlabelled".into()))?)
            }
        };
        let edges = raw.edges.iter().map(|&[u, v]| (u, v)).collect();
        let mut g = Graph::new(raw.vertex_count, edges, parts)?;
        g.bipartite_dims = detect_bipartite_layout(&g);
        Ok(g)
    }
}

/// Recognizes the canonical `K_{m,n}` layout so that JSON round trips keep
/// `(x_i, y_j)` addressing.
fn detect_bipartite_layout(g: &Graph) -> Option<(usize, usize)> {
    let parts = g.parts.as_ref()?;
    let n = parts.iter().take_while(|&&p| p == Part::X).count();
    let m = g.vertex_count - n;
    if n == 0 || m == 0 || parts[n..].iter().any(|&p| p != Part::Y) || g.edges.len() != m * n {
        return None;
    }
    let canonical = (0..n).flat_map(|i| (0..m).map(move |j| (i, n + j)));
    g.edges.iter().zip(canonical).all(|(&e, c)| e == c).then_some((m, n))
}
