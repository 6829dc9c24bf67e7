//! Finite directed graphs without sinks, their finite paths, and
//! eventually periodic infinite paths.
//!
//! Paths are read left to right: the range of edge `i` is the source of
//! edge `i + 1`. Vertices and edges are interned as dense indices; the
//! textual names only matter at the parsing and printing boundary.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("vertex `{0}` is a sink")]
    Sink(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("cuntz graph needs n >= 2, got {0}")]
    CuntzTooSmall(usize),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("edges `{0}` and `{1}` are not composable")]
    NotComposable(String, String),
    #[error("cycle must be a nonempty closed path")]
    BadCycle,
    #[error("prefix does not end where the cycle starts")]
    PrefixCycleMismatch,
    #[error("points are not tail equivalent with lag {0}")]
    NotTailEquivalent(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct EdgeData {
    name: String,
    source: VertexId,
    range: VertexId,
}

/// A finite directed graph in which every vertex emits at least one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<EdgeData>,
    out: Vec<Vec<EdgeId>>,
    vertex_lookup: HashMap<String, VertexId>,
    edge_lookup: HashMap<String, EdgeId>,
}

impl Graph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph, GraphError>
    where
        V: IntoIterator<Item = String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut names = Vec::new();
        let mut vertex_lookup = HashMap::new();
        for v in vertices {
            if vertex_lookup.insert(v.clone(), names.len() as VertexId).is_some() {
                return Err(GraphError::DuplicateVertex(v));
            }
            names.push(v);
        }
        if names.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut edge_data = Vec::new();
        let mut edge_lookup = HashMap::new();
        let mut out = vec![Vec::new(); names.len()];
        for (id, s, r) in edges {
            let source = *vertex_lookup.get(&s).ok_or(GraphError::UnknownVertex(s))?;
            let range = *vertex_lookup.get(&r).ok_or(GraphError::UnknownVertex(r))?;
            let idx = edge_data.len() as EdgeId;
            if edge_lookup.insert(id.clone(), idx).is_some() {
                return Err(GraphError::DuplicateEdge(id));
            }
            out[source as usize].push(idx);
            edge_data.push(EdgeData { name: id, source, range });
        }
        if let Some(v) = out.iter().position(Vec::is_empty) {
            return Err(GraphError::Sink(names[v].clone()));
        }
        Ok(Graph { vertices: names, edges: edge_data, out, vertex_lookup, edge_lookup })
    }

    /// One vertex `v` with loops labelled `1..=n`.
    pub fn cuntz(n: usize) -> Result<Graph, GraphError> {
        if n < 2 {
            return Err(GraphError::CuntzTooSmall(n));
        }
        Graph::new(
            ["v".to_string()],
            (1..=n).map(|i| (i.to_string(), "v".to_string(), "v".to_string())),
        )
    }

    /// Parses the line format `vertex <id>` / `edge <id> <source> <range>`.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let syntax = |message: &str| GraphError::Syntax { line: i + 1, message: message.to_string() };
            match words.as_slice() {
                ["vertex", id] => vertices.push(id.to_string()),
                ["edge", id, s, r] => edges.push((id.to_string(), s.to_string(), r.to_string())),
                ["vertex", ..] => return Err(syntax("expected `vertex <id>`")),
                ["edge", ..] => return Err(syntax("expected `edge <id> <source> <range>`")),
                _ => return Err(syntax("expected `vertex` or `edge`")),
            }
        }
        Graph::new(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertices.len() as VertexId
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        0..self.edges.len() as EdgeId
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v as usize]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e as usize].name
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_lookup.get(name).copied()
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e as usize].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e as usize].range
    }

    /// Edges emitted by `v`, in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v as usize]
    }

    /// Whether the graph has a single vertex (so `@` is unambiguous).
    pub fn is_single_vertex(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn empty_path(&self, v: VertexId) -> Path {
        Path { edges: Vec::new(), source: v, range: v }
    }

    pub fn path(&self, edges: &[EdgeId]) -> Result<Path, GraphError> {
        let Some((&first, _)) = edges.split_first() else {
            return Err(GraphError::Empty);
        };
        for w in edges.windows(2) {
            if self.range(w[0]) != self.source(w[1]) {
                return Err(GraphError::NotComposable(
                    self.edge_name(w[0]).to_string(),
                    self.edge_name(w[1]).to_string(),
                ));
            }
        }
        Ok(Path {
            edges: edges.to_vec(),
            source: self.source(first),
            range: self.range(*edges.last().unwrap()),
        })
    }

    /// Resolves edge names to a path.
    pub fn path_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path, GraphError> {
        let ids = names
            .iter()
            .map(|n| self.edge_by_name(n.as_ref()).ok_or_else(|| GraphError::UnknownEdge(n.as_ref().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        self.path(&ids)
    }

    pub fn fmt_path(&self, p: &Path, explicit_vertex: bool) -> String {
        if p.edges.is_empty() {
            if explicit_vertex || !self.is_single_vertex() {
                format!("@{}", self.vertex_name(p.source))
            } else {
                "@".to_string()
            }
        } else {
            p.edges.iter().map(|&e| self.edge_name(e)).collect::<Vec<_>>().join(".")
        }
    }
}

/// A finite path. Empty paths remember their vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    edges: Vec<EdgeId>,
    source: VertexId,
    range: VertexId,
}

impl Path {
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    pub fn concat(&self, other: &Path) -> Result<Path, GraphError> {
        if self.range != other.source {
            return Err(GraphError::NotComposable(format!("{:?}", self.edges), format!("{:?}", other.edges)));
        }
        Ok(self.concat_unchecked(other))
    }

    pub(crate) fn concat_unchecked(&self, other: &Path) -> Path {
        debug_assert_eq!(self.range, other.source);
        let mut edges = Vec::with_capacity(self.edges.len() + other.edges.len());
        edges.extend_from_slice(&self.edges);
        edges.extend_from_slice(&other.edges);
        Path { edges, source: self.source, range: other.range }
    }

    /// Appends one edge; caller guarantees `source(e) == self.range()`.
    pub(crate) fn push_unchecked(&self, graph: &Graph, e: EdgeId) -> Path {
        debug_assert_eq!(graph.source(e), self.range);
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        edges.extend_from_slice(&self.edges);
        edges.push(e);
        Path { edges, source: self.source, range: graph.range(e) }
    }

    /// Drops the last edge, if any.
    pub(crate) fn parent(&self, graph: &Graph) -> Option<Path> {
        let (&last, rest) = self.edges.split_last()?;
        Some(Path { edges: rest.to_vec(), source: self.source, range: graph.source(last) })
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.source == other.source && other.edges.starts_with(&self.edges)
    }

    /// Returns `τ` with `self = prefix·τ`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if !prefix.is_prefix_of(self) {
            return None;
        }
        Some(Path { edges: self.edges[prefix.len()..].to_vec(), source: prefix.range, range: self.range })
    }

    /// All paths `self·τ` with `|τ| = m`, in lexicographic edge order.
    pub fn extensions_of_length(&self, graph: &Graph, m: usize) -> Vec<Path> {
        let mut frontier = vec![self.clone()];
        for _ in 0..m {
            frontier = frontier
                .iter()
                .flat_map(|p| graph.out_edges(p.range).iter().map(move |&e| p.push_unchecked(graph, e)))
                .collect();
        }
        frontier
    }
}

/// The infinite path `prefix · cycle^∞`, kept in a canonical representation:
/// the cycle is primitive and the prefix is as short as possible.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPoint {
    prefix: Path,
    cycle: Path,
}

impl BoundaryPoint {
    pub fn new(graph: &Graph, prefix: Path, cycle: Path) -> Result<BoundaryPoint, GraphError> {
        if cycle.is_empty() || cycle.source != cycle.range {
            return Err(GraphError::BadCycle);
        }
        if prefix.range != cycle.source {
            return Err(GraphError::PrefixCycleMismatch);
        }
        Ok(BoundaryPoint { prefix, cycle }.normalized(graph))
    }

    pub fn prefix(&self) -> &Path {
        &self.prefix
    }

    pub fn cycle(&self) -> &Path {
        &self.cycle
    }

    pub fn source(&self) -> VertexId {
        self.prefix.source
    }

    fn normalized(mut self, graph: &Graph) -> BoundaryPoint {
        let len = self.cycle.len();
        let period = (1..=len)
            .find(|&p| len.is_multiple_of(p) && (p..len).all(|i| self.cycle.edges[i] == self.cycle.edges[i - p]))
            .unwrap_or(len);
        self.cycle.edges.truncate(period);
        while let (Some(a), Some(b)) = (self.prefix.last_edge(), self.cycle.last_edge()) {
            if a != b {
                break;
            }
            self.prefix = self.prefix.parent(graph).expect("nonempty prefix");
            self.cycle.edges.rotate_right(1);
            let v = graph.source(self.cycle.edges[0]);
            self.cycle.source = v;
            self.cycle.range = v;
        }
        self
    }

    /// Edge at position `i` of the infinite path.
    pub fn edge_at(&self, i: usize) -> EdgeId {
        let p = self.prefix.len();
        if i < p {
            self.prefix.edges[i]
        } else {
            self.cycle.edges[(i - p) % self.cycle.len()]
        }
    }

    /// Whether the finite path `p` is an initial segment of this point.
    pub fn starts_with(&self, p: &Path) -> bool {
        p.source == self.source() && p.edges.iter().enumerate().all(|(i, &e)| self.edge_at(i) == e)
    }

    /// Drops the first `a` edges.
    pub fn shift(&self, graph: &Graph, a: usize) -> BoundaryPoint {
        let p = self.prefix.len();
        if a <= p {
            let prefix = Path {
                edges: self.prefix.edges[a..].to_vec(),
                source: if a == p { self.prefix.range } else { graph.source(self.prefix.edges[a]) },
                range: self.prefix.range,
            };
            return BoundaryPoint { prefix, cycle: self.cycle.clone() }.normalized(graph);
        }
        let mut cycle = self.cycle.clone();
        let shift = (a - p) % cycle.len();
        cycle.edges.rotate_left(shift);
        let v = graph.source(cycle.edges[0]);
        cycle.source = v;
        cycle.range = v;
        BoundaryPoint { prefix: graph.empty_path(v), cycle }
    }

    /// Searches for `a - b = lag` with `shift(self, a) == shift(other, b)`.
    pub fn tail_lag_witness(&self, graph: &Graph, other: &BoundaryPoint, lag: i64) -> Option<(usize, usize)> {
        let p = self.prefix.len() as i64;
        let q = other.prefix.len() as i64;
        let start = p.max(q + lag).max(lag).max(0);
        (start..start + self.cycle.len() as i64).find_map(|a| {
            let b = a - lag;
            let (a, b) = (a as usize, b as usize);
            (self.shift(graph, a) == other.shift(graph, b)).then_some((a, b))
        })
    }
}

/// A groupoid element `(x, k, y)`; construction enforces the tail condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupoidPoint {
    pub x: BoundaryPoint,
    pub k: i64,
    pub y: BoundaryPoint,
}

impl GroupoidPoint {
    pub fn new(graph: &Graph, x: BoundaryPoint, k: i64, y: BoundaryPoint) -> Result<GroupoidPoint, GraphError> {
        if x.tail_lag_witness(graph, &y, k).is_none() {
            return Err(GraphError::NotTailEquivalent(k));
        }
        Ok(GroupoidPoint { x, k, y })
    }

    /// The unit `(x, 0, x)`.
    pub fn unit(x: BoundaryPoint) -> GroupoidPoint {
        GroupoidPoint { y: x.clone(), x, k: 0 }
    }

    pub fn inverse(&self) -> GroupoidPoint {
        GroupoidPoint { x: self.y.clone(), k: -self.k, y: self.x.clone() }
    }

    pub fn is_unit(&self) -> bool {
        self.k == 0 && self.x == self.y
    }
}

pub struct DisplayPath<'a>(pub &'a Graph, pub &'a Path);

impl fmt::Display for DisplayPath<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.fmt_path(self.1, false))
    }
}
