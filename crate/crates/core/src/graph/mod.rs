//! Finite directed multigraphs and the combinatorial predicates used to
//! classify their Leavitt path algebras.
//!
//! Vertices and edges are addressed by dense indices ([`Vertex`], [`Edge`])
//! assigned in declaration order; the original string ids are kept for
//! reporting and for carrying identity across quotient and restriction
//! graphs. Declaration order is the global tie-break everywhere.

mod cycles;
mod lattice;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lattice::DEFAULT_LATTICE_CAP;

/// Index of a vertex in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub usize);

/// Index of an edge in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("dangling endpoint: edge `{edge}` (edges[{index}]) has undeclared {role} `{vertex}`")]
    DanglingEndpoint {
        edge: String,
        index: usize,
        role: &'static str,
        vertex: String,
    },
    #[error("duplicate vertex id `{id}` at vertices[{index}]")]
    DuplicateVertex { id: String, index: usize },
    #[error("duplicate edge id `{id}` at edges[{index}]")]
    DuplicateEdge { id: String, index: usize },
    #[error("empty id at {location}")]
    EmptyId { location: String },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph too large for exhaustive lattice: {vertices} vertices exceeds cap {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("vertex set is not hereditary")]
    NotHereditary,
    #[error("vertex set is not saturated")]
    NotSaturated,
    #[error("path does not compose: edge `{edge}` does not start where the previous one ends")]
    BrokenPath { edge: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    id: String,
    src: String,
    rng: String,
}

/// A finite directed multigraph `E = (E⁰, E¹, r, s)`.
///
/// Immutable after construction.
#[derive(Clone)]
pub struct Graph {
    vertex_ids: Vec<String>,
    edge_ids: Vec<String>,
    source: Vec<Vertex>,
    range: Vec<Vertex>,
    out_edges: Vec<Vec<Edge>>,
    vertex_lookup: HashMap<String, Vertex>,
    edge_lookup: HashMap<String, Edge>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_ids == other.vertex_ids
            && self.edge_ids == other.edge_ids
            && self.source == other.source
            && self.range == other.range
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertex_ids)
            .field(
                "edges",
                &self
                    .edges()
                    .map(|e| {
                        (
                            self.edge_id(e),
                            self.vertex_id(self.source(e)),
                            self.vertex_id(self.range(e)),
                        )
                    })
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl Graph {
    /// Builds a graph from vertex ids and `(edge id, source id, range id)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertex_ids: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertex_ids.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let mut vertex_lookup = HashMap::with_capacity(vertex_ids.len());
        for (index, id) in vertex_ids.iter().enumerate() {
            if id.is_empty() {
                return Err(GraphError::EmptyId {
                    location: format!("vertices[{index}]"),
                });
            }
            if vertex_lookup.insert(id.clone(), Vertex(index)).is_some() {
                return Err(GraphError::DuplicateVertex {
                    id: id.clone(),
                    index,
                });
            }
        }

        let mut edge_ids = Vec::new();
        let mut source = Vec::new();
        let mut range = Vec::new();
        let mut edge_lookup = HashMap::new();
        let mut out_edges = vec![Vec::new(); vertex_ids.len()];
        for (index, (id, src, rng)) in edges.into_iter().enumerate() {
            if id.is_empty() {
                return Err(GraphError::EmptyId {
                    location: format!("edges[{index}].id"),
                });
            }
            let endpoint = |name: &str, role: &'static str| {
                vertex_lookup
                    .get(name)
                    .copied()
                    .ok_or_else(|| GraphError::DanglingEndpoint {
                        edge: id.clone(),
                        index,
                        role,
                        vertex: name.to_string(),
                    })
            };
            let s = endpoint(&src, "source")?;
            let r = endpoint(&rng, "range")?;
            if edge_lookup.insert(id.clone(), Edge(index)).is_some() {
                return Err(GraphError::DuplicateEdge { id, index });
            }
            out_edges[s.0].push(Edge(index));
            edge_ids.push(id);
            source.push(s);
            range.push(r);
        }

        Ok(Graph {
            vertex_ids,
            edge_ids,
            source,
            range,
            out_edges,
            vertex_lookup,
            edge_lookup,
        })
    }

    /// Parses the JSON graph format
    /// `{"vertices": [...], "edges": [{"id", "src", "rng"}, ...]}`.
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Graph::new(
            file.vertices,
            file.edges.into_iter().map(|e| (e.id, e.src, e.rng)),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("graph serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let edges: Vec<EdgeRecord> = self
            .edges()
            .map(|e| EdgeRecord {
                id: self.edge_id(e).to_string(),
                src: self.vertex_id(self.source(e)).to_string(),
                rng: self.vertex_id(self.range(e)).to_string(),
            })
            .collect();
        serde_json::json!({ "vertices": self.vertex_ids, "edges": edges })
    }

    /// A content hash used to detect mixing elements of different algebras.
    pub fn fingerprint(&self) -> u64 {
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        self.vertex_ids.hash(&mut hasher);
        self.edge_ids.hash(&mut hasher);
        self.source.hash(&mut hasher);
        self.range.hash(&mut hasher);
        hasher.finish()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = Vertex> + ExactSizeIterator {
        (0..self.vertex_ids.len()).map(Vertex)
    }

    pub fn edges(&self) -> impl DoubleEndedIterator<Item = Edge> + ExactSizeIterator {
        (0..self.edge_ids.len()).map(Edge)
    }

    pub fn source(&self, e: Edge) -> Vertex {
        self.source[e.0]
    }

    pub fn range(&self, e: Edge) -> Vertex {
        self.range[e.0]
    }

    /// `s⁻¹(v)` in declaration order.
    pub fn out_edges(&self, v: Vertex) -> &[Edge] {
        &self.out_edges[v.0]
    }

    pub fn is_sink(&self, v: Vertex) -> bool {
        self.out_edges[v.0].is_empty()
    }

    pub fn vertex_id(&self, v: Vertex) -> &str {
        &self.vertex_ids[v.0]
    }

    pub fn edge_id(&self, e: Edge) -> &str {
        &self.edge_ids[e.0]
    }

    pub fn vertex(&self, id: &str) -> Result<Vertex, GraphError> {
        self.vertex_lookup
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn edge(&self, id: &str) -> Result<Edge, GraphError> {
        self.edge_lookup
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(id.to_string()))
    }

    pub fn lookup_vertex(&self, id: &str) -> Option<Vertex> {
        self.vertex_lookup.get(id).copied()
    }

    pub fn lookup_edge(&self, id: &str) -> Option<Edge> {
        self.edge_lookup.get(id).copied()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn vertex_set<'a, I>(&self, ids: I) -> Result<VertexSet, GraphError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut set = VertexSet::empty(self.vertex_count());
        for id in ids {
            set.insert(self.vertex(id)?);
        }
        Ok(set)
    }

    pub fn set_ids(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.vertex_id(v).to_string()).collect()
    }

    /// Builds a path from edge ids, checking that consecutive edges compose.
    pub fn path_from_ids<'a, I>(&self, ids: I) -> Result<Path, GraphError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let edges = ids
            .into_iter()
            .map(|id| self.edge(id))
            .collect::<Result<Vec<_>, _>>()?;
        let Some(&first) = edges.first() else {
            return Err(GraphError::Precondition("empty path".into()));
        };
        let path = Path {
            start: self.source(first),
            edges,
        };
        self.check_path(&path)?;
        Ok(path)
    }

    pub fn check_path(&self, path: &Path) -> Result<(), GraphError> {
        if path.start.0 >= self.vertex_count() {
            return Err(GraphError::Precondition("path start out of range".into()));
        }
        let mut at = path.start;
        for &e in &path.edges {
            if e.0 >= self.edge_count() {
                return Err(GraphError::Precondition("edge out of range".into()));
            }
            if self.source(e) != at {
                return Err(GraphError::BrokenPath {
                    edge: self.edge_id(e).to_string(),
                });
            }
            at = self.range(e);
        }
        Ok(())
    }

    pub fn path_range(&self, path: &Path) -> Vertex {
        path.edges.last().map_or(path.start, |&e| self.range(e))
    }

    pub fn format_path(&self, path: &Path) -> String {
        if path.edges.is_empty() {
            self.vertex_id(path.start).to_string()
        } else {
            path.edges
                .iter()
                .map(|&e| self.edge_id(e))
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// `reach[v][w]` iff there is a (possibly trivial) path from `v` to `w`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        self.vertices()
            .map(|v| self.reachable_from(v, |_| true))
            .collect()
    }

    /// Vertices reachable from `v` through vertices accepted by `allowed`
    /// (`v` itself is always included).
    fn reachable_from(&self, v: Vertex, allowed: impl Fn(Vertex) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        seen[v.0] = true;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &e in self.out_edges(u) {
                let w = self.range(e);
                if !seen[w.0] && allowed(w) {
                    seen[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_hereditary(&self, set: &VertexSet) -> bool {
        self.edges()
            .all(|e| !set.contains(self.source(e)) || set.contains(self.range(e)))
    }

    pub fn is_saturated(&self, set: &VertexSet) -> bool {
        self.vertices().all(|v| {
            set.contains(v)
                || self.is_sink(v)
                || !self.out_edges(v).iter().all(|&e| set.contains(self.range(e)))
        })
    }

    pub fn is_hereditary_saturated(&self, set: &VertexSet) -> bool {
        self.is_hereditary(set) && self.is_saturated(set)
    }

    /// Smallest hereditary saturated superset of `seed`.
    pub fn hereditary_saturated_closure(&self, seed: &VertexSet) -> VertexSet {
        let mut set = seed.clone();
        loop {
            let mut changed = false;
            // hereditary step
            for v in self.vertices() {
                if set.contains(v) {
                    for (w, hit) in self.reachable_from(v, |_| true).into_iter().enumerate() {
                        if hit && !set.contains(Vertex(w)) {
                            set.insert(Vertex(w));
                            changed = true;
                        }
                    }
                }
            }
            // saturation step
            for v in self.vertices() {
                if !set.contains(v)
                    && !self.is_sink(v)
                    && self.out_edges(v).iter().all(|&e| set.contains(self.range(e)))
                {
                    set.insert(v);
                    changed = true;
                }
            }
            if !changed {
                return set;
            }
        }
    }

    fn require_hereditary_saturated(&self, h: &VertexSet) -> Result<(), GraphError> {
        if h.universe() != self.vertex_count() {
            return Err(GraphError::Precondition(
                "vertex set belongs to a different graph".into(),
            ));
        }
        if !self.is_hereditary(h) {
            return Err(GraphError::NotHereditary);
        }
        if !self.is_saturated(h) {
            return Err(GraphError::NotSaturated);
        }
        Ok(())
    }

    /// `E/H = (E⁰∖H, {e : r(e) ∉ H})`, ids preserved.
    pub fn quotient_graph(&self, h: &VertexSet) -> Result<Graph, GraphError> {
        self.require_hereditary_saturated(h)?;
        let vertices = self
            .vertices()
            .filter(|&v| !h.contains(v))
            .map(|v| self.vertex_id(v).to_string());
        let edges = self
            .edges()
            .filter(|&e| !h.contains(self.range(e)))
            .map(|e| self.edge_triple(e))
            .collect::<Vec<_>>();
        Graph::new(vertices, edges)
    }

    /// `E_H = (H, {e : s(e) ∈ H})`, ids preserved.
    pub fn restriction_graph(&self, h: &VertexSet) -> Result<Graph, GraphError> {
        if !self.is_hereditary(h) {
            return Err(GraphError::NotHereditary);
        }
        let vertices = self
            .vertices()
            .filter(|&v| h.contains(v))
            .map(|v| self.vertex_id(v).to_string());
        let edges = self
            .edges()
            .filter(|&e| h.contains(self.source(e)))
            .map(|e| self.edge_triple(e))
            .collect::<Vec<_>>();
        Graph::new(vertices, edges)
    }

    fn edge_triple(&self, e: Edge) -> (String, String, String) {
        (
            self.edge_id(e).to_string(),
            self.vertex_id(self.source(e)).to_string(),
            self.vertex_id(self.range(e)).to_string(),
        )
    }

    /// Vertices lying on some cycle of the subgraph induced on `m`.
    fn on_cycle_within(&self, m: &VertexSet) -> Vec<bool> {
        self.vertices()
            .map(|v| {
                m.contains(v)
                    && self.out_edges(v).iter().any(|&e| {
                        let w = self.range(e);
                        m.contains(w) && self.reachable_from(w, |x| m.contains(x))[v.0]
                    })
            })
            .collect()
    }

    /// True iff some path inside `m` leads from `v` to a vertex on a cycle
    /// lying inside `m`.
    pub fn connects_to_cycle_in(&self, v: Vertex, m: &VertexSet) -> Result<bool, GraphError> {
        if !m.contains(v) {
            return Err(GraphError::Precondition(format!(
                "vertex `{}` is not in the given set",
                self.vertex_id(v)
            )));
        }
        if !self.is_hereditary_saturated(&m.complement()) {
            return Err(GraphError::Precondition(
                "complement of the given set is not hereditary saturated".into(),
            ));
        }
        Ok(self.connects_to_cycle_unchecked(v, m))
    }

    pub(crate) fn connects_to_cycle_unchecked(&self, v: Vertex, m: &VertexSet) -> bool {
        let on_cycle = self.on_cycle_within(m);
        self.reachable_from(v, |x| m.contains(x))
            .into_iter()
            .enumerate()
            .any(|(w, hit)| hit && on_cycle[w])
    }
}

/// A path `e₁…eₙ`; the trivial path at a vertex has no edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: Vertex,
    pub edges: Vec<Edge>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Self {
        Path {
            start: v,
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertices visited by the path, `μ⁰`.
    pub fn vertices(&self, g: &Graph) -> Vec<Vertex> {
        let mut out = vec![self.start];
        out.extend(self.edges.iter().map(|&e| g.range(e)));
        out
    }

    pub fn then(&self, other: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path {
            start: self.start,
            edges,
        }
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }

    /// `s(eᵢ) ≠ s(eⱼ)` for `i ≠ j` and closed.
    pub fn is_cycle(&self, g: &Graph) -> bool {
        if self.edges.is_empty() || g.path_range(self) != self.start {
            return false;
        }
        let mut seen = HashSet::new();
        self.edges.iter().all(|&e| seen.insert(g.source(e)))
    }
}

/// A subset of `E⁰`, stored as a membership mask over the graph's vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet {
    mask: Vec<bool>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            mask: vec![false; universe],
        }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet {
            mask: vec![true; universe],
        }
    }

    pub fn from_vertices(universe: usize, vs: impl IntoIterator<Item = Vertex>) -> Self {
        let mut set = VertexSet::empty(universe);
        for v in vs {
            set.insert(v);
        }
        set
    }

    pub(crate) fn from_bits(universe: usize, bits: u64) -> Self {
        VertexSet {
            mask: (0..universe).map(|i| bits >> i & 1 == 1).collect(),
        }
    }

    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.mask.get(v.0).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, v: Vertex) {
        self.mask[v.0] = true;
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    pub fn is_full(&self) -> bool {
        self.mask.iter().all(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| Vertex(i))
    }

    pub fn complement(&self) -> Self {
        VertexSet {
            mask: self.mask.iter().map(|&b| !b).collect(),
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.mask
            .iter()
            .zip(&other.mask)
            .all(|(&a, &b)| !a || b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn toeplitz() -> Graph {
        Graph::from_json(
            r#"{"vertices":["v","w"],"edges":[{"id":"e","src":"v","rng":"v"},{"id":"f","src":"v","rng":"w"}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn loads_rose_and_toeplitz() {
        let rose = Graph::from_json(
            r#"{"vertices":["v"],"edges":[{"id":"e1","src":"v","rng":"v"},{"id":"e2","src":"v","rng":"v"}]}"#,
        )
        .unwrap();
        assert_eq!((rose.vertex_count(), rose.edge_count()), (1, 2));
        let t = toeplitz();
        assert_eq!((t.vertex_count(), t.edge_count()), (2, 2));
        assert!(t.is_sink(t.vertex("w").unwrap()));
    }

    #[test]
    fn rejects_dangling_endpoint() {
        let err = Graph::from_json(
            r#"{"vertices":["v"],"edges":[{"id":"e","src":"u","rng":"v"}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::DanglingEndpoint { role: "source", .. }));
        assert!(err.to_string().contains("dangling endpoint"));
    }

    #[test]
    fn rejects_duplicates_empty_and_garbage() {
        assert!(matches!(
            Graph::from_json(r#"{"vertices":["v","v"],"edges":[]}"#),
            Err(GraphError::DuplicateVertex { index: 1, .. })
        ));
        assert!(matches!(
            Graph::from_json(
                r#"{"vertices":["v"],"edges":[{"id":"e","src":"v","rng":"v"},{"id":"e","src":"v","rng":"v"}]}"#
            ),
            Err(GraphError::DuplicateEdge { index: 1, .. })
        ));
        assert_eq!(
            Graph::from_json(r#"{"vertices":[],"edges":[]}"#),
            Err(GraphError::EmptyGraph)
        );
        assert!(matches!(
            Graph::from_json(r#"{"vertices":[""],"edges":[]}"#),
            Err(GraphError::EmptyId { .. })
        ));
        assert!(matches!(
            Graph::from_json("{\"vertices\": [\"v\"],\n \"edges\": [}"),
            Err(GraphError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let t = toeplitz();
        assert_eq!(Graph::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn closure_examples() {
        let t = toeplitz();
        let w = t.vertex_set(["w"]).unwrap();
        assert_eq!(t.hereditary_saturated_closure(&w), w);
        let v = t.vertex_set(["v"]).unwrap();
        assert!(t.hereditary_saturated_closure(&v).is_full());

        let chain = Graph::new(
            ["v", "w", "x"],
            [
                ("a".into(), "v".into(), "w".into()),
                ("b".into(), "w".into(), "x".into()),
            ],
        )
        .unwrap();
        let x = chain.vertex_set(["x"]).unwrap();
        assert!(chain.hereditary_saturated_closure(&x).is_full());
    }

    #[test]
    fn quotient_and_restriction() {
        let t = toeplitz();
        let h = t.vertex_set(["w"]).unwrap();
        let q = t.quotient_graph(&h).unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.edge_count(), 1);
        assert_eq!(q.edge_id(Edge(0)), "e");
        let r = t.restriction_graph(&h).unwrap();
        assert_eq!((r.vertex_count(), r.edge_count()), (1, 0));
        assert_eq!(t.quotient_graph(&VertexSet::empty(2)).unwrap(), t);
        assert_eq!(t.restriction_graph(&t.all_vertices()).unwrap(), t);
        let v = t.vertex_set(["v"]).unwrap();
        assert_eq!(t.quotient_graph(&v), Err(GraphError::NotHereditary));
    }

    #[test]
    fn connects_to_cycle() {
        let t = toeplitz();
        let m = t.all_vertices();
        assert!(t.connects_to_cycle_in(Vertex(0), &m).unwrap());
        assert!(!t.connects_to_cycle_in(Vertex(1), &m).unwrap());
        let chain = Graph::new(["v", "w"], [("a".into(), "v".into(), "w".into())]).unwrap();
        let all = chain.all_vertices();
        assert!(!chain.connects_to_cycle_in(Vertex(0), &all).unwrap());
        assert!(!chain.connects_to_cycle_in(Vertex(1), &all).unwrap());
        let lone = chain.vertex_set(["v"]).unwrap();
        assert!(chain.connects_to_cycle_in(Vertex(1), &lone).is_err());
    }

    #[test]
    fn paths_compose() {
        let t = toeplitz();
        let p = t.path_from_ids(["e", "e", "f"]).unwrap();
        assert_eq!(t.path_range(&p), Vertex(1));
        assert!(t.path_from_ids(["f", "e"]).is_err());
        assert!(t.path_from_ids(["e"]).unwrap().is_cycle(&t));
    }
}
