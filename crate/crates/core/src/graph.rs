//! Finite simplicial graphs, half-edges, graph homomorphisms and subdivision.
//!
//! Vertices and edges are addressed by string ids in the public file format and
//! by dense indices ([`VertexIx`], [`EdgeIx`]) internally. Both index spaces are
//! sorted by id, so every derived matrix is reproducible across runs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge `{edge}` is a loop at `{vertex}`")]
    LoopEdge { edge: String, vertex: String },
    #[error("edge `{edge}` is parallel to edge `{other}`")]
    ParallelEdge { edge: String, other: String },
    #[error("edge `{edge}` has unknown endpoint `{vertex}`")]
    UnknownEndpoint { edge: String, vertex: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("subdivision parameter must be at least 1, got {0}")]
    InvalidK(usize),
    #[error("vertex map is not total: `{0}` has no image")]
    NotTotal(String),
    #[error("edge `{edge}` maps to non-adjacent vertices `{a}`, `{b}`")]
    NotAdjacencyPreserving { edge: String, a: String, b: String },
    #[error("homomorphisms are not composable")]
    NotComposable,
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexIx(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIx(pub usize);

/// A pair `(v, e)` with `v` an endpoint of `e`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub vertex: VertexIx,
    pub edge: EdgeIx,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// Endpoints, smaller vertex index first.
    pub ends: (VertexIx, VertexIx),
}

/// A 1-dimensional simplicial complex: no loops, no parallel edges.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexIx>,
    edge_index: HashMap<String, EdgeIx>,
    /// Edges at each vertex, in increasing edge index.
    incidence: Vec<Vec<EdgeIx>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Validates and builds a graph. Ids are sorted, so input order is irrelevant.
    pub fn new<V, E>(vertex_ids: V, edge_list: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, [String; 2])>,
    {
        let mut vertices: Vec<String> = vertex_ids.into_iter().map(Into::into).collect();
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateId(w[0].clone()));
        }
        let vertex_index: HashMap<String, VertexIx> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexIx(i)))
            .collect();

        let mut raw: Vec<(String, [String; 2])> = edge_list.into_iter().collect();
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = raw.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(GraphError::DuplicateId(w[0].0.clone()));
        }

        let mut edges = Vec::with_capacity(raw.len());
        let mut seen_pairs: HashMap<(VertexIx, VertexIx), String> = HashMap::new();
        for (id, [a, b]) in raw {
            let lookup = |v: &String| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| GraphError::UnknownEndpoint {
                        edge: id.clone(),
                        vertex: v.clone(),
                    })
            };
            let (ia, ib) = (lookup(&a)?, lookup(&b)?);
            if ia == ib {
                return Err(GraphError::LoopEdge { edge: id, vertex: a });
            }
            let ends = (ia.min(ib), ia.max(ib));
            if let Some(other) = seen_pairs.get(&ends) {
                return Err(GraphError::ParallelEdge {
                    edge: id,
                    other: other.clone(),
                });
            }
            seen_pairs.insert(ends, id.clone());
            edges.push(Edge { id, ends });
        }

        let edge_index = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), EdgeIx(i)))
            .collect();
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incidence[e.ends.0 .0].push(EdgeIx(i));
            incidence[e.ends.1 .0].push(EdgeIx(i));
        }

        Ok(Graph {
            vertices,
            edges,
            vertex_index,
            edge_index,
            incidence,
        })
    }

    /// Convenience constructor from string slices: `(edge id, a, b)` triples.
    pub fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        Graph::new(
            vertices.iter().copied(),
            edges
                .iter()
                .map(|(id, a, b)| (id.to_string(), [a.to_string(), b.to_string()])),
        )
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_id(&self, v: VertexIx) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_id(&self, e: EdgeIx) -> &str {
        &self.edges[e.0].id
    }

    pub fn edge(&self, e: EdgeIx) -> &Edge {
        &self.edges[e.0]
    }

    pub fn vertex(&self, id: &str) -> Result<VertexIx, GraphError> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn edge_by_id(&self, id: &str) -> Result<EdgeIx, GraphError> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(id.to_string()))
    }

    pub fn degree(&self, v: VertexIx) -> usize {
        self.incidence[v.0].len()
    }

    /// Edges incident to `v`, sorted by edge id.
    pub fn incident_edges(&self, v: VertexIx) -> &[EdgeIx] {
        &self.incidence[v.0]
    }

    /// Half-edges at `v`, sorted by edge id.
    pub fn half_edges_at(&self, v: VertexIx) -> Vec<HalfEdge> {
        self.incidence[v.0]
            .iter()
            .map(|&edge| HalfEdge { vertex: v, edge })
            .collect()
    }

    /// Half-edges at the vertex named `id`.
    pub fn half_edges_at_id(&self, id: &str) -> Result<Vec<HalfEdge>, GraphError> {
        Ok(self.half_edges_at(self.vertex(id)?))
    }

    /// The endpoint of `e` other than `v`.
    pub fn opposite(&self, e: EdgeIx, v: VertexIx) -> VertexIx {
        let (a, b) = self.edges[e.0].ends;
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn edge_between(&self, a: VertexIx, b: VertexIx) -> Option<EdgeIx> {
        self.incidence[a.0]
            .iter()
            .copied()
            .find(|&e| self.opposite(e, a) == b)
    }

    /// Vertices of degree other than 2.
    pub fn essential_vertices(&self) -> BTreeSet<String> {
        (0..self.vertices.len())
            .filter(|&v| self.incidence[v].len() != 2)
            .map(|v| self.vertices[v].clone())
            .collect()
    }

    pub fn isolated_vertices(&self) -> Vec<VertexIx> {
        (0..self.vertices.len())
            .filter(|&v| self.incidence[v].is_empty())
            .map(VertexIx)
            .collect()
    }

    /// Replaces every edge by a path of `k` edges.
    ///
    /// For `k = 1` the graph is returned unchanged. Otherwise edge `e` with
    /// endpoints `a < b` becomes `a - e#1 - ... - e#(k-1) - b` with edges
    /// `e.1, ..., e.k`. The returned map sends each old edge id to its path.
    pub fn subdivide(&self, k: usize) -> Result<(Graph, BTreeMap<String, Vec<String>>), GraphError> {
        if k == 0 {
            return Err(GraphError::InvalidK(k));
        }
        if k == 1 {
            let provenance = self
                .edges
                .iter()
                .map(|e| (e.id.clone(), vec![e.id.clone()]))
                .collect();
            return Ok((self.clone(), provenance));
        }
        let mut vertices = self.vertices.clone();
        let mut edges = Vec::new();
        let mut provenance = BTreeMap::new();
        for e in &self.edges {
            let mut chain = vec![self.vertices[e.ends.0 .0].clone()];
            for i in 1..k {
                let id = format!("{}#{}", e.id, i);
                vertices.push(id.clone());
                chain.push(id);
            }
            chain.push(self.vertices[e.ends.1 .0].clone());
            let path: Vec<String> = (1..=k).map(|i| format!("{}.{}", e.id, i)).collect();
            for (i, id) in path.iter().enumerate() {
                edges.push((id.clone(), [chain[i].clone(), chain[i + 1].clone()]));
            }
            provenance.insert(e.id.clone(), path);
        }
        Ok((Graph::new(vertices, edges)?, provenance))
    }

    /// Shortest cycle length, if the graph has a cycle.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertices.len();
        let mut best: Option<usize> = None;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent_edge = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.incidence[u] {
                    if e.0 == parent_edge[u] {
                        continue;
                    }
                    let w = self.opposite(e, VertexIx(u)).0;
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent_edge[w] = e.0;
                        queue.push_back(w);
                    } else {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Lengths of the maximal paths through degree-2 vertices that join two
    /// distinct essential vertices.
    pub fn essential_path_lengths(&self) -> Vec<usize> {
        let mut lengths = Vec::new();
        for v in 0..self.vertices.len() {
            if self.incidence[v].len() == 2 {
                continue;
            }
            for &start in &self.incidence[v] {
                let (mut prev, mut cur_edge, mut len) = (VertexIx(v), start, 1);
                loop {
                    let next = self.opposite(cur_edge, prev);
                    if self.degree(next) != 2 {
                        if next.0 > v {
                            lengths.push(len);
                        }
                        break;
                    }
                    let out = self.incidence[next.0]
                        .iter()
                        .copied()
                        .find(|&e| e != cur_edge)
                        .expect("degree-2 vertex has a second edge");
                    prev = next;
                    cur_edge = out;
                    len += 1;
                }
            }
        }
        lengths
    }

    /// Parses the JSON graph file format.
    pub fn from_json_str(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        file.into_graph()
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id.clone(),
                    ends: [
                        self.vertices[e.ends.0 .0].clone(),
                        self.vertices[e.ends.1 .0].clone(),
                    ],
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph serializes")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(V={}, E={})", self.num_vertices(), self.num_edges())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: String,
    pub ends: [String; 2],
}

/// On-disk graph: `{"vertices": [...], "edges": [{"id": .., "ends": [a, b]}]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

impl GraphFile {
    /// Validates the file contents, reporting the offending field on failure.
    pub fn into_graph(self) -> Result<Graph, GraphError> {
        let field_err = |field: String, err: GraphError| GraphError::Invalid {
            field,
            message: err.to_string(),
        };
        let mut seen = BTreeSet::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !seen.insert(v.as_str()) {
                return Err(field_err(
                    format!("vertices[{i}]"),
                    GraphError::DuplicateId(v.clone()),
                ));
            }
        }
        let position: HashMap<&str, usize> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.as_str(), i))
            .collect();
        let edges = self.edges.iter().map(|e| (e.id.clone(), e.ends.clone()));
        Graph::new(self.vertices.clone(), edges).map_err(|err| {
            let edge = match &err {
                GraphError::LoopEdge { edge, .. }
                | GraphError::ParallelEdge { edge, .. }
                | GraphError::UnknownEndpoint { edge, .. } => Some(edge.as_str()),
                GraphError::DuplicateId(id) => Some(id.as_str()),
                _ => None,
            };
            let field = match edge.and_then(|id| position.get(id)) {
                Some(i) => format!("edges[{i}]"),
                None => "edges".to_string(),
            };
            field_err(field, err)
        })
    }
}

/// A map of vertices preserving adjacency.
#[derive(Clone, Debug)]
pub struct GraphHom {
    source: Arc<Graph>,
    target: Arc<Graph>,
    vertex_map: Vec<VertexIx>,
    edge_map: Vec<EdgeIx>,
    injective: bool,
}

impl GraphHom {
    /// Checks that `map` (source id -> target id) is total and adjacency preserving.
    pub fn from_vertex_map(
        map: &BTreeMap<String, String>,
        source: Arc<Graph>,
        target: Arc<Graph>,
    ) -> Result<Self, GraphError> {
        let mut vertex_map = Vec::with_capacity(source.num_vertices());
        for v in source.vertex_ids() {
            let image = map.get(v).ok_or_else(|| GraphError::NotTotal(v.clone()))?;
            vertex_map.push(target.vertex(image)?);
        }
        Self::from_indices(vertex_map, source, target)
    }

    pub fn from_indices(
        vertex_map: Vec<VertexIx>,
        source: Arc<Graph>,
        target: Arc<Graph>,
    ) -> Result<Self, GraphError> {
        assert_eq!(vertex_map.len(), source.num_vertices());
        let mut edge_map = Vec::with_capacity(source.num_edges());
        for e in source.edges() {
            let (a, b) = (vertex_map[e.ends.0 .0], vertex_map[e.ends.1 .0]);
            let image = if a == b { None } else { target.edge_between(a, b) };
            match image {
                Some(f) => edge_map.push(f),
                None => {
                    return Err(GraphError::NotAdjacencyPreserving {
                        edge: e.id.clone(),
                        a: target.vertex_id(a).to_string(),
                        b: target.vertex_id(b).to_string(),
                    })
                }
            }
        }
        let distinct_vertices: BTreeSet<_> = vertex_map.iter().collect();
        let injective = distinct_vertices.len() == vertex_map.len();
        Ok(GraphHom {
            source,
            target,
            vertex_map,
            edge_map,
            injective,
        })
    }

    pub fn identity(graph: Arc<Graph>) -> Self {
        let map = (0..graph.num_vertices()).map(VertexIx).collect();
        Self::from_indices(map, graph.clone(), graph).expect("identity preserves adjacency")
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn map_vertex(&self, v: VertexIx) -> VertexIx {
        self.vertex_map[v.0]
    }

    pub fn map_edge(&self, e: EdgeIx) -> EdgeIx {
        self.edge_map[e.0]
    }

    pub fn map_half_edge(&self, h: HalfEdge) -> HalfEdge {
        HalfEdge {
            vertex: self.map_vertex(h.vertex),
            edge: self.map_edge(h.edge),
        }
    }

    /// The vertex map as ids, sorted by source id.
    pub fn vertex_map_ids(&self) -> BTreeMap<String, String> {
        self.vertex_map
            .iter()
            .enumerate()
            .map(|(i, &w)| {
                (
                    self.source.vertex_id(VertexIx(i)).to_string(),
                    self.target.vertex_id(w).to_string(),
                )
            })
            .collect()
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &GraphHom) -> Result<GraphHom, GraphError> {
        if *self.target != *after.source {
            return Err(GraphError::NotComposable);
        }
        let map = self.vertex_map.iter().map(|&v| after.map_vertex(v)).collect();
        GraphHom::from_indices(map, self.source.clone(), after.target.clone())
    }
}

impl PartialEq for GraphHom {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_map == other.vertex_map
            && *self.source == *other.source
            && *self.target == *other.target
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn segment() -> Graph {
        Graph::build(&["a", "b"], &[("e1", "a", "b")]).unwrap()
    }

    pub fn star3() -> Graph {
        Graph::build(
            &["u", "v", "w", "x"],
            &[("e1", "u", "v"), ("e2", "u", "w"), ("e3", "u", "x")],
        )
        .unwrap()
    }

    pub fn cycle3() -> Graph {
        Graph::build(
            &["a", "b", "c"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "a", "c")],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn segment_is_valid() {
        let g = segment();
        assert_eq!((g.num_vertices(), g.num_edges()), (2, 1));
    }

    #[test]
    fn rejects_loops_parallels_unknowns_duplicates() {
        assert!(matches!(
            Graph::build(&["c"], &[("e1", "c", "c")]),
            Err(GraphError::LoopEdge { .. })
        ));
        assert!(matches!(
            Graph::build(&["a", "b"], &[("e1", "a", "b"), ("e2", "b", "a")]),
            Err(GraphError::ParallelEdge { .. })
        ));
        assert!(matches!(
            Graph::build(&["a"], &[("e1", "a", "z")]),
            Err(GraphError::UnknownEndpoint { .. })
        ));
        assert!(matches!(
            Graph::build(&["a", "a"], &[]),
            Err(GraphError::DuplicateId(_))
        ));
        assert!(matches!(
            Graph::build(&["a", "b", "c"], &[("e", "a", "b"), ("e", "b", "c")]),
            Err(GraphError::DuplicateId(_))
        ));
    }

    #[test]
    fn star_center_degree() {
        let g = star3();
        assert_eq!(g.degree(g.vertex("u").unwrap()), 3);
    }

    #[test]
    fn half_edges_sorted_by_edge() {
        let g = star3();
        let hs = g.half_edges_at_id("u").unwrap();
        let ids: Vec<_> = hs.iter().map(|h| g.edge_id(h.edge)).collect();
        assert_eq!(ids, ["e1", "e2", "e3"]);
        assert_eq!(g.half_edges_at_id("v").unwrap().len(), 1);
        assert_eq!(segment().half_edges_at_id("a").unwrap().len(), 1);
        assert!(matches!(g.half_edges_at_id("zz"), Err(GraphError::UnknownVertex(_))));
    }

    #[test]
    fn essential_vertices_examples() {
        let names = |s: BTreeSet<String>| s.into_iter().collect::<Vec<_>>();
        assert_eq!(names(segment().essential_vertices()), ["a", "b"]);
        assert!(cycle3().essential_vertices().is_empty());
        assert_eq!(names(star3().essential_vertices()), ["u", "v", "w", "x"]);
    }

    #[test]
    fn subdivide_examples() {
        let (p, prov) = segment().subdivide(2).unwrap();
        assert_eq!((p.num_vertices(), p.num_edges()), (3, 2));
        assert_eq!(prov["e1"], ["e1.1", "e1.2"]);

        let (c6, _) = cycle3().subdivide(2).unwrap();
        assert_eq!((c6.num_vertices(), c6.num_edges()), (6, 6));
        assert!(c6.essential_vertices().is_empty());
        assert_eq!(c6.girth(), Some(6));

        let (same, prov) = star3().subdivide(1).unwrap();
        assert_eq!(same, star3());
        assert_eq!(prov["e2"], ["e2"]);

        assert!(matches!(star3().subdivide(0), Err(GraphError::InvalidK(0))));
    }

    #[test]
    fn homomorphism_examples() {
        let g = Arc::new(star3());
        let id = GraphHom::identity(g.clone());
        assert!(id.is_injective());

        let swap: BTreeMap<String, String> = [("u", "u"), ("v", "w"), ("w", "v"), ("x", "x")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let hom = GraphHom::from_vertex_map(&swap, g.clone(), g.clone()).unwrap();
        assert!(hom.is_injective());
        assert!(hom.then(&hom).unwrap() == id);

        // Collapsing the leaves is adjacency preserving but not injective.
        let collapse: BTreeMap<String, String> = [("u", "u"), ("v", "v"), ("w", "v"), ("x", "v")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let hom = GraphHom::from_vertex_map(&collapse, g.clone(), g.clone()).unwrap();
        assert!(!hom.is_injective());

        // Into a graph without the required edge it fails.
        let seg = Arc::new(Graph::build(&["u", "v", "w", "x"], &[("e1", "v", "w")]).unwrap());
        assert!(matches!(
            GraphHom::from_vertex_map(&collapse, g, seg),
            Err(GraphError::NotAdjacencyPreserving { .. })
        ));
    }

    #[test]
    fn json_roundtrip_and_diagnostics() {
        let g = star3();
        let back = Graph::from_json_str(&g.to_json_string()).unwrap();
        assert_eq!(back, g);

        let bad = r#"{"vertices": ["a","b"], "edges": [{"id":"e1","ends":["a","b"]},{"id":"e2","ends":["a","a"]}]}"#;
        match Graph::from_json_str(bad) {
            Err(GraphError::Invalid { field, .. }) => assert_eq!(field, "edges[1]"),
            other => panic!("unexpected {other:?}"),
        }
        match Graph::from_json_str("{\"vertices\": [\n 1]}") {
            Err(GraphError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn essential_paths_and_girth() {
        let (sub, _) = star3().subdivide(3).unwrap();
        let mut lens = sub.essential_path_lengths();
        lens.sort();
        assert_eq!(lens, [3, 3, 3]);
        assert_eq!(sub.girth(), None);
        assert_eq!(cycle3().girth(), Some(3));
    }
}
