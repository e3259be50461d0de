//! Finite simple undirected graphs with string vertex labels, plus the
//! Δ-Y and Y-Δ exchanges.
//!
//! Vertices are kept in sorted label order and every vertex has a dense
//! index matching that order, so index order and label order agree. Edges
//! are stored with the smaller index first and the edge list is sorted.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("edge `{0}`-`{1}` references unknown vertex `{2}`")]
    UnknownEndpoint(String, String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertices {0:?} do not form a triangle")]
    NotATriangle([String; 3]),
    #[error("label `{0}` is already in use")]
    LabelCollision(String),
    #[error("vertex `{0}` has degree {1}, expected 3")]
    DegreeNotThree(String, usize),
    #[error("Y-Δ at `{center}` would duplicate edge `{a}`-`{b}`")]
    WouldCreateMultiEdge {
        center: String,
        a: String,
        b: String,
    },
}

/// A finite simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting duplicate labels, self-loops, duplicate
    /// edges and edges with undeclared endpoints.
    pub fn new<L, E, S>(labels: L, edge_list: E) -> Result<Self, GraphError>
    where
        L: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (S, S)>,
    {
        let mut seen = BTreeSet::new();
        for label in labels {
            let label = label.into();
            if !seen.insert(label.clone()) {
                return Err(GraphError::DuplicateLabel(label));
            }
        }
        let labels: Vec<String> = seen.into_iter().collect();
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();

        let mut edge_set = BTreeSet::new();
        for (a, b) in edge_list {
            let (a, b) = (a.into(), b.into());
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| GraphError::UnknownEndpoint(a.clone(), b.clone(), a.clone()))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| GraphError::UnknownEndpoint(a.clone(), b.clone(), b.clone()))?;
            if ia == ib {
                return Err(GraphError::SelfLoop(a));
            }
            if !edge_set.insert((ia.min(ib), ia.max(ib))) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Self::from_parts(labels, edge_set.into_iter().collect()))
    }

    /// `edges` must be sorted, deduplicated, with `i < j` for each `(i, j)`.
    fn from_parts(labels: Vec<String>, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); labels.len()];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { labels, adj, edges }
    }

    pub fn empty() -> Self {
        Graph::from_parts(Vec::new(), Vec::new())
    }

    /// Complete graph on the given labels.
    pub fn complete<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self, GraphError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut edges = Vec::new();
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
        Graph::new(labels, edges)
    }

    /// Complete multipartite graph with the given parts.
    pub fn complete_multipartite(parts: &[&[&str]]) -> Result<Self, GraphError> {
        let labels: Vec<&str> = parts.iter().flat_map(|p| p.iter().copied()).collect();
        let mut edges = Vec::new();
        for (pi, p) in parts.iter().enumerate() {
            for q in &parts[pi + 1..] {
                for &a in p.iter() {
                    for &b in q.iter() {
                        edges.push((a, b));
                    }
                }
            }
        }
        Graph::new(labels, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex labels in sorted order.
    pub fn vertices(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn contains_vertex(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    /// Edges as sorted index pairs.
    pub fn edge_indices(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges as label pairs, endpoints sorted, list sorted.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(i, j)| (self.labels[i].as_str(), self.labels[j].as_str()))
    }

    /// Sorted neighbor indices of vertex `index`.
    pub fn neighbors_of(&self, index: usize) -> &[usize] {
        &self.adj[index]
    }

    pub fn degree_of(&self, index: usize) -> usize {
        self.adj[index].len()
    }

    pub fn degree(&self, label: &str) -> Option<usize> {
        self.index_of(label).map(|i| self.adj[i].len())
    }

    pub fn neighbors(&self, label: &str) -> Option<Vec<&str>> {
        self.index_of(label).map(|i| {
            self.adj[i]
                .iter()
                .map(|&j| self.labels[j].as_str())
                .collect()
        })
    }

    pub fn adjacent_indices(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adjacent_indices(i, j),
            _ => false,
        }
    }

    /// Subgraph induced by `subset`.
    pub fn induced_subgraph<S: AsRef<str>>(&self, subset: &[S]) -> Result<Graph, GraphError> {
        let mut keep = vec![false; self.labels.len()];
        for s in subset {
            let i = self
                .index_of(s.as_ref())
                .ok_or_else(|| GraphError::UnknownVertex(s.as_ref().to_string()))?;
            keep[i] = true;
        }
        Ok(self.induced_by_mask(&keep))
    }

    pub(crate) fn induced_by_mask(&self, keep: &[bool]) -> Graph {
        let mut remap = vec![usize::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (i, l) in self.labels.iter().enumerate() {
            if keep[i] {
                remap[i] = labels.len();
                labels.push(l.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(i, j)| keep[i] && keep[j])
            .map(|&(i, j)| (remap[i], remap[j]))
            .collect();
        Graph::from_parts(labels, edges)
    }

    /// Replaces the triangle on `triangle` by a new vertex `new_label`
    /// joined to its three corners.
    pub fn delta_y(&self, triangle: [&str; 3], new_label: &str) -> Result<Graph, GraphError> {
        let owned = || triangle.map(str::to_string);
        let idx: Vec<usize> = triangle
            .iter()
            .map(|t| {
                self.index_of(t)
                    .ok_or_else(|| GraphError::NotATriangle(owned()))
            })
            .collect::<Result<_, _>>()?;
        let [a, b, c] = [idx[0], idx[1], idx[2]];
        if a == b
            || b == c
            || a == c
            || !self.adjacent_indices(a, b)
            || !self.adjacent_indices(b, c)
            || !self.adjacent_indices(a, c)
        {
            return Err(GraphError::NotATriangle(owned()));
        }
        if self.contains_vertex(new_label) {
            return Err(GraphError::LabelCollision(new_label.to_string()));
        }
        let removed = [(a, b), (b, c), (a, c)].map(|(i, j)| (i.min(j), i.max(j)));
        let mut labels: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        labels.push(new_label);
        let mut edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .filter(|e| !removed.contains(e))
            .map(|&(i, j)| (self.label(i), self.label(j)))
            .collect();
        for t in triangle {
            edges.push((t, new_label));
        }
        Graph::new(labels, edges)
    }

    /// Removes the degree-3 vertex `center` and joins its neighbors in a
    /// triangle. Fails if any two neighbors are already adjacent.
    pub fn y_delta(&self, center: &str) -> Result<Graph, GraphError> {
        let ci = self
            .index_of(center)
            .ok_or_else(|| GraphError::UnknownVertex(center.to_string()))?;
        let nbrs = &self.adj[ci];
        if nbrs.len() != 3 {
            return Err(GraphError::DegreeNotThree(center.to_string(), nbrs.len()));
        }
        for (x, y) in [(0, 1), (1, 2), (0, 2)] {
            if self.adjacent_indices(nbrs[x], nbrs[y]) {
                return Err(GraphError::WouldCreateMultiEdge {
                    center: center.to_string(),
                    a: self.labels[nbrs[x]].clone(),
                    b: self.labels[nbrs[y]].clone(),
                });
            }
        }
        let labels: Vec<&str> = self
            .labels
            .iter()
            .filter(|l| l.as_str() != center)
            .map(String::as_str)
            .collect();
        let mut edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .filter(|&&(i, j)| i != ci && j != ci)
            .map(|&(i, j)| (self.label(i), self.label(j)))
            .collect();
        for (x, y) in [(0, 1), (1, 2), (0, 2)] {
            edges.push((self.label(nbrs[x]), self.label(nbrs[y])));
        }
        Graph::new(labels, edges)
    }

    /// All triangles as sorted index triples, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for &(i, j) in &self.edges {
            for &k in &self.adj[j] {
                if k > j && self.adjacent_indices(i, k) {
                    out.push([i, j, k]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Applies `f` to every label. `f` must be injective on this graph.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Graph, GraphError> {
        let labels: Vec<String> = self.labels.iter().map(|l| f(l)).collect();
        let edges: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(i, j)| (labels[i].clone(), labels[j].clone()))
            .collect();
        Graph::new(labels, edges)
    }

    /// Smallest label of the form `{prefix}{n}` (n = 1, 2, ...) not in use.
    pub fn fresh_label(&self, prefix: &str) -> String {
        (1..)
            .map(|n| format!("{prefix}{n}"))
            .find(|l| !self.contains_vertex(l))
            .expect("unbounded label supply")
    }

    /// Graphviz DOT rendering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{}\" {{\n", escape_dot(name));
        for l in &self.labels {
            out.push_str(&format!("  \"{}\";\n", escape_dot(l)));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\";\n",
                escape_dot(a),
                escape_dot(b)
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|(a, b)| format!("{a}{b}")).collect();
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}

/// Wire format: `{"vertices": [...], "edges": [["a","b"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            vertices: g.labels.clone(),
            edges: g
                .edges()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        Graph::new(j.vertices, j.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k6() -> Graph {
        Graph::complete(["a", "b", "c", "d", "e", "f"]).unwrap()
    }

    #[test]
    fn complete_graph_counts() {
        let g = k6();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn k331_has_fifteen_edges() {
        let g =
            Graph::complete_multipartite(&[&["a", "b", "c"], &["1", "2", "3"], &["v"]]).unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn construction_errors_name_offender() {
        assert_eq!(
            Graph::new(["a", "b"], [("a", "a")]),
            Err(GraphError::SelfLoop("a".into()))
        );
        assert_eq!(
            Graph::new(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(GraphError::DuplicateLabel("a".into()))
        );
        assert_eq!(
            Graph::new(["a", "b"], [("a", "b"), ("b", "a")]),
            Err(GraphError::DuplicateEdge("b".into(), "a".into()))
        );
        assert_eq!(
            Graph::new(["a", "b"], [("a", "z")]),
            Err(GraphError::UnknownEndpoint(
                "a".into(),
                "z".into(),
                "z".into()
            ))
        );
    }

    #[test]
    fn induced_subgraph_of_k6_is_k4() {
        let h = k6().induced_subgraph(&["b", "c", "e", "f"]).unwrap();
        assert_eq!(h.vertices(), ["b", "c", "e", "f"]);
        assert_eq!(h.edge_count(), 6);
        let empty = k6().induced_subgraph::<&str>(&[]).unwrap();
        assert_eq!(empty.vertex_count(), 0);
        assert_eq!(empty.edge_count(), 0);
        assert_eq!(
            k6().induced_subgraph(&["q"]),
            Err(GraphError::UnknownVertex("q".into()))
        );
    }

    #[test]
    fn delta_y_then_y_delta_restores_edges() {
        let g = k6();
        let h = g.delta_y(["a", "b", "c"], "y").unwrap();
        assert_eq!(h.vertex_count(), 7);
        assert_eq!(h.edge_count(), 15);
        assert!(!h.has_edge("a", "b"));
        assert!(h.has_edge("a", "y"));
        assert_eq!(h.y_delta("y").unwrap(), g);
    }

    #[test]
    fn exchange_errors() {
        let g = k6();
        assert!(matches!(
            g.delta_y(["a", "b", "c"], "a"),
            Err(GraphError::LabelCollision(_))
        ));
        let c4 = Graph::new(
            ["a", "b", "c", "d"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap();
        assert!(matches!(
            c4.delta_y(["a", "b", "c"], "y"),
            Err(GraphError::NotATriangle(_))
        ));
        assert_eq!(
            g.y_delta("a"),
            Err(GraphError::DegreeNotThree("a".into(), 5))
        );
        let k4 = Graph::complete(["a", "b", "c", "d"]).unwrap();
        assert!(matches!(
            k4.y_delta("a"),
            Err(GraphError::WouldCreateMultiEdge { .. })
        ));
    }

    #[test]
    fn json_is_sorted_and_round_trips() {
        let g = Graph::new(["c", "a", "b"], [("c", "a"), ("b", "a")]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"vertices":["a","b","c"],"edges":[["a","b"],["a","c"]]}"#
        );
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(
            serde_json::from_str::<Graph>(r#"{"vertices":["a"],"edges":[["a","a"]]}"#).is_err()
        );
    }

    #[test]
    fn dot_export() {
        let g = Graph::new(["a", "b"], [("a", "b")]).unwrap();
        assert_eq!(
            g.to_dot("G"),
            "graph \"G\" {\n  \"a\";\n  \"b\";\n  \"a\" -- \"b\";\n}\n"
        );
    }
}
