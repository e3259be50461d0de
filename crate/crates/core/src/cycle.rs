//! Simple cycles, cycle-pair intersections and the Böhme-system condition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::par::{self, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("a cycle needs at least 3 vertices, got {0}")]
    TooShort(usize),
    #[error("vertex `{0}` repeats in cycle")]
    RepeatedVertex(String),
    #[error("cycle {cycle} uses vertex `{vertex}` not in the graph")]
    UnknownVertex { cycle: Cycle, vertex: String },
    #[error("cycle {cycle} uses edge `{a}`-`{b}` not in the graph")]
    MissingEdge { cycle: Cycle, a: String, b: String },
}

/// A simple cycle stored as its canonical vertex sequence: rotated so the
/// smallest label comes first, and oriented so the second vertex is
/// smaller than the last.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Cycle(Vec<String>);

impl Cycle {
    pub fn new<S: Into<String>>(seq: impl IntoIterator<Item = S>) -> Result<Self, CycleError> {
        let seq: Vec<String> = seq.into_iter().map(Into::into).collect();
        if seq.len() < 3 {
            return Err(CycleError::TooShort(seq.len()));
        }
        let mut seen = BTreeSet::new();
        for v in &seq {
            if !seen.insert(v.as_str()) {
                return Err(CycleError::RepeatedVertex(v.clone()));
            }
        }
        Ok(Cycle(canonicalize(seq)))
    }

    /// Canonical sequence.
    pub fn vertices(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: &str) -> bool {
        self.0.iter().any(|x| x == v)
    }

    pub fn vertex_set(&self) -> BTreeSet<String> {
        self.0.iter().cloned().collect()
    }

    /// Edges with sorted endpoints, in traversal order.
    pub fn edges(&self) -> impl Iterator<Item = (String, String)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| sorted_pair(&self.0[i], &self.0[(i + 1) % n]))
    }

    pub fn edge_set(&self) -> BTreeSet<(String, String)> {
        self.edges().collect()
    }

    /// Checks that every vertex and consecutive edge exists in `g`.
    pub fn validate_in(&self, g: &Graph) -> Result<(), CycleError> {
        for v in &self.0 {
            if !g.contains_vertex(v) {
                return Err(CycleError::UnknownVertex {
                    cycle: self.clone(),
                    vertex: v.clone(),
                });
            }
        }
        for (a, b) in self.edges() {
            if !g.has_edge(&a, &b) {
                return Err(CycleError::MissingEdge {
                    cycle: self.clone(),
                    a,
                    b,
                });
            }
        }
        Ok(())
    }

    /// True when no edge of `g` joins two non-consecutive cycle vertices.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let n = self.0.len();
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if g.has_edge(&self.0[i], &self.0[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn as_piece(&self) -> SubgraphPiece {
        SubgraphPiece {
            vertices: self.vertex_set(),
            edges: self.edge_set(),
        }
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Cycle {
        Cycle(canonicalize(self.0.iter().map(|v| f(v)).collect()))
    }
}

impl PartialOrd for Cycle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shorter cycles first, then lexicographic on the canonical sequence.
impl Ord for Cycle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.join(","))
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'de> Deserialize<'de> for Cycle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let seq = Vec::<String>::deserialize(d)?;
        Cycle::new(seq).map_err(serde::de::Error::custom)
    }
}

fn canonicalize(mut seq: Vec<String>) -> Vec<String> {
    let (start, _) = seq
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .expect("non-empty");
    seq.rotate_left(start);
    let n = seq.len();
    if seq[1] > seq[n - 1] {
        seq[1..].reverse();
    }
    seq
}

pub(crate) fn sorted_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// A subgraph given by explicit vertex and edge sets. Isolated vertices
/// are allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubgraphPiece {
    pub vertices: BTreeSet<String>,
    pub edges: BTreeSet<(String, String)>,
}

impl SubgraphPiece {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Self {
        SubgraphPiece {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            edges: edges
                .iter()
                .map(|(a, b)| sorted_pair(a.as_ref(), b.as_ref()))
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    /// True when every edge endpoint is a listed vertex.
    pub fn is_well_formed(&self) -> bool {
        self.edges
            .iter()
            .all(|(a, b)| self.vertices.contains(a) && self.vertices.contains(b))
    }

    pub fn union(&self, other: &SubgraphPiece) -> SubgraphPiece {
        SubgraphPiece {
            vertices: self.vertices.union(&other.vertices).cloned().collect(),
            edges: self.edges.union(&other.edges).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &SubgraphPiece) -> SubgraphPiece {
        SubgraphPiece {
            vertices: self
                .vertices
                .intersection(&other.vertices)
                .cloned()
                .collect(),
            edges: self.edges.intersection(&other.edges).cloned().collect(),
        }
    }

    pub fn contains(&self, other: &SubgraphPiece) -> bool {
        other.vertices.is_subset(&self.vertices) && other.edges.is_subset(&self.edges)
    }

    pub fn degree(&self, v: &str) -> usize {
        self.edges.iter().filter(|(a, b)| a == v || b == v).count()
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> SubgraphPiece {
        SubgraphPiece {
            vertices: self.vertices.iter().map(|v| f(v)).collect(),
            edges: self
                .edges
                .iter()
                .map(|(a, b)| sorted_pair(&f(a), &f(b)))
                .collect(),
        }
    }
}

impl fmt::Display for SubgraphPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let es: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}{b}")).collect();
        write!(
            f,
            "{{vertices: [{}], edges: [{}]}}",
            vs.join(","),
            es.join(",")
        )
    }
}

/// All simple cycles of `g`, canonical and sorted, optionally capped in
/// length and optionally restricted to chordless ones.
///
/// Each cycle is found once: paths are anchored at the cycle's smallest
/// vertex and only closed when the second vertex is smaller than the last.
pub fn enumerate_cycles(g: &Graph, max_len: Option<usize>, induced_only: bool) -> Vec<Cycle> {
    let n = g.vertex_count();
    let cap = max_len.unwrap_or(n).min(n);
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(n);
    let mut on_path = vec![false; n];
    let mut emit =
        |p: &[usize]| out.push(Cycle(p.iter().map(|&i| g.label(i).to_string()).collect()));
    for start in 0..n {
        path.push(start);
        on_path[start] = true;
        if induced_only {
            extend_chordless(g, start, cap, &mut path, &mut on_path, &mut emit);
        } else {
            extend(g, start, cap, &mut path, &mut on_path, &mut emit);
        }
        on_path[start] = false;
        path.pop();
    }
    out.sort();
    out
}

/// Like [`extend`] but only grows chordless paths; a vertex adjacent to
/// the start closes the cycle instead of extending it.
fn extend_chordless(
    g: &Graph,
    start: usize,
    cap: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    emit: &mut impl FnMut(&[usize]),
) {
    let last = *path.last().expect("non-empty path");
    for &w in g.neighbors_of(last) {
        if w <= start || on_path[w] {
            continue;
        }
        let interior = if path.len() > 2 {
            &path[1..path.len() - 1]
        } else {
            &[][..]
        };
        if interior.iter().any(|&p| g.adjacent_indices(p, w)) {
            continue;
        }
        path.push(w);
        if path.len() >= 3 && g.adjacent_indices(w, start) {
            if path[1] < w {
                emit(path);
            }
        } else if path.len() < cap {
            on_path[w] = true;
            extend_chordless(g, start, cap, path, on_path, emit);
            on_path[w] = false;
        }
        path.pop();
    }
}

fn extend(
    g: &Graph,
    start: usize,
    cap: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    emit: &mut impl FnMut(&[usize]),
) {
    let last = *path.last().expect("non-empty path");
    for &w in g.neighbors_of(last) {
        if w == start && path.len() >= 3 && path[1] < last {
            emit(path);
        }
        if w > start && !on_path[w] && path.len() < cap {
            path.push(w);
            on_path[w] = true;
            extend(g, start, cap, path, on_path, emit);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// Shared vertices and shared edges of two cycles.
pub fn cycle_intersection(c1: &Cycle, c2: &Cycle) -> SubgraphPiece {
    c1.as_piece().intersection(&c2.as_piece())
}

/// Connected components of a piece, isolated vertices included.
pub fn piece_components(p: &SubgraphPiece) -> usize {
    let mut parent: BTreeMap<&str, &str> = p
        .vertices
        .iter()
        .map(|v| (v.as_str(), v.as_str()))
        .collect();
    fn find<'a>(parent: &mut BTreeMap<&'a str, &'a str>, v: &'a str) -> &'a str {
        let mut root = v;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = v;
        while parent[cur] != root {
            let next = parent[cur];
            parent.insert(cur, root);
            cur = next;
        }
        root
    }
    for (a, b) in &p.edges {
        // endpoints missing from the vertex set still count as vertices
        parent.entry(a.as_str()).or_insert(a.as_str());
        parent.entry(b.as_str()).or_insert(b.as_str());
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra != rb {
            parent.insert(ra, rb);
        }
    }
    let keys: Vec<&str> = parent.keys().copied().collect();
    keys.into_iter()
        .filter(|&v| find(&mut parent, v) == v)
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BohmeVerdict {
    pub ok: bool,
    pub witness: Option<(Cycle, Cycle)>,
}

/// Checks that every pair of cycles meets in a connected piece or not at
/// all. The witness is the first failing pair in sorted order.
pub fn is_bohme_system(cycles: &[Cycle], g: &Graph) -> Result<BohmeVerdict, CycleError> {
    is_bohme_system_with(cycles, g, Execution::default())
}

pub fn is_bohme_system_with(
    cycles: &[Cycle],
    g: &Graph,
    exec: Execution,
) -> Result<BohmeVerdict, CycleError> {
    let sorted: Vec<Cycle> = cycles
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for c in &sorted {
        c.validate_in(g)?;
    }
    let pieces: Vec<SubgraphPiece> = sorted.iter().map(Cycle::as_piece).collect();
    let pairs: Vec<(usize, usize)> = (0..sorted.len())
        .flat_map(|i| (i + 1..sorted.len()).map(move |j| (i, j)))
        .collect();
    let failing = par::find_first(exec, &pairs, |&(i, j)| {
        piece_components(&pieces[i].intersection(&pieces[j])) > 1
    });
    Ok(match failing {
        Some(&(i, j)) => BohmeVerdict {
            ok: false,
            witness: Some((sorted[i].clone(), sorted[j].clone())),
        },
        None => BohmeVerdict {
            ok: true,
            witness: None,
        },
    })
}
