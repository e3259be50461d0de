//! Combinatorial 2-spheres built from cycle systems.
//!
//! A system's faces are cycles of a host graph; pasting a disk onto each
//! face gives a 2-complex. It is a closed surface when every carrier edge
//! lies on exactly two faces, the faces around every vertex form a single
//! closed fan, and the faces are connected through shared edges. A closed
//! surface with Euler characteristic 2 is a sphere.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cycle::{Cycle, CycleError, SubgraphPiece};
use crate::graph::Graph;

/// A set of faces on a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSystem {
    faces: Vec<Cycle>,
}

impl CycleSystem {
    /// Faces are deduplicated and sorted.
    pub fn new(faces: impl IntoIterator<Item = Cycle>) -> Self {
        let set: BTreeSet<Cycle> = faces.into_iter().collect();
        CycleSystem {
            faces: set.into_iter().collect(),
        }
    }

    pub fn from_sequences<S: AsRef<str>>(faces: &[&[S]]) -> Result<Self, CycleError> {
        let cycles = faces
            .iter()
            .map(|f| Cycle::new(f.iter().map(|s| s.as_ref().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycleSystem::new(cycles))
    }

    pub fn faces(&self) -> &[Cycle] {
        &self.faces
    }

    pub fn validate_in(&self, host: &Graph) -> Result<(), CycleError> {
        self.faces.iter().try_for_each(|f| f.validate_in(host))
    }

    pub fn without_face(&self, index: usize) -> CycleSystem {
        let mut faces = self.faces.clone();
        faces.remove(index);
        CycleSystem { faces }
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> CycleSystem {
        CycleSystem::new(self.faces.iter().map(|c| c.relabel(&f)))
    }
}

/// Wire format: `{"faces": [["b","e","f"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSystemJson {
    pub faces: Vec<Cycle>,
}

impl Serialize for CycleSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycleSystemJson {
            faces: self.faces.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycleSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(CycleSystem::new(CycleSystemJson::deserialize(d)?.faces))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    EdgeDegree,
    VertexLink,
    Disconnected,
    Chi,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceFailure {
    pub kind: FailureKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceVerdict {
    pub is_closed_surface: bool,
    pub is_sphere: bool,
    pub euler_characteristic: i64,
    pub failures: Vec<SurfaceFailure>,
}

/// Union of the faces' vertices and edges.
pub fn carrier(sys: &CycleSystem) -> SubgraphPiece {
    sys.faces
        .iter()
        .fold(SubgraphPiece::default(), |acc, f| acc.union(&f.as_piece()))
}

/// V - E + F of the complex.
pub fn euler_characteristic(sys: &CycleSystem) -> i64 {
    let c = carrier(sys);
    c.vertices.len() as i64 - c.edges.len() as i64 + sys.faces.len() as i64
}

pub fn system_pair_intersection(s1: &CycleSystem, s2: &CycleSystem) -> SubgraphPiece {
    carrier(s1).intersection(&carrier(s2))
}

pub fn is_combinatorial_sphere(sys: &CycleSystem) -> SurfaceVerdict {
    let c = carrier(sys);
    let chi = euler_characteristic(sys);
    let mut failures = Vec::new();

    let mut faces_on_edge: BTreeMap<&(String, String), Vec<usize>> = BTreeMap::new();
    let face_edges: Vec<BTreeSet<(String, String)>> =
        sys.faces.iter().map(Cycle::edge_set).collect();
    for (fi, es) in face_edges.iter().enumerate() {
        for e in es {
            faces_on_edge.entry(e).or_default().push(fi);
        }
    }
    for (e, fs) in &faces_on_edge {
        if fs.len() != 2 {
            failures.push(SurfaceFailure {
                kind: FailureKind::EdgeDegree,
                detail: format!("edge {}{} lies on {} face(s)", e.0, e.1, fs.len()),
            });
        }
    }

    for v in &c.vertices {
        let around: Vec<usize> = (0..sys.faces.len())
            .filter(|&i| sys.faces[i].contains(v))
            .collect();
        // link graph: faces at v, joined through each edge at v that has exactly two faces
        let links: Vec<(usize, usize)> = faces_on_edge
            .iter()
            .filter(|(e, fs)| (e.0 == *v || e.1 == *v) && fs.len() == 2)
            .map(|(_, fs)| (fs[0], fs[1]))
            .collect();
        if !is_single_cycle(&around, &links) {
            failures.push(SurfaceFailure {
                kind: FailureKind::VertexLink,
                detail: format!("faces around {v} do not form a single closed fan"),
            });
        }
    }

    let n = sys.faces.len();
    let components = {
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(f) = stack.pop() {
                for e in &face_edges[f] {
                    for &g in &faces_on_edge[e] {
                        if !seen[g] {
                            seen[g] = true;
                            stack.push(g);
                        }
                    }
                }
            }
        }
        count
    };
    if components != 1 {
        failures.push(SurfaceFailure {
            kind: FailureKind::Disconnected,
            detail: format!("faces form {components} edge-connected components"),
        });
    }

    let is_closed_surface = failures.is_empty();
    if chi != 2 {
        failures.push(SurfaceFailure {
            kind: FailureKind::Chi,
            detail: format!("euler characteristic {chi}, expected 2"),
        });
    }
    SurfaceVerdict {
        is_closed_surface,
        is_sphere: is_closed_surface && chi == 2,
        euler_characteristic: chi,
        failures,
    }
}

/// True when `links` (a multigraph on `nodes`) is one cycle through every
/// node. Two nodes joined by two parallel links count as a cycle.
fn is_single_cycle(nodes: &[usize], links: &[(usize, usize)]) -> bool {
    if nodes.len() < 2 || links.len() != nodes.len() {
        return false;
    }
    let mut deg: BTreeMap<usize, usize> = nodes.iter().map(|&n| (n, 0)).collect();
    for &(a, b) in links {
        *deg.get_mut(&a).expect("link endpoint is a node") += 1;
        *deg.get_mut(&b).expect("link endpoint is a node") += 1;
    }
    if deg.values().any(|&d| d != 2) {
        return false;
    }
    let mut seen = BTreeSet::from([nodes[0]]);
    let mut stack = vec![nodes[0]];
    while let Some(x) = stack.pop() {
        for &(a, b) in links {
            let other = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if seen.insert(other) {
                stack.push(other);
            }
        }
    }
    seen.len() == nodes.len()
}
