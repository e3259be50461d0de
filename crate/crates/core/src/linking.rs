//! Straight-line spatial embeddings with integer coordinates, exact
//! linking numbers of disjoint cycles, and the mod-2 invariant ω.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycle::{enumerate_cycles, Cycle, CycleError};
use crate::graph::Graph;
use crate::par::{self, Execution};

pub type Point = [i64; 3];

/// Shears tried before giving up on a pair of polygons.
pub const SHEAR_BUDGET: usize = 64;

/// Attempts made by [`random_embedding`] before giving up.
pub const RESAMPLE_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    host: Graph,
    coords: BTreeMap<String, Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("vertex `{0}` has no coordinates")]
    MissingVertex(String),
    #[error("coordinates given for `{0}`, which is not a vertex")]
    UnknownVertex(String),
    #[error("radius {radius} is smaller than the vertex count {vertices}")]
    RadiusTooSmall { radius: i64, vertices: usize },
    #[error("no general-position embedding found after {0} attempts")]
    BudgetExhausted(usize),
    #[error("malformed embedding JSON {0}")]
    Json(String),
}

/// Wire format: `{"coords": {"a": [x, y, z], ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingJson {
    pub coords: BTreeMap<String, Point>,
}

impl Embedding {
    /// Every host vertex needs coordinates, and nothing else may have any.
    /// General position is checked separately by [`validate_embedding`].
    pub fn new(host: Graph, coords: BTreeMap<String, Point>) -> Result<Self, EmbeddingError> {
        if let Some(v) = host.vertices().iter().find(|v| !coords.contains_key(*v)) {
            return Err(EmbeddingError::MissingVertex(v.clone()));
        }
        if let Some(v) = coords.keys().find(|v| !host.contains_vertex(v)) {
            return Err(EmbeddingError::UnknownVertex(v.clone()));
        }
        Ok(Embedding { host, coords })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn coords(&self) -> &BTreeMap<String, Point> {
        &self.coords
    }

    pub fn point(&self, v: &str) -> Option<Point> {
        self.coords.get(v).copied()
    }

    pub fn map_points(&self, f: impl Fn(Point) -> Point) -> Embedding {
        Embedding {
            host: self.host.clone(),
            coords: self
                .coords
                .iter()
                .map(|(k, &p)| (k.clone(), f(p)))
                .collect(),
        }
    }

    pub fn to_json(&self) -> EmbeddingJson {
        EmbeddingJson {
            coords: self.coords.clone(),
        }
    }

    pub fn from_json_str(host: Graph, s: &str) -> Result<Self, EmbeddingError> {
        let de = &mut serde_json::Deserializer::from_str(s);
        let j: EmbeddingJson = serde_path_to_error::deserialize(de)
            .map_err(|e| EmbeddingError::Json(format!("at `{}`: {}", e.path(), e.inner())))?;
        Embedding::new(host, j.coords)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Coincident {
        a: String,
        b: String,
    },
    Collinear {
        a: String,
        b: String,
        c: String,
    },
    EdgesMeet {
        e: (String, String),
        f: (String, String),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Coincident { a, b } => write!(f, "vertices {a} and {b} coincide"),
            Violation::Collinear { a, b, c } => write!(f, "vertices {a}, {b}, {c} are collinear"),
            Violation::EdgesMeet { e, f: g } => {
                write!(
                    f,
                    "edges {}{} and {}{} meet away from a shared endpoint",
                    e.0, e.1, g.0, g.1
                )
            }
        }
    }
}

type V3 = [i128; 3];

fn wide(p: Point) -> V3 {
    [p[0] as i128, p[1] as i128, p[2] as i128]
}

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: V3, b: V3) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn collinear(a: V3, b: V3, c: V3) -> bool {
    cross(sub(b, a), sub(c, a)) == [0, 0, 0]
}

/// Closed segments `pq` and `rs` share a point. Assumes no three of the
/// four points are collinear, which makes every touching case a proper
/// crossing inside a common plane.
fn segments_meet(p: V3, q: V3, r: V3, s: V3) -> bool {
    if dot(cross(sub(q, p), sub(r, p)), sub(s, p)) != 0 {
        return false;
    }
    let n = cross(sub(q, p), sub(r, p));
    let side = |a: V3, b: V3, c: V3| dot(cross(sub(b, a), sub(c, a)), n).signum();
    side(p, q, r) * side(p, q, s) < 0 && side(r, s, p) * side(r, s, q) < 0
}

/// First general-position violation: coincident points, then collinear
/// triples, then pairs of disjoint edges that meet.
pub fn validate_embedding(e: &Embedding) -> Result<(), Violation> {
    let names: Vec<&String> = e.coords.keys().collect();
    let pts: Vec<V3> = e.coords.values().map(|&p| wide(p)).collect();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            if pts[i] == pts[j] {
                return Err(Violation::Coincident {
                    a: names[i].clone(),
                    b: names[j].clone(),
                });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if collinear(pts[i], pts[j], pts[k]) {
                    return Err(Violation::Collinear {
                        a: names[i].clone(),
                        b: names[j].clone(),
                        c: names[k].clone(),
                    });
                }
            }
        }
    }
    let edges: Vec<(&str, &str)> = e.host.edges().collect();
    let at = |v: &str| wide(e.coords[v]);
    for (x, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[x + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if segments_meet(at(a), at(b), at(c), at(d)) {
                return Err(Violation::EdgesMeet {
                    e: (a.to_string(), b.to_string()),
                    f: (c.to_string(), d.to_string()),
                });
            }
        }
    }
    Ok(())
}

/// Coordinates drawn uniformly from `[-radius, radius]^3` with a ChaCha8
/// stream seeded by `seed`, redrawn until the embedding is in general
/// position.
pub fn random_embedding(g: &Graph, seed: u64, radius: i64) -> Result<Embedding, EmbeddingError> {
    let n = g.vertex_count();
    if radius < n as i64 {
        return Err(EmbeddingError::RadiusTooSmall {
            radius,
            vertices: n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RESAMPLE_BUDGET {
        let coords: BTreeMap<String, Point> = g
            .vertices()
            .iter()
            .map(|v| {
                let p = [(); 3].map(|_| rng.gen_range(-radius..=radius));
                (v.clone(), p)
            })
            .collect();
        let e = Embedding {
            host: g.clone(),
            coords,
        };
        if validate_embedding(&e).is_ok() {
            return Ok(e);
        }
    }
    Err(EmbeddingError::BudgetExhausted(RESAMPLE_BUDGET))
}

/// Places the `i`-th vertex (in label order) at `(t, t², t³)` with
/// `t = i + 1`.
pub fn moment_curve_embedding(g: &Graph) -> Embedding {
    let coords = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let t = i as i64 + 1;
            (v.clone(), [t, t * t, t * t * t])
        })
        .collect();
    Embedding {
        host: g.clone(),
        coords,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkingError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("cycles {0} and {1} share a vertex")]
    NotDisjoint(String, String),
    #[error("vertex `{0}` has no coordinates")]
    MissingVertex(String),
    #[error("polygons touch")]
    PolygonsMeet,
    #[error("no generic projection among the first {0} shears")]
    NoGenericShear(usize),
    #[error("shears {0:?} and {1:?} disagree ({2} vs {3})")]
    ShearDisagreement((i64, i64), (i64, i64), i64, i64),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    /// Segment `i` runs from vertex `i` to vertex `i + 1` of its polygon.
    pub segment_a: usize,
    pub segment_b: usize,
    pub sign: i8,
}

/// Crossings between two polygons under the projection
/// `(x, y, z) ↦ (x + p·z, y + q·z)`, viewed from `z = +∞`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagram {
    pub shear: (i64, i64),
    pub crossings: Vec<Crossing>,
}

impl Diagram {
    pub fn linking_number(&self) -> i64 {
        let total: i64 = self.crossings.iter().map(|c| c.sign as i64).sum();
        debug_assert!(total % 2 == 0);
        total / 2
    }
}

/// Shear parameters in order of growing max-norm, the origin first.
pub fn shear_sequence() -> impl Iterator<Item = (i64, i64)> {
    (0i64..).flat_map(|r| {
        let ring: Vec<(i64, i64)> = (-r..=r)
            .flat_map(|p| (-r..=r).map(move |q| (p, q)))
            .filter(|&(p, q)| p.abs().max(q.abs()) == r)
            .collect();
        ring
    })
}

type P2 = [i128; 2];

fn cross2(a: P2, b: P2) -> i128 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub2(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn orient2(a: P2, b: P2, c: P2) -> i128 {
    cross2(sub2(b, a), sub2(c, a))
}

fn within(a: P2, b: P2, c: P2) -> bool {
    a[0].min(b[0]) <= c[0]
        && c[0] <= a[0].max(b[0])
        && a[1].min(b[1]) <= c[1]
        && c[1] <= a[1].max(b[1])
}

enum Meet {
    Apart,
    Cross(i8),
    Degenerate,
    Touch3d,
}

fn meet(a1: V3, a2: V3, b1: V3, b2: V3, (p, q): (i64, i64)) -> Meet {
    let (p, q) = (p as i128, q as i128);
    let pr = |v: V3| -> P2 { [v[0] + p * v[2], v[1] + q * v[2]] };
    let (pa1, pa2, pb1, pb2) = (pr(a1), pr(a2), pr(b1), pr(b2));
    let o1 = orient2(pa1, pa2, pb1);
    let o2 = orient2(pa1, pa2, pb2);
    let o3 = orient2(pb1, pb2, pa1);
    let o4 = orient2(pb1, pb2, pa2);
    if o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0 {
        let touches = (o1 == 0 && within(pa1, pa2, pb1))
            || (o2 == 0 && within(pa1, pa2, pb2))
            || (o3 == 0 && within(pb1, pb2, pa1))
            || (o4 == 0 && within(pb1, pb2, pa2));
        return if touches {
            Meet::Degenerate
        } else {
            Meet::Apart
        };
    }
    if o1.signum() == o2.signum() || o3.signum() == o4.signum() {
        return Meet::Apart;
    }
    let da = sub2(pa2, pa1);
    let db = sub2(pb2, pb1);
    let w = sub2(pb1, pa1);
    let d = cross2(da, db);
    // d · (z_a − z_b) at the crossing point
    let height =
        (a1[2] - b1[2]) * d + cross2(w, db) * (a2[2] - a1[2]) - cross2(w, da) * (b2[2] - b1[2]);
    if height == 0 {
        return Meet::Touch3d;
    }
    let a_above = (height > 0) == (d > 0);
    let sign = d.signum() as i8 * if a_above { 1 } else { -1 };
    Meet::Cross(sign)
}

/// Crossing diagram of two closed polygons under one shear, or `None`
/// when that projection is not generic.
pub fn diagram(
    a: &[Point],
    b: &[Point],
    shear: (i64, i64),
) -> Result<Option<Diagram>, LinkingError> {
    let a: Vec<V3> = a.iter().map(|&p| wide(p)).collect();
    let b: Vec<V3> = b.iter().map(|&p| wide(p)).collect();
    let mut crossings = Vec::new();
    for i in 0..a.len() {
        let (a1, a2) = (a[i], a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            let (b1, b2) = (b[j], b[(j + 1) % b.len()]);
            match meet(a1, a2, b1, b2, shear) {
                Meet::Apart => {}
                Meet::Cross(sign) => crossings.push(Crossing {
                    segment_a: i,
                    segment_b: j,
                    sign,
                }),
                Meet::Degenerate => return Ok(None),
                Meet::Touch3d => return Err(LinkingError::PolygonsMeet),
            }
        }
    }
    Ok(Some(Diagram { shear, crossings }))
}

/// Linking number of two disjoint closed polygons with at least three
/// vertices each. Computed under the first two generic shears, which must
/// agree.
pub fn polygon_linking_number(a: &[Point], b: &[Point]) -> Result<i64, LinkingError> {
    let mut first: Option<Diagram> = None;
    for shear in shear_sequence().take(SHEAR_BUDGET) {
        let Some(d) = diagram(a, b, shear)? else {
            continue;
        };
        match &first {
            None => first = Some(d),
            Some(f) => {
                let (x, y) = (f.linking_number(), d.linking_number());
                if x != y {
                    return Err(LinkingError::ShearDisagreement(f.shear, d.shear, x, y));
                }
                return Ok(x);
            }
        }
    }
    Err(LinkingError::NoGenericShear(SHEAR_BUDGET))
}

fn polygon(e: &Embedding, c: &Cycle) -> Result<Vec<Point>, LinkingError> {
    c.vertices()
        .iter()
        .map(|v| {
            e.point(v)
                .ok_or_else(|| LinkingError::MissingVertex(v.clone()))
        })
        .collect()
}

/// Linking number of two vertex-disjoint cycles of the host, each oriented
/// along its vertex sequence.
pub fn linking_number(e: &Embedding, a: &Cycle, b: &Cycle) -> Result<i64, LinkingError> {
    a.validate_in(&e.host)?;
    b.validate_in(&e.host)?;
    if a.vertices().iter().any(|v| b.contains(v)) {
        return Err(LinkingError::NotDisjoint(a.to_string(), b.to_string()));
    }
    polygon_linking_number(&polygon(e, a)?, &polygon(e, b)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DisjointMode {
    TrianglesOnly,
    #[default]
    AllDisjointCycles,
}

impl DisjointMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DisjointMode::TrianglesOnly => "TRIANGLES_ONLY",
            DisjointMode::AllDisjointCycles => "ALL_DISJOINT_CYCLES",
        }
    }
}

/// Unordered pairs of vertex-disjoint cycles (or triangles), each pair
/// with its smaller cycle first, sorted.
pub fn disjoint_cycle_pairs(g: &Graph, mode: DisjointMode) -> Vec<(Cycle, Cycle)> {
    let cap = match mode {
        DisjointMode::TrianglesOnly => Some(3),
        DisjointMode::AllDisjointCycles => None,
    };
    let cycles = enumerate_cycles(g, cap, false);
    let mut out = Vec::new();
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            if !a.vertices().iter().any(|v| b.contains(v)) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairLink {
    pub cycle_a: Cycle,
    pub cycle_b: Cycle,
    pub lk: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub pairs: Vec<PairLink>,
    pub parity: u8,
    pub mode: DisjointMode,
}

impl OmegaReport {
    pub fn has_nonzero_pair(&self) -> bool {
        self.pairs.iter().any(|p| p.lk != 0)
    }
}

pub fn omega(e: &Embedding, mode: DisjointMode) -> Result<OmegaReport, LinkingError> {
    omega_with(e, mode, Execution::default())
}

/// Linking number of every disjoint pair of the host, and their sum
/// mod 2.
pub fn omega_with(
    e: &Embedding,
    mode: DisjointMode,
    exec: Execution,
) -> Result<OmegaReport, LinkingError> {
    let pairs = disjoint_cycle_pairs(&e.host, mode);
    let lks = par::map(exec, &pairs, |(a, b)| linking_number(e, a, b));
    let mut out = Vec::with_capacity(pairs.len());
    for ((a, b), lk) in pairs.into_iter().zip(lks) {
        out.push(PairLink {
            cycle_a: a,
            cycle_b: b,
            lk: lk?,
        });
    }
    let parity = out.iter().map(|p| p.lk).sum::<i64>().rem_euclid(2) as u8;
    Ok(OmegaReport {
        pairs: out,
        parity,
        mode,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaTrial {
    pub seed: u64,
    pub report: OmegaReport,
}

/// [`omega`] on one random embedding per seed, in seed order.
pub fn omega_trials(
    g: &Graph,
    seeds: &[u64],
    radius: i64,
    mode: DisjointMode,
    exec: Execution,
) -> Result<Vec<OmegaTrial>, LinkingError> {
    par::map(exec, seeds, |&seed| {
        let e = random_embedding(g, seed, radius)?;
        let report = omega_with(&e, mode, Execution::Sequential)?;
        Ok(OmegaTrial { seed, report })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyName;

    fn tri(pts: [Point; 3]) -> Vec<Point> {
        pts.to_vec()
    }

    #[test]
    fn separated_triangles_are_unlinked() {
        let a = tri([[0, 0, 0], [4, 0, 1], [0, 4, 2]]);
        let b = tri([[10, 0, 0], [14, 1, 0], [11, 5, 3]]);
        assert_eq!(polygon_linking_number(&a, &b).unwrap(), 0);
    }

    #[test]
    fn threaded_square() {
        let a = vec![[2, 0, 0], [0, 2, 0], [-2, 0, 0], [0, -2, 0]];
        let b = tri([[0, 0, 2], [0, 4, 0], [0, 0, -2]]);
        let lk = polygon_linking_number(&a, &b).unwrap();
        assert_eq!(lk.abs(), 1);
        let rev: Vec<Point> = b.iter().rev().copied().collect();
        assert_eq!(polygon_linking_number(&a, &rev).unwrap(), -lk);
        assert_eq!(polygon_linking_number(&b, &a).unwrap(), lk);
    }

    #[test]
    fn touching_polygons_are_rejected() {
        let a = tri([[0, 0, 0], [4, 0, 0], [0, 4, 0]]);
        let b = tri([[2, 0, -1], [2, 0, 1], [5, 5, 5]]);
        assert_eq!(
            polygon_linking_number(&a, &b),
            Err(LinkingError::PolygonsMeet)
        );
    }

    #[test]
    fn shears_start_at_origin() {
        let s: Vec<(i64, i64)> = shear_sequence().take(10).collect();
        assert_eq!(s[0], (0, 0));
        assert_eq!(s.len(), 10);
        assert!(s[1..9].iter().all(|&(p, q)| p.abs().max(q.abs()) == 1));
    }

    #[test]
    fn validation_witnesses() {
        let g = Graph::complete(["a", "b", "c"]).unwrap();
        let line: BTreeMap<String, Point> = [("a", [0, 0, 0]), ("b", [1, 1, 1]), ("c", [3, 3, 3])]
            .map(|(k, p)| (k.to_string(), p))
            .into();
        let e = Embedding::new(g.clone(), line).unwrap();
        assert!(matches!(
            validate_embedding(&e),
            Err(Violation::Collinear { .. })
        ));

        let g = Graph::new(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]).unwrap();
        let x: BTreeMap<String, Point> = [
            ("a", [0, 0, 0]),
            ("b", [2, 2, 0]),
            ("c", [2, 0, 0]),
            ("d", [0, 2, 0]),
        ]
        .map(|(k, p)| (k.to_string(), p))
        .into();
        let e = Embedding::new(g, x).unwrap();
        assert_eq!(
            validate_embedding(&e),
            Err(Violation::EdgesMeet {
                e: ("a".into(), "b".into()),
                f: ("c".into(), "d".into())
            })
        );
    }

    #[test]
    fn moment_curve_k6() {
        let e = moment_curve_embedding(&FamilyName::K6.graph());
        assert_eq!(validate_embedding(&e), Ok(()));
        let r = omega(&e, DisjointMode::TrianglesOnly).unwrap();
        assert_eq!(r.pairs.len(), 10);
        assert_eq!(r.parity, 1);
    }

    #[test]
    fn random_embedding_is_deterministic() {
        let g = FamilyName::K6.graph();
        let e1 = random_embedding(&g, 1, 100).unwrap();
        assert_eq!(e1, random_embedding(&g, 1, 100).unwrap());
        assert_ne!(e1, random_embedding(&g, 2, 100).unwrap());
        assert_eq!(
            random_embedding(&g, 1, 5),
            Err(EmbeddingError::RadiusTooSmall {
                radius: 5,
                vertices: 6
            })
        );
        let p10 = random_embedding(&FamilyName::P10.graph(), 7, 1000).unwrap();
        assert_eq!(validate_embedding(&p10), Ok(()));
    }

    #[test]
    fn pair_counts() {
        assert_eq!(
            disjoint_cycle_pairs(&FamilyName::K6.graph(), DisjointMode::TrianglesOnly).len(),
            10
        );
        let pairs = disjoint_cycle_pairs(&FamilyName::P10.graph(), DisjointMode::AllDisjointCycles);
        assert_eq!(pairs.len(), 6);
        assert!(pairs.iter().all(|(a, b)| a.len() == 5 && b.len() == 5));
        let c5 = Graph::new(
            ["1", "2", "3", "4", "5"],
            [("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "1")],
        )
        .unwrap();
        assert!(disjoint_cycle_pairs(&c5, DisjointMode::AllDisjointCycles).is_empty());
        let e = random_embedding(&c5, 3, 50).unwrap();
        let r = omega(&e, DisjointMode::AllDisjointCycles).unwrap();
        assert_eq!((r.parity, r.pairs.len()), (0, 0));
    }

    #[test]
    fn rejects_shared_vertex() {
        let g = FamilyName::K6.graph();
        let e = moment_curve_embedding(&g);
        let a = Cycle::new(["a", "b", "c"]).unwrap();
        let b = Cycle::new(["c", "d", "e"]).unwrap();
        assert!(matches!(
            linking_number(&e, &a, &b),
            Err(LinkingError::NotDisjoint(..))
        ));
    }
}
