use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{BaseKind, Certificate, CertificateError};
use crate::cycle::{
    cycle_intersection, is_bohme_system, piece_components, sorted_pair, Cycle, SubgraphPiece,
};
use crate::graph::Graph;
use crate::sphere::{carrier, is_combinatorial_sphere};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    CyclesValid,
    BohmeSystem,
    EachSystemSphere,
    BaseShared,
    PairwiseOverlapExact,
    ConnectorDisjointness,
    ConnectorConnectivity,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::CyclesValid,
        CheckName::BohmeSystem,
        CheckName::EachSystemSphere,
        CheckName::BaseShared,
        CheckName::PairwiseOverlapExact,
        CheckName::ConnectorDisjointness,
        CheckName::ConnectorConnectivity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::CyclesValid => "cycles-valid",
            CheckName::BohmeSystem => "bohme-system",
            CheckName::EachSystemSphere => "each-system-sphere",
            CheckName::BaseShared => "base-shared",
            CheckName::PairwiseOverlapExact => "pairwise-overlap-exact",
            CheckName::ConnectorDisjointness => "connector-disjointness",
            CheckName::ConnectorConnectivity => "connector-connectivity",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: CheckName,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn check(&self, name: CheckName) -> &Check {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .expect("all checks are reported")
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

fn outcome(name: CheckName, witness: Option<String>) -> Check {
    Check {
        name,
        pass: witness.is_none(),
        witness,
    }
}

/// Runs every check against `g`. Shape problems, and vertices the graph
/// does not have, are errors rather than failed checks.
pub fn verify_certificate(
    g: &Graph,
    cert: &Certificate,
) -> Result<VerificationReport, CertificateError> {
    cert.validate_shape()?;
    if let Some(v) = cert
        .referenced_vertices()
        .into_iter()
        .find(|v| !g.contains_vertex(v))
    {
        return Err(CertificateError::UnknownVertex(v));
    }

    let carriers: Vec<SubgraphPiece> = cert.systems.iter().map(carrier).collect();
    let off_base: Vec<BTreeSet<String>> = carriers
        .iter()
        .map(|c| {
            c.vertices
                .difference(&cert.base.vertices)
                .cloned()
                .collect()
        })
        .collect();
    let all_faces: Vec<Cycle> = cert
        .systems
        .iter()
        .flat_map(|s| s.faces().iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut checks = Vec::with_capacity(7);

    let invalid = cert.systems.iter().enumerate().find_map(|(i, s)| {
        s.validate_in(g)
            .err()
            .map(|e| format!("system {}: {e}", i + 1))
    });
    checks.push(outcome(CheckName::CyclesValid, invalid));

    let bohme = if all_faces.iter().all(|f| f.validate_in(g).is_ok()) {
        let v = is_bohme_system(&all_faces, g).expect("faces validated");
        v.witness.map(|(a, b)| {
            let p = cycle_intersection(&a, &b);
            format!(
                "{a} and {b} meet in {p} ({} components)",
                piece_components(&p)
            )
        })
    } else {
        Some("skipped: some face is not a cycle of the graph".to_string())
    };
    checks.push(outcome(CheckName::BohmeSystem, bohme));

    let not_sphere = cert.systems.iter().enumerate().find_map(|(i, s)| {
        let v = is_combinatorial_sphere(s);
        (!v.is_sphere).then(|| {
            let reasons: Vec<&str> = v.failures.iter().map(|f| f.detail.as_str()).collect();
            format!("system {}: {}", i + 1, reasons.join("; "))
        })
    });
    checks.push(outcome(CheckName::EachSystemSphere, not_sphere));

    let base_cycle = match cert.base_kind {
        BaseKind::Cycle => cert.base_cycle(),
        BaseKind::Y => None,
    };
    let unshared = (0..3).find_map(|i| {
        if !carriers[i].contains(&cert.base) {
            return Some(format!(
                "carrier of system {} does not contain the base",
                i + 1
            ));
        }
        match &base_cycle {
            Some(c) if !cert.systems[i].faces().contains(c) => {
                Some(format!("base cycle {c} is not a face of system {}", i + 1))
            }
            _ => None,
        }
    });
    checks.push(outcome(CheckName::BaseShared, unshared));

    let declared: BTreeMap<(usize, usize), &SubgraphPiece> = cert
        .extra_overlaps
        .iter()
        .map(|o| (o.pair, &o.piece))
        .collect();
    let overlap_mismatch = [(0, 1), (0, 2), (1, 2)].into_iter().find_map(|(i, j)| {
        let actual = carriers[i].intersection(&carriers[j]);
        let expected = match declared.get(&(i, j)) {
            Some(extra) => cert.base.union(extra),
            None => cert.base.clone(),
        };
        (actual != expected).then(|| {
            format!(
                "systems {} and {} meet in {actual}, expected {expected}",
                i + 1,
                j + 1
            )
        })
    });
    checks.push(outcome(CheckName::PairwiseOverlapExact, overlap_mismatch));

    checks.push(outcome(
        CheckName::ConnectorDisjointness,
        connector_disjointness(g, cert, &carriers, &off_base),
    ));
    checks.push(outcome(
        CheckName::ConnectorConnectivity,
        connector_connectivity(cert, &carriers, &off_base, &declared),
    ));

    Ok(VerificationReport {
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

fn in_any_carrier(carriers: &[SubgraphPiece], v: &str) -> bool {
    carriers.iter().any(|c| c.vertices.contains(v))
}

fn systems_touching(off_base: &[BTreeSet<String>], v: &str) -> Vec<usize> {
    (0..off_base.len())
        .filter(|&i| off_base[i].contains(v))
        .collect()
}

fn connector_disjointness(
    g: &Graph,
    cert: &Certificate,
    carriers: &[SubgraphPiece],
    off_base: &[BTreeSet<String>],
) -> Option<String> {
    for (ci, path) in cert.connectors.iter().enumerate() {
        let name = format!("connector {} ({})", ci + 1, path.join("-"));
        for w in path.windows(2) {
            if !g.has_edge(&w[0], &w[1]) {
                return Some(format!("{name}: `{}`-`{}` is not an edge", w[0], w[1]));
            }
            let e = sorted_pair(&w[0], &w[1]);
            if carriers.iter().any(|c| c.edges.contains(&e)) {
                return Some(format!("{name}: edge {}{} lies on a sphere", e.0, e.1));
            }
        }
        for v in &path[1..path.len() - 1] {
            if in_any_carrier(carriers, v) {
                return Some(format!("{name}: internal vertex {v} lies on a sphere"));
            }
        }
        let ends = [&path[0], &path[path.len() - 1]];
        let mut attached = Vec::new();
        for v in ends {
            if in_any_carrier(carriers, v) {
                let touching = systems_touching(off_base, v);
                if touching.is_empty() {
                    return Some(format!("{name}: endpoint {v} lies on the base"));
                }
                attached.push(touching);
            }
        }
        match attached.as_slice() {
            [] => return Some(format!("{name}: no endpoint on a sphere")),
            [a, b] => {
                let distinct = a.iter().any(|i| b.iter().any(|j| i != j));
                if !distinct {
                    return Some(format!("{name}: both endpoints lie on the same sphere"));
                }
            }
            _ => {}
        }
    }
    None
}

/// Groups connector edges into bridges: connected pieces whose interior
/// avoids every carrier, with their attachment vertices on carriers. A
/// bridge joins systems `i` and `j` when it attaches at distinct vertices
/// off the base of `i` and of `j`. All three pairs of systems must be
/// joined, counting declared overlaps as joins for `P10_PATTERN`.
fn connector_connectivity(
    cert: &Certificate,
    carriers: &[SubgraphPiece],
    off_base: &[BTreeSet<String>],
    declared: &BTreeMap<(usize, usize), &SubgraphPiece>,
) -> Option<String> {
    let mut edges: BTreeSet<(String, String)> = BTreeSet::new();
    for path in &cert.connectors {
        for w in path.windows(2) {
            edges.insert(sorted_pair(&w[0], &w[1]));
        }
    }
    let on_carrier = |v: &str| in_any_carrier(carriers, v);

    // union-find over off-carrier vertices
    let mut parent: BTreeMap<String, String> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<String, String>, v: &str) -> String {
        let mut r = v.to_string();
        while parent[&r] != r {
            r = parent[&r].clone();
        }
        r
    }
    for (a, b) in &edges {
        for v in [a, b] {
            if !on_carrier(v) {
                parent.entry(v.clone()).or_insert_with(|| v.clone());
            }
        }
    }
    for (a, b) in &edges {
        if !on_carrier(a) && !on_carrier(b) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent.insert(ra, rb);
            }
        }
    }

    let mut bridges: Vec<BTreeSet<String>> = Vec::new();
    let mut by_root: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (a, b) in &edges {
        match (on_carrier(a), on_carrier(b)) {
            (true, true) => bridges.push([a.clone(), b.clone()].into()),
            (true, false) => {
                let r = find(&mut parent, b);
                by_root.entry(r).or_default().insert(a.clone());
            }
            (false, true) => {
                let r = find(&mut parent, a);
                by_root.entry(r).or_default().insert(b.clone());
            }
            (false, false) => {}
        }
    }
    bridges.extend(by_root.into_values());

    let mut joined: BTreeSet<(usize, usize)> = declared.keys().copied().collect();
    for attachments in &bridges {
        let att: Vec<&String> = attachments.iter().collect();
        for (x, u) in att.iter().enumerate() {
            for w in &att[x + 1..] {
                for i in systems_touching(off_base, u) {
                    for j in systems_touching(off_base, w) {
                        if i != j {
                            joined.insert((i.min(j), i.max(j)));
                        }
                    }
                }
            }
        }
    }
    let missing: Vec<String> = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .filter(|p| !joined.contains(p))
        .map(|(i, j)| format!("{}-{}", i + 1, j + 1))
        .collect();
    (!missing.is_empty()).then(|| format!("no connection between systems {}", missing.join(", ")))
}

/// Every certificate obtained by deleting exactly one face, one connector
/// or one base edge, with a short description of the deletion.
pub fn single_deletion_mutants(cert: &Certificate) -> Vec<(String, Certificate)> {
    let mut out = Vec::new();
    for (si, s) in cert.systems.iter().enumerate() {
        for (fi, f) in s.faces().iter().enumerate() {
            let mut m = cert.clone();
            m.systems[si] = s.without_face(fi);
            out.push((format!("delete face {f} from system {}", si + 1), m));
        }
    }
    for (ci, c) in cert.connectors.iter().enumerate() {
        let mut m = cert.clone();
        m.connectors.remove(ci);
        out.push((format!("delete connector {}", c.join("-")), m));
    }
    for e in &cert.base.edges {
        let mut m = cert.clone();
        m.base.edges.remove(e);
        out.push((format!("delete base edge {}{}", e.0, e.1), m));
    }
    out
}
