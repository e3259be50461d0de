use std::collections::BTreeSet;

use thiserror::Error;

use super::{verify_certificate, BaseKind, Certificate, ExtraOverlap, Schema};
use crate::cycle::{enumerate_cycles, sorted_pair, SubgraphPiece};
use crate::family::identify_family_member;
use crate::graph::Graph;
use crate::par::{self, Execution};
use crate::sphere::{carrier, is_combinatorial_sphere, CycleSystem};

pub const MAX_SEARCH_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    /// Longest base cycle tried. Y bases are always tried when `Y_BASE`
    /// is among the schemas.
    pub max_base_len: usize,
    pub schemas: Vec<Schema>,
    pub max_results: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_base_len: 6,
            schemas: Schema::ALL.to_vec(),
            max_results: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("graph has {0} vertices, search supports at most {MAX_SEARCH_VERTICES}")]
    TooManyVertices(usize),
    #[error("max_base_len must be at least 3, got {0}")]
    BaseLenTooSmall(usize),
    #[error("no schemas requested")]
    NoSchemas,
    #[error("max_results must be positive")]
    NoResults,
}

pub fn search_certificates(
    g: &Graph,
    bounds: &SearchBounds,
) -> Result<Vec<Certificate>, SearchError> {
    search_certificates_with(g, bounds, Execution::default())
}

/// Exhaustive search over bases, sphere systems built from induced cycles
/// of `G[V(base) ∪ X]`, and short connectors. Every returned certificate
/// verifies. Output is sorted by [`Certificate::canonical_key`] and cut at
/// `max_results`; it does not depend on `exec`.
pub fn search_certificates_with(
    g: &Graph,
    bounds: &SearchBounds,
    exec: Execution,
) -> Result<Vec<Certificate>, SearchError> {
    if g.vertex_count() > MAX_SEARCH_VERTICES {
        return Err(SearchError::TooManyVertices(g.vertex_count()));
    }
    if bounds.max_base_len < 3 {
        return Err(SearchError::BaseLenTooSmall(bounds.max_base_len));
    }
    if bounds.schemas.is_empty() {
        return Err(SearchError::NoSchemas);
    }
    if bounds.max_results == 0 {
        return Err(SearchError::NoResults);
    }
    let schemas: BTreeSet<Schema> = bounds.schemas.iter().copied().collect();
    let name = identify_family_member(g)
        .map_or("unnamed", |n| n.as_str())
        .to_string();

    let mut bases: Vec<(BaseKind, SubgraphPiece)> = Vec::new();
    if schemas.iter().any(|s| s.base_kind() == BaseKind::Cycle) {
        for c in enumerate_cycles(g, Some(bounds.max_base_len), true) {
            bases.push((BaseKind::Cycle, c.as_piece()));
        }
    }
    if schemas.contains(&Schema::YBase) {
        bases.extend(y_bases(g).into_iter().map(|p| (BaseKind::Y, p)));
    }

    let per_base = par::map(exec, &bases, |(kind, base)| {
        let wanted: Vec<Schema> = schemas
            .iter()
            .copied()
            .filter(|s| s.base_kind() == *kind)
            .collect();
        certificates_on_base(g, &name, *kind, base, &wanted)
    });
    let mut found: Vec<Certificate> = per_base.into_iter().flatten().collect();
    found.sort_by_cached_key(Certificate::canonical_key);
    found.dedup_by(|a, b| a.is_equivalent(b));
    found.truncate(bounds.max_results);
    Ok(found)
}

fn y_bases(g: &Graph) -> Vec<SubgraphPiece> {
    let mut out = Vec::new();
    for c in 0..g.vertex_count() {
        let nb = g.neighbors_of(c);
        for x in 0..nb.len() {
            for y in x + 1..nb.len() {
                for z in y + 1..nb.len() {
                    let center = g.label(c);
                    let leaves = [g.label(nb[x]), g.label(nb[y]), g.label(nb[z])];
                    let mut vertices = vec![center];
                    vertices.extend(leaves);
                    let edges: Vec<(&str, &str)> = leaves.iter().map(|&l| (center, l)).collect();
                    out.push(SubgraphPiece::new(&vertices, &edges));
                }
            }
        }
    }
    out
}

struct Candidate {
    system: CycleSystem,
    carrier: SubgraphPiece,
    off: BTreeSet<String>,
}

/// Sphere systems on `G[V(base) ∪ X]` for every nonempty `X` off the base,
/// in order of `|X|` and then the sorted labels of `X`.
fn candidates(g: &Graph, kind: BaseKind, base: &SubgraphPiece) -> Vec<Candidate> {
    let rest: Vec<&String> = g
        .vertices()
        .iter()
        .filter(|v| !base.vertices.contains(*v))
        .collect();
    let mut subsets: Vec<Vec<&String>> = (1u32..1 << rest.len())
        .map(|mask| {
            (0..rest.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| rest[i])
                .collect()
        })
        .collect();
    subsets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let base_cycle = super::piece_as_cycle(base);

    let mut out = Vec::new();
    for x in subsets {
        let verts: Vec<String> = base
            .vertices
            .iter()
            .cloned()
            .chain(x.iter().map(|s| s.to_string()))
            .collect();
        let h = g.induced_subgraph(&verts).expect("vertices of g");
        let faces = enumerate_cycles(&h, None, true);
        if faces.is_empty() {
            continue;
        }
        let system = CycleSystem::new(faces);
        if kind == BaseKind::Cycle
            && !base_cycle
                .as_ref()
                .is_some_and(|c| system.faces().contains(c))
        {
            continue;
        }
        let carrier = carrier(&system);
        if carrier.vertices.len() != verts.len() || !carrier.contains(base) {
            continue;
        }
        if !is_combinatorial_sphere(&system).is_sphere {
            continue;
        }
        let off = carrier
            .vertices
            .difference(&base.vertices)
            .cloned()
            .collect();
        out.push(Candidate {
            system,
            carrier,
            off,
        });
    }
    out
}

fn on_any(cands: [&Candidate; 3], v: &str) -> bool {
    cands.iter().any(|c| c.carrier.vertices.contains(v))
}

fn carrier_edge(cands: [&Candidate; 3], e: &(String, String)) -> bool {
    cands.iter().any(|c| c.carrier.edges.contains(e))
}

/// First graph edge from the off-base part of `i` to that of `j`, avoiding
/// carrier edges.
fn direct_edge(g: &Graph, cands: [&Candidate; 3], i: usize, j: usize) -> Option<Vec<String>> {
    for u in &cands[i].off {
        for w in &cands[j].off {
            if u != w && g.has_edge(u, w) && !carrier_edge(cands, &sorted_pair(u, w)) {
                return Some(vec![u.clone(), w.clone()]);
            }
        }
    }
    None
}

fn triangle_connectors(
    g: &Graph,
    cands: [&Candidate; 3],
    pairs: &[(usize, usize)],
) -> Option<Vec<Vec<String>>> {
    pairs
        .iter()
        .map(|&(i, j)| direct_edge(g, cands, i, j))
        .collect()
}

/// First hub outside every carrier with a neighbor in each off-base part,
/// joined by one spoke per system.
fn hub_connectors(g: &Graph, cands: [&Candidate; 3]) -> Option<Vec<Vec<String>>> {
    for hub in g.vertices() {
        if on_any(cands, hub) {
            continue;
        }
        let nb = g.neighbors(hub).expect("vertex of g");
        let mut spokes = Vec::new();
        for c in cands {
            let spoke = nb.iter().find(|&&w| {
                c.off.contains(w) && !spokes.iter().any(|s: &Vec<String>| s[0] == *w)
            })?;
            spokes.push(vec![spoke.to_string(), hub.clone()]);
        }
        return Some(spokes);
    }
    None
}

fn certificates_on_base(
    g: &Graph,
    name: &str,
    kind: BaseKind,
    base: &SubgraphPiece,
    schemas: &[Schema],
) -> Vec<Certificate> {
    let cands = candidates(g, kind, base);
    let all_pairs = [(0, 1), (0, 2), (1, 2)];
    let mut out = Vec::new();
    let make = |schema: Schema,
                trio: [&Candidate; 3],
                extra: Vec<ExtraOverlap>,
                connectors: Vec<Vec<String>>| Certificate {
        graph_name: name.to_string(),
        schema,
        base_kind: kind,
        base: base.clone(),
        systems: trio.iter().map(|c| c.system.clone()).collect(),
        extra_overlaps: extra,
        connectors,
    };
    for a in 0..cands.len() {
        for b in a + 1..cands.len() {
            for c in b + 1..cands.len() {
                let trio = [&cands[a], &cands[b], &cands[c]];
                let overlaps: Vec<(usize, usize)> = all_pairs
                    .into_iter()
                    .filter(|&(i, j)| trio[i].carrier.intersection(&trio[j].carrier) != *base)
                    .collect();
                let mut attempts: Vec<Certificate> = Vec::new();
                for &schema in schemas {
                    match (schema, overlaps.as_slice()) {
                        (Schema::TriangleConnector, []) => {
                            if let Some(conn) = triangle_connectors(g, trio, &all_pairs) {
                                attempts.push(make(schema, trio, Vec::new(), conn));
                            }
                        }
                        (Schema::YConnector, []) => {
                            if let Some(conn) = hub_connectors(g, trio) {
                                attempts.push(make(schema, trio, Vec::new(), conn));
                            }
                        }
                        (Schema::YBase, []) => {
                            if let Some(conn) = triangle_connectors(g, trio, &all_pairs) {
                                attempts.push(make(schema, trio, Vec::new(), conn));
                            }
                            if let Some(conn) = hub_connectors(g, trio) {
                                attempts.push(make(schema, trio, Vec::new(), conn));
                            }
                        }
                        (Schema::P10Pattern, &[(i, j)]) => {
                            let shared = trio[i].carrier.intersection(&trio[j].carrier);
                            let piece = SubgraphPiece {
                                vertices: shared
                                    .vertices
                                    .difference(&base.vertices)
                                    .cloned()
                                    .collect(),
                                edges: shared.edges.difference(&base.edges).cloned().collect(),
                            };
                            let rest: Vec<(usize, usize)> =
                                all_pairs.into_iter().filter(|&p| p != (i, j)).collect();
                            if let Some(conn) = triangle_connectors(g, trio, &rest) {
                                let extra = vec![ExtraOverlap {
                                    pair: (i, j),
                                    piece,
                                }];
                                attempts.push(make(schema, trio, extra, conn));
                            }
                        }
                        _ => {}
                    }
                }
                out.extend(
                    attempts
                        .into_iter()
                        .filter(|cert| verify_certificate(g, cert).is_ok_and(|r| r.pass)),
                );
            }
        }
    }
    out
}
