//! Non-flatness certificates.
//!
//! A certificate names a base (a cycle, or a Y: one center joined to three
//! leaves), three cycle systems that should each panel into a sphere
//! containing the base, and connector paths joining the parts of the
//! spheres that lie off the base. [`verify_certificate`] checks the
//! combinatorial hypotheses; [`search_certificates`] looks for new ones.
//!
//! Four schemas are supported:
//!
//! * `TRIANGLE_CONNECTOR`: cycle base, connector edges between every pair
//!   of systems.
//! * `Y_CONNECTOR`: cycle base, the off-base parts joined through a hub
//!   vertex outside all spheres.
//! * `Y_BASE`: Y base, connectors of either kind.
//! * `P10_PATTERN`: cycle base, one pair of systems may share more than the
//!   base (declared as an extra overlap), the other two pairs are joined by
//!   connector edges.

mod bundled;
mod p10;
mod search;
mod verify;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycle::{sorted_pair, Cycle, SubgraphPiece};
use crate::sphere::CycleSystem;

pub use bundled::{bundled_certificate, bundled_certificates, supplementary_certificates};
pub use p10::{p10_system_sets, solve_p10_labeling, Labeling};
pub use search::{search_certificates, search_certificates_with, SearchBounds, SearchError};
pub use verify::{
    single_deletion_mutants, verify_certificate, Check, CheckName, VerificationReport,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Schema {
    TriangleConnector,
    YConnector,
    YBase,
    P10Pattern,
}

impl Schema {
    pub const ALL: [Schema; 4] = [
        Schema::TriangleConnector,
        Schema::YConnector,
        Schema::YBase,
        Schema::P10Pattern,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Schema::TriangleConnector => "TRIANGLE_CONNECTOR",
            Schema::YConnector => "Y_CONNECTOR",
            Schema::YBase => "Y_BASE",
            Schema::P10Pattern => "P10_PATTERN",
        }
    }

    pub fn base_kind(self) -> BaseKind {
        match self {
            Schema::YBase => BaseKind::Y,
            _ => BaseKind::Cycle,
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Schema {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.to_ascii_uppercase().replace('-', "_");
        Schema::ALL
            .into_iter()
            .find(|sc| sc.as_str() == norm)
            .ok_or_else(|| format!("unknown schema `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseKind {
    Cycle,
    Y,
}

/// Declared carrier overlap between two systems beyond the base. `pair`
/// holds zero-based system indices with `pair.0 < pair.1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtraOverlap {
    pub pair: (usize, usize),
    pub piece: SubgraphPiece,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub graph_name: String,
    pub schema: Schema,
    pub base_kind: BaseKind,
    pub base: SubgraphPiece,
    pub systems: Vec<CycleSystem>,
    pub extra_overlaps: Vec<ExtraOverlap>,
    pub connectors: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("unsupported certificate format {0}, expected {FORMAT_VERSION}")]
    UnsupportedFormat(u32),
    #[error("expected 3 systems, got {0}")]
    SystemCount(usize),
    #[error("system {0} has no faces")]
    EmptySystem(usize),
    #[error("base has an edge endpoint missing from its vertex list")]
    BaseNotWellFormed,
    #[error("base is not a cycle")]
    BaseNotCycle,
    #[error("base is not a Y (one center joined to three leaves)")]
    BaseNotY,
    #[error("schema {schema} requires a {expected:?} base")]
    BaseKindMismatch { schema: Schema, expected: BaseKind },
    #[error("schema {0} does not allow extra overlaps")]
    ExtraOverlapNotAllowed(Schema),
    #[error("extra overlap pair {0:?} is not two distinct systems 1..3")]
    BadOverlapPair((usize, usize)),
    #[error("extra overlap for pair {0:?} declared twice")]
    DuplicateOverlapPair((usize, usize)),
    #[error("connector {0} has fewer than two vertices")]
    ConnectorTooShort(usize),
    #[error("connector {0} repeats vertex `{1}`")]
    ConnectorRepeatsVertex(usize, String),
    #[error("certificate references vertex `{0}` missing from the graph")]
    UnknownVertex(String),
}

impl Certificate {
    /// Checks the structural invariants. Graph membership is checked by
    /// [`verify_certificate`].
    pub fn validate_shape(&self) -> Result<(), CertificateError> {
        if self.systems.len() != 3 {
            return Err(CertificateError::SystemCount(self.systems.len()));
        }
        if let Some(i) = self.systems.iter().position(|s| s.faces().is_empty()) {
            return Err(CertificateError::EmptySystem(i + 1));
        }
        let expected = self.schema.base_kind();
        if self.base_kind != expected {
            return Err(CertificateError::BaseKindMismatch {
                schema: self.schema,
                expected,
            });
        }
        if !self.base.is_well_formed() {
            return Err(CertificateError::BaseNotWellFormed);
        }
        match self.base_kind {
            BaseKind::Cycle => {
                self.base_cycle().ok_or(CertificateError::BaseNotCycle)?;
            }
            BaseKind::Y => {
                self.y_center().ok_or(CertificateError::BaseNotY)?;
            }
        }
        if !self.extra_overlaps.is_empty() && self.schema != Schema::P10Pattern {
            return Err(CertificateError::ExtraOverlapNotAllowed(self.schema));
        }
        let mut pairs = BTreeSet::new();
        for o in &self.extra_overlaps {
            let (i, j) = o.pair;
            if i >= j || j >= 3 {
                return Err(CertificateError::BadOverlapPair((i + 1, j + 1)));
            }
            if !pairs.insert(o.pair) {
                return Err(CertificateError::DuplicateOverlapPair((i + 1, j + 1)));
            }
        }
        for (ci, path) in self.connectors.iter().enumerate() {
            if path.len() < 2 {
                return Err(CertificateError::ConnectorTooShort(ci + 1));
            }
            let mut seen = BTreeSet::new();
            for v in path {
                if !seen.insert(v) {
                    return Err(CertificateError::ConnectorRepeatsVertex(ci + 1, v.clone()));
                }
            }
        }
        Ok(())
    }

    /// The base as a cycle, when it is one.
    pub fn base_cycle(&self) -> Option<Cycle> {
        piece_as_cycle(&self.base)
    }

    /// Center of a Y base.
    pub fn y_center(&self) -> Option<&str> {
        if self.base.vertices.len() != 4 || self.base.edges.len() != 3 {
            return None;
        }
        self.base
            .vertices
            .iter()
            .find(|v| self.base.degree(v) == 3)
            .map(String::as_str)
    }

    /// Every vertex label mentioned anywhere in the certificate.
    pub fn referenced_vertices(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = self.base.vertices.clone();
        for (a, b) in &self.base.edges {
            out.insert(a.clone());
            out.insert(b.clone());
        }
        for s in &self.systems {
            for f in s.faces() {
                out.extend(f.vertices().iter().cloned());
            }
        }
        for o in &self.extra_overlaps {
            out.extend(o.piece.vertices.iter().cloned());
            for (a, b) in &o.piece.edges {
                out.insert(a.clone());
                out.insert(b.clone());
            }
        }
        for c in &self.connectors {
            out.extend(c.iter().cloned());
        }
        out
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Certificate {
        Certificate {
            graph_name: self.graph_name.clone(),
            schema: self.schema,
            base_kind: self.base_kind,
            base: self.base.relabel(&f),
            systems: self.systems.iter().map(|s| s.relabel(&f)).collect(),
            extra_overlaps: self
                .extra_overlaps
                .iter()
                .map(|o| ExtraOverlap {
                    pair: o.pair,
                    piece: o.piece.relabel(&f),
                })
                .collect(),
            connectors: self
                .connectors
                .iter()
                .map(|p| p.iter().map(|v| f(v)).collect())
                .collect(),
        }
    }

    /// Order-insensitive identity: base, the set of systems, the set of
    /// overlaps and the set of connectors (each read in its smaller
    /// direction). Used for ordering search output and for comparing a
    /// found certificate with a bundled one.
    pub fn canonical_key(&self) -> CertificateKey {
        let mut systems: Vec<Vec<Cycle>> =
            self.systems.iter().map(|s| s.faces().to_vec()).collect();
        systems.sort();
        let mut connectors: Vec<Vec<String>> =
            self.connectors.iter().map(|c| normalize_path(c)).collect();
        connectors.sort();
        let mut overlaps: Vec<SubgraphPiece> = self
            .extra_overlaps
            .iter()
            .map(|o| o.piece.clone())
            .collect();
        overlaps.sort();
        CertificateKey {
            schema: self.schema,
            base: self.base.clone(),
            systems,
            overlaps,
            connectors,
        }
    }

    pub fn is_equivalent(&self, other: &Certificate) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson::from(self)
    }

    pub fn from_json_str(s: &str) -> Result<Certificate, CertificateFormatError> {
        let de = &mut serde_json::Deserializer::from_str(s);
        let j: CertificateJson = serde_path_to_error::deserialize(de)?;
        Ok(Certificate::try_from(j)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("certificate serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CertificateKey {
    pub schema: Schema,
    pub base: SubgraphPiece,
    pub systems: Vec<Vec<Cycle>>,
    pub overlaps: Vec<SubgraphPiece>,
    pub connectors: Vec<Vec<String>>,
}

fn normalize_path(p: &[String]) -> Vec<String> {
    if p.first() > p.last() {
        p.iter().rev().cloned().collect()
    } else {
        p.to_vec()
    }
}

/// Reads a piece that is a single cycle (connected, 2-regular) back as a
/// [`Cycle`].
pub(crate) fn piece_as_cycle(p: &SubgraphPiece) -> Option<Cycle> {
    let n = p.vertices.len();
    if n < 3 || p.edges.len() != n || p.vertices.iter().any(|v| p.degree(v) != 2) {
        return None;
    }
    let start = p.vertices.iter().next()?.clone();
    let mut seq = vec![start.clone()];
    let mut prev = String::new();
    let mut cur = start.clone();
    loop {
        let next = p
            .edges
            .iter()
            .filter_map(|(a, b)| {
                if *a == cur {
                    Some(b)
                } else if *b == cur {
                    Some(a)
                } else {
                    None
                }
            })
            .find(|&x| *x != prev)?
            .clone();
        if next == start {
            break;
        }
        prev = std::mem::replace(&mut cur, next.clone());
        seq.push(next);
        if seq.len() > n {
            return None;
        }
    }
    if seq.len() != n {
        return None;
    }
    Cycle::new(seq).ok()
}

#[derive(Debug, Error)]
pub enum CertificateFormatError {
    #[error("malformed certificate JSON at `{}`: {}", .0.path(), .0.inner())]
    Json(#[from] serde_path_to_error::Error<serde_json::Error>),
    #[error(transparent)]
    Shape(#[from] CertificateError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseJson {
    pub kind: BaseKind,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub faces: Vec<Cycle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraOverlapJson {
    /// One-based system indices.
    pub pair: [usize; 2],
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

/// Versioned wire format for certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub format: u32,
    pub graph_name: String,
    pub schema: Schema,
    pub base: BaseJson,
    pub systems: Vec<SystemJson>,
    #[serde(default)]
    pub extra_overlaps: Vec<ExtraOverlapJson>,
    pub connectors: Vec<Vec<String>>,
}

fn piece_from_json(vertices: &[String], edges: &[[String; 2]]) -> SubgraphPiece {
    SubgraphPiece {
        vertices: vertices.iter().cloned().collect(),
        edges: edges.iter().map(|[a, b]| sorted_pair(a, b)).collect(),
    }
}

fn edges_to_json(p: &SubgraphPiece) -> Vec<[String; 2]> {
    p.edges
        .iter()
        .map(|(a, b)| [a.clone(), b.clone()])
        .collect()
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            format: FORMAT_VERSION,
            graph_name: c.graph_name.clone(),
            schema: c.schema,
            base: BaseJson {
                kind: c.base_kind,
                vertices: c.base.vertices.iter().cloned().collect(),
                edges: edges_to_json(&c.base),
            },
            systems: c
                .systems
                .iter()
                .map(|s| SystemJson {
                    faces: s.faces().to_vec(),
                })
                .collect(),
            extra_overlaps: c
                .extra_overlaps
                .iter()
                .map(|o| ExtraOverlapJson {
                    pair: [o.pair.0 + 1, o.pair.1 + 1],
                    vertices: o.piece.vertices.iter().cloned().collect(),
                    edges: edges_to_json(&o.piece),
                })
                .collect(),
            connectors: c.connectors.clone(),
        }
    }
}

impl TryFrom<CertificateJson> for Certificate {
    type Error = CertificateError;

    fn try_from(j: CertificateJson) -> Result<Self, Self::Error> {
        if j.format != FORMAT_VERSION {
            return Err(CertificateError::UnsupportedFormat(j.format));
        }
        let mut extra_overlaps = Vec::new();
        for o in &j.extra_overlaps {
            let [a, b] = o.pair;
            if a == 0 || b == 0 {
                return Err(CertificateError::BadOverlapPair((a, b)));
            }
            extra_overlaps.push(ExtraOverlap {
                pair: (a - 1, b - 1),
                piece: piece_from_json(&o.vertices, &o.edges),
            });
        }
        let cert = Certificate {
            graph_name: j.graph_name,
            schema: j.schema,
            base_kind: j.base.kind,
            base: piece_from_json(&j.base.vertices, &j.base.edges),
            systems: j
                .systems
                .into_iter()
                .map(|s| CycleSystem::new(s.faces))
                .collect(),
            extra_overlaps,
            connectors: j.connectors,
        };
        cert.validate_shape()?;
        Ok(cert)
    }
}
