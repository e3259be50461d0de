//! Petersen family graphs and the combinatorics behind their non-flatness:
//! Δ-Y/Y-Δ closure, cycle enumeration, Böhme systems, combinatorial
//! spheres, checkable certificates and linking numbers of straight-line
//! embeddings.
//!
//! ```
//! use bohme_core::family::FamilyName;
//! use bohme_core::cert::{bundled_certificate, verify_certificate};
//!
//! let g = FamilyName::K6.graph();
//! let report = verify_certificate(&g, bundled_certificate(FamilyName::K6)).unwrap();
//! assert!(report.pass);
//! ```

pub mod canon;
pub mod cert;
pub mod cycle;
pub mod family;
pub mod graph;
pub mod linking;
pub mod par;
pub mod sphere;

pub use canon::{are_isomorphic, canonical_form, CanonicalLabel};
pub use cert::{verify_certificate, Certificate, Schema, VerificationReport};
pub use cycle::{enumerate_cycles, is_bohme_system, Cycle, SubgraphPiece};
pub use family::{generate_petersen_family, identify_family_member, FamilyMember, FamilyName};
pub use graph::{Graph, GraphError};
pub use linking::{
    linking_number, omega, random_embedding, validate_embedding, DisjointMode, Embedding,
    OmegaReport,
};
pub use par::Execution;
pub use sphere::{is_combinatorial_sphere, CycleSystem};
