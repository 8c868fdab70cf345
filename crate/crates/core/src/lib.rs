//! Design-pattern conformance checking for Java source trees.
//!
//! The pipeline reads every project under a repository root into
//! [`facts::ProjectFacts`], enumerates candidate pattern instances with
//! [`detect::detect`], scores each bound class against the pattern's
//! characteristics catalog ([`score::assess_instance`]), optionally approves
//! or discards violations against a requirements text ([`srs`]) and writes
//! CSV, markdown and SVG reports ([`report`]).

pub mod detect;
pub mod error;
pub mod external;
pub mod facts;
pub mod pipeline;
pub mod report;
pub mod rules;
pub mod score;
pub mod srs;

pub use detect::{CandidateInstance, CandidateSource};
pub use error::{Error, Result};
pub use facts::{AbstractionKind, ClassFact, Connection, ConnectionKind, ProjectFacts};
pub use rules::{CharacteristicsCatalog, PatternDefinition, PatternRule};
pub use score::{InstanceAssessment, MemberAssessment, VerificationStatus, ViolationKind, ViolationRecord};
