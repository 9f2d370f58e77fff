//! Hyperpolygon spaces: short subsets, the abelian and invariant presentations,
//! the annihilator of the Euler class, membership certificates, and reports.

mod certificate;
mod instance;
mod konno;
mod report;
mod shorts;

pub use certificate::{CertificateMethod, CertificateRecord, MembershipCertificate};
pub use instance::{HyperpolygonInstance, ALPHA, ALPHA2, X};
pub use konno::konno_ring;
pub use report::{full_report, run_stages, Failure, HyperpolygonReport, Stage, StageResult};
pub use shorts::{shorts, EdgeLengths, ShortSubsetTable, Subset};
