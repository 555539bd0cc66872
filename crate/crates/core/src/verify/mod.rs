//! The identity registry, congruence suites and the recursion report.

pub mod congruence;
pub mod expr;
pub mod recursion;
pub mod registry;
pub mod report;

pub use congruence::{congruence_eq31, congruence_th1, cusp_eigenform_check};
pub use expr::{expand, Evaluator, Expr};
pub use recursion::{recursion_report, RecursionReport};
pub use registry::{IdentityRecord, Registry};
pub use report::{Status, VerificationReport};
