//! Per-identity verification results.

use std::fmt::Write as _;

use serde::Serialize;

use crate::series::Mismatch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    /// Highest power of q compared.
    pub order: usize,
    pub first_mismatch: Option<Mismatch>,
    pub wall_time_us: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Fixed-width table, one identity per row.
pub fn text_table(reports: &[VerificationReport]) -> String {
    let w = reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let mut out = format!("{:<w$}  {:<6}  {:>5}  {:>10}  first mismatch\n", "id", "status", "order", "time(ms)");
    for r in reports {
        let mm = match &r.first_mismatch {
            None => "-".to_string(),
            Some(m) => format!("q^{}: lhs {} rhs {}", m.q_exponent, m.lhs, m.rhs),
        };
        let _ = writeln!(
            out,
            "{:<w$}  {:<6}  {:>5}  {:>10.3}  {}",
            r.id,
            r.status.as_str(),
            r.order,
            r.wall_time_us as f64 / 1000.0,
            mm
        );
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(out, "{} checked, {} failed", reports.len(), failed);
    out
}
