//! The identity manifest.
//!
//! One identity per line, `id | lhs | rhs | order | anchor`; blank lines and
//! lines starting with `#` are skipped.

use std::path::Path;

use crate::error::{Error, Result};
use crate::series::Precision;

use super::expr::{Evaluator, Expr};
use super::report::{Status, VerificationReport};

/// The manifest shipped with the crate.
pub const BUNDLED: &str = include_str!("../../registry/identities.txt");

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityRecord {
    pub id: String,
    pub lhs_text: String,
    pub rhs_text: String,
    pub lhs: Expr,
    pub rhs: Expr,
    /// Default q-order.
    pub order: usize,
    pub anchor: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Registry {
    records: Vec<IdentityRecord>,
}

impl Registry {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled manifest parses")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Parse errors carry the byte offset into `text`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut records: Vec<IdentityRecord> = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let base = offset;
            offset += line.len();
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = Vec::new();
            let mut col = 0;
            for f in line.trim_end_matches(['\n', '\r']).split('|') {
                fields.push((base + col, f));
                col += f.len() + 1;
            }
            if fields.len() != 5 {
                return Err(Error::parse(
                    base,
                    format!("expected 5 `|`-separated fields, found {}", fields.len()),
                ));
            }
            let id = fields[0].1.trim().to_string();
            if id.is_empty() {
                return Err(Error::parse(base, "empty identity id"));
            }
            if records.iter().any(|r| r.id == id) {
                return Err(Error::parse(base, format!("duplicate identity id `{id}`")));
            }
            let side = |(pos, s): (usize, &str)| -> Result<Expr> {
                Expr::parse(s).map_err(|e| match e {
                    Error::Parse { pos: p, msg } => Error::Parse { pos: pos + p, msg },
                    other => other,
                })
            };
            let order = fields[3]
                .1
                .trim()
                .parse()
                .map_err(|_| Error::parse(fields[3].0, format!("invalid order `{}`", fields[3].1.trim())))?;
            records.push(IdentityRecord {
                id,
                lhs_text: fields[1].1.trim().to_string(),
                rhs_text: fields[2].1.trim().to_string(),
                lhs: side(fields[1])?,
                rhs: side(fields[2])?,
                order,
                anchor: fields[4].1.trim().to_string(),
            });
        }
        Ok(Registry { records })
    }

    pub fn records(&self) -> &[IdentityRecord] {
        &self.records
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.records.iter().map(|r| r.id.as_str())
    }

    pub fn get(&self, id: &str) -> Result<&IdentityRecord> {
        self.records
            .iter()
            .find(|r| r.id == id)
            .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
    }

    /// Checks one identity through `q^order` (its default order if `None`).
    pub fn run_identity(&self, id: &str, order: Option<usize>) -> Result<VerificationReport> {
        run_record(self.get(id)?, order, &mut Evaluator::new())
    }

    /// Checks every identity, sharing one cache.
    pub fn run_all(&self, order: Option<usize>) -> Result<Vec<VerificationReport>> {
        let mut ev = Evaluator::new();
        self.records
            .iter()
            .map(|r| run_record(r, order, &mut ev))
            .collect()
    }
}

pub fn run_record(
    rec: &IdentityRecord,
    order: Option<usize>,
    ev: &mut Evaluator,
) -> Result<VerificationReport> {
    let prec = Precision::q(order.unwrap_or(rec.order));
    let (outcome, wall_time_us) = timed(|| -> Result<_> {
        let lhs = ev.series(&rec.lhs, prec)?;
        let rhs = ev.series(&rec.rhs, prec)?;
        let upto = lhs.order_t().min(rhs.order_t()).min(prec.order_t());
        Ok((upto, lhs.first_mismatch(&rhs, upto)?))
    });
    let (upto, mismatch) = outcome?;
    Ok(VerificationReport {
        id: rec.id.clone(),
        anchor: rec.anchor.clone(),
        status: if mismatch.is_none() { Status::Pass } else { Status::Fail },
        order: Precision::t(upto).q_order(),
        first_mismatch: mismatch,
        wall_time_us,
    })
}

/// Runs `f` and returns its wall time in microseconds; always 0 on wasm32,
/// which has no clock.
#[cfg(not(target_arch = "wasm32"))]
fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = std::time::Instant::now();
    let v = f();
    (v, start.elapsed().as_micros() as u64)
}

#[cfg(target_arch = "wasm32")]
fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    (f(), 0)
}
