//! Empirical verdicts on the two-display G-series recursion.
//!
//! Display 1 is compared against `G_{2n+2,chi}`, display 2 against
//! `G_{2n+2,1}`. Both index variants are run; the reading of the
//! unsubscripted G only affects display 1.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{
    cooper_recursion, fit_polynomial, g_normalized, GKind, GReading, IndexVariant, MonomialBasis,
};
use crate::scalar::ExactScalar;
use crate::series::{Mismatch, Precision};

pub const RECURSION_N_MAX: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCheck {
    pub order: usize,
    pub holds: bool,
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionRow {
    pub n: u32,
    pub display: u8,
    pub variant: IndexVariant,
    /// `None` for display 2.
    pub reading: Option<GReading>,
    pub checks: Vec<OrderCheck>,
}

impl RecursionRow {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    /// Same verdict at every order.
    pub fn stable(&self) -> bool {
        self.checks.windows(2).all(|w| w[0].holds == w[1].holds)
    }
}

/// Display 2 right-hand side fitted against `G_{2n+2,1}` and `G_{2n+2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Display2Fit {
    pub n: u32,
    pub variant: IndexVariant,
    /// Coefficients of `(G_{2n+2,1}, G_{2n+2})`, or `None` when no fit exists.
    pub coefficients: Option<[ExactScalar; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub n_max: u32,
    pub orders: Vec<usize>,
    pub rows: Vec<RecursionRow>,
    pub display2_fits: Vec<Display2Fit>,
}

impl RecursionReport {
    pub fn row(
        &self,
        n: u32,
        display: u8,
        variant: IndexVariant,
        reading: Option<GReading>,
    ) -> Option<&RecursionRow> {
        self.rows.iter().find(|r| {
            r.n == n && r.display == display && r.variant == variant && r.reading == reading
        })
    }

    pub fn all_stable(&self) -> bool {
        self.rows.iter().all(RecursionRow::stable)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("n  display  variant  reading    ");
        for o in &self.orders {
            let _ = write!(out, " q^{o:<6}");
        }
        out.push('\n');
        for r in &self.rows {
            let reading = r.reading.map_or("-".to_string(), |g| format!("{g:?}"));
            let _ = write!(out, "{:<2} {:<8} {:<8} {:<10}", r.n, r.display, format!("{:?}", r.variant), reading);
            for c in &r.checks {
                let v = match &c.first_mismatch {
                    None => "holds".to_string(),
                    Some(m) => format!("fails@q^{}", m.q_exponent),
                };
                let _ = write!(out, " {v:<8}");
            }
            out.push('\n');
        }
        out.push_str("display 2 fitted as x*G_{2n+2,1} + y*G_{2n+2}:\n");
        for f in &self.display2_fits {
            let fit = match &f.coefficients {
                Some([x, y]) => format!("x = {x}, y = {y}"),
                None => "no fit".to_string(),
            };
            let _ = writeln!(out, "  n = {} {:?}: {fit}", f.n, f.variant);
        }
        out
    }
}

/// Runs both displays for `1 <= n <= n_max` at each order, plus the
/// display-2 fit at the largest order.
pub fn recursion_report(n_max: u32, orders: &[usize]) -> Result<RecursionReport> {
    if n_max == 0 || n_max > RECURSION_N_MAX {
        return Err(Error::RangeExceeded {
            what: "n_max",
            value: n_max as u64,
            bound: RECURSION_N_MAX as u64,
        });
    }
    let Some(&top) = orders.iter().max() else {
        return Err(Error::InvalidInput("at least one order is required".into()));
    };
    let variants = [IndexVariant::Printed, IndexVariant::Shifted];
    let readings = [GReading::FullLevel, GReading::Principal];
    let mut rows = Vec::new();
    let mut fits = Vec::new();
    for n in 1..=n_max {
        let mut first: Vec<RecursionRow> = Vec::new();
        let mut second: Vec<RecursionRow> = Vec::new();
        for &order in orders {
            let prec = Precision::q(order);
            let t1 = g_normalized(GKind::Chi, n + 1, prec)?;
            let t2 = g_normalized(GKind::Principal, n + 1, prec)?;
            for variant in variants {
                for (ri, reading) in readings.into_iter().enumerate() {
                    let rhs = cooper_recursion(n, variant, reading, prec)?;
                    let m1 = rhs.first.first_mismatch(&t1, prec.order_t())?;
                    push_check(&mut first, n, 1, variant, Some(reading), order, m1);
                    if ri == 0 {
                        let m2 = rhs.second.first_mismatch(&t2, prec.order_t())?;
                        push_check(&mut second, n, 2, variant, None, order, m2);
                    }
                }
            }
        }
        rows.extend(first);
        rows.extend(second);

        let prec = Precision::q(top);
        let basis = MonomialBasis::explicit(vec![
            ("G_{2n+2,1}".into(), g_normalized(GKind::Principal, n + 1, prec)?),
            ("G_{2n+2}".into(), g_normalized(GKind::Full, n + 1, prec)?),
        ]);
        for variant in variants {
            let rhs = cooper_recursion(n, variant, GReading::FullLevel, prec)?;
            let coefficients = match fit_polynomial(&rhs.second, &basis) {
                Ok(c) => Some([c.0[0].clone(), c.0[1].clone()]),
                Err(Error::NoFit { .. }) => None,
                Err(e) => return Err(e),
            };
            fits.push(Display2Fit {
                n,
                variant,
                coefficients,
            });
        }
    }
    Ok(RecursionReport {
        n_max,
        orders: orders.to_vec(),
        rows,
        display2_fits: fits,
    })
}

fn push_check(
    rows: &mut Vec<RecursionRow>,
    n: u32,
    display: u8,
    variant: IndexVariant,
    reading: Option<GReading>,
    order: usize,
    mismatch: Option<Mismatch>,
) {
    let check = OrderCheck {
        order,
        holds: mismatch.is_none(),
        first_mismatch: mismatch,
    };
    match rows
        .iter_mut()
        .find(|r| r.variant == variant && r.reading == reading)
    {
        Some(r) => r.checks.push(check),
        None => rows.push(RecursionRow {
            n,
            display,
            variant,
            reading,
            checks: vec![check],
        }),
    }
}
