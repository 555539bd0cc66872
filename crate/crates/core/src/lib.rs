//! Exact truncated q-series for the Borwein cubic theta functions, Eisenstein
//! series of level one and three, and the trisection operators that act on
//! polynomials in them.
//!
//! Every coefficient is an exact rational or Gaussian rational. Series are
//! graded in `t = q^(1/12)` so that `q^(1/3)` (the leading term of `c(q)`)
//! and the `q^(1/4)` offsets of `theta2` are plain integer exponents.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalar`] and [`series`]: coefficient field and truncated series ring.
//! - [`qfactory`]: infinite products, eta quotients, Lambert and theta series.
//! - [`arith`]: Dirichlet characters, Bernoulli numbers, L-values, divisor
//!   sums and the 3-core oracle.
//! - [`forms`]: `a`, `b`, `c`, Eisenstein series, polynomial fitting.
//! - [`dissect`]: exact matrices for the trisection and trimidiation maps.
//! - [`verify`]: the identity registry, congruence suites and reports.

pub mod arith;
pub mod dissect;
pub mod error;
pub mod forms;
pub mod qfactory;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::ExactScalar;
pub use series::{GradedSeries, Mismatch, Precision, SupportClass, GRADING};
