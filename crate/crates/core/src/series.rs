//! Truncated power series in `t = q^(1/12)` with exact coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Grading denominator: `q = t^GRADING`.
pub const GRADING: usize = 12;

/// Truncation order of a series, stored in t-units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Precision(usize);

impl Precision {
    /// Trusted through `q^n`.
    pub const fn q(n: usize) -> Self {
        Precision(n * GRADING)
    }

    /// Trusted through `t^e`.
    pub const fn t(e: usize) -> Self {
        Precision(e)
    }

    pub const fn order_t(self) -> usize {
        self.0
    }

    /// Largest `n` with `q^n` inside the trusted range.
    pub const fn q_order(self) -> usize {
        self.0 / GRADING
    }
}

/// A residue class `residue mod modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SupportClass {
    modulus: usize,
    residue: usize,
}

impl SupportClass {
    pub fn new(modulus: usize, residue: usize) -> Result<Self> {
        if modulus == 0 || residue >= modulus {
            return Err(Error::InvalidInput(format!(
                "residue {residue} is not a class modulo {modulus}"
            )));
        }
        Ok(SupportClass { modulus, residue })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn residue(&self) -> usize {
        self.residue
    }
}

/// First coefficient where two series disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub t_exponent: usize,
    /// The exponent of q, rendered as `n` or `n/d`.
    pub q_exponent: String,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

/// Renders `t^e` as an exponent of q: `5`, `1/3`, `9/4`.
pub fn q_exponent_label(t_exp: usize) -> String {
    let r = BigRational::new(BigInt::from(t_exp), BigInt::from(GRADING));
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact truncated series `sum c_e t^e`, trusted for `e <= order_t`.
///
/// Storage is dense; products skip zero coefficients so q-series (support on
/// multiples of 12) cost the same as ordinary dense q-series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSeries {
    coeffs: Vec<ExactScalar>,
}

impl GradedSeries {
    pub fn zero(prec: Precision) -> Self {
        GradedSeries {
            coeffs: vec![ExactScalar::zero(); prec.order_t() + 1],
        }
    }

    pub fn constant(c: ExactScalar, prec: Precision) -> Self {
        let mut s = Self::zero(prec);
        s.coeffs[0] = c;
        s
    }

    pub fn one(prec: Precision) -> Self {
        Self::constant(ExactScalar::one(), prec)
    }

    /// `c * t^t_exp`, or zero when `t_exp` lies past the truncation order.
    pub fn monomial(c: ExactScalar, t_exp: usize, prec: Precision) -> Self {
        let mut s = Self::zero(prec);
        if t_exp <= prec.order_t() {
            s.coeffs[t_exp] = c;
        }
        s
    }

    /// Builds from coefficients indexed by t-exponent; `order_t = len - 1`.
    pub fn from_t_coeffs(coeffs: Vec<ExactScalar>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        GradedSeries { coeffs }
    }

    /// Builds an ordinary q-series `sum c_n q^n`. Coefficients beyond the
    /// precision are dropped.
    pub fn from_q_coeffs<I>(coeffs: I, prec: Precision) -> Self
    where
        I: IntoIterator<Item = ExactScalar>,
    {
        let mut s = Self::zero(prec);
        for (n, c) in coeffs.into_iter().enumerate() {
            let e = n * GRADING;
            if e > prec.order_t() {
                break;
            }
            s.coeffs[e] = c;
        }
        s
    }

    pub fn order_t(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn precision(&self) -> Precision {
        Precision::t(self.order_t())
    }

    pub fn q_order(&self) -> usize {
        self.order_t() / GRADING
    }

    pub fn coeff_t(&self, e: usize) -> Result<&ExactScalar> {
        self.coeffs.get(e).ok_or(Error::OrderExceeded {
            requested: e,
            available: self.order_t(),
        })
    }

    pub fn coeff_q(&self, n: usize) -> Result<&ExactScalar> {
        self.coeff_t(n * GRADING)
    }

    pub fn t_coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    /// Nonzero terms `(t-exponent, coefficient)` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &ExactScalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    /// Lowest t-exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.terms().next().map(|(e, _)| e)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// True when every nonzero term sits at an integral power of q.
    pub fn is_q_series(&self) -> bool {
        self.terms().all(|(e, _)| e % GRADING == 0)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(ExactScalar::is_real)
    }

    /// Drops every term past `order_t`. Never extends.
    pub fn truncate(&self, order_t: usize) -> Self {
        let keep = order_t.min(self.order_t());
        GradedSeries {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    /// Coefficients `c_0..c_n` of an ordinary q-series.
    pub fn q_coeffs(&self) -> Result<Vec<ExactScalar>> {
        if !self.is_q_series() {
            return Err(Error::NotIntegralSeries);
        }
        Ok((0..=self.q_order())
            .map(|n| self.coeffs[n * GRADING].clone())
            .collect())
    }

    pub fn scale(&self, k: &ExactScalar) -> Self {
        if k.is_zero() {
            return Self::zero(self.precision());
        }
        GradedSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| if c.is_zero() { c.clone() } else { c * k })
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order_t().min(other.order_t());
        GradedSeries {
            coeffs: (0..=n).map(|e| &self.coeffs[e] + &other.coeffs[e]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order_t().min(other.order_t());
        GradedSeries {
            coeffs: (0..=n).map(|e| &self.coeffs[e] - &other.coeffs[e]).collect(),
        }
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order_t().min(other.order_t());
        let lhs: Vec<(usize, &ExactScalar)> = self.terms().take_while(|&(e, _)| e <= n).collect();
        let rhs: Vec<(usize, &ExactScalar)> = other.terms().take_while(|&(e, _)| e <= n).collect();
        let mut out = vec![ExactScalar::zero(); n + 1];
        for &(i, a) in &lhs {
            for &(j, b) in &rhs {
                if i + j > n {
                    break;
                }
                out[i + j] += &(a * b);
            }
        }
        GradedSeries { coeffs: out }
    }

    /// Two-sided inverse through the truncation order.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let inv0 = c0.inv().ok_or(Error::NotAUnit)?;
        let n = self.order_t();
        let tail: Vec<(usize, &ExactScalar)> = self.terms().filter(|&(e, _)| e > 0).collect();
        let neg_inv0 = -&inv0;
        let mut g = vec![ExactScalar::zero(); n + 1];
        g[0] = inv0;
        for m in 1..=n {
            let mut acc = ExactScalar::zero();
            for &(k, fk) in &tail {
                if k > m {
                    break;
                }
                let gm = &g[m - k];
                if !gm.is_zero() {
                    acc += &(fk * gm);
                }
            }
            if !acc.is_zero() {
                g[m] = &acc * &neg_inv0;
            }
        }
        Ok(GradedSeries { coeffs: g })
    }

    /// Integer power; negative exponents expand the positive power first and
    /// invert once.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut acc = Self::one(self.precision());
        let mut base = self.clone();
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        if e < 0 {
            acc.invert()
        } else {
            Ok(acc)
        }
    }

    /// Multiplies by `t^s`; the product is trusted `s` exponents further.
    pub fn shift_up(&self, s: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        GradedSeries { coeffs }
    }

    /// Divides by `t^s`; the low `s` coefficients must vanish.
    pub fn shift_down(&self, s: usize) -> Result<Self> {
        if s > self.order_t() {
            return Err(Error::OrderExceeded {
                requested: s,
                available: self.order_t(),
            });
        }
        if let Some(v) = self.valuation() {
            if v < s {
                return Err(Error::InvalidInput(format!(
                    "cannot divide by t^{s}: nonzero term at t^{v}"
                )));
            }
        }
        Ok(GradedSeries {
            coeffs: self.coeffs[s..].to_vec(),
        })
    }

    /// The substitution `q -> q^r`: t-exponent `e` moves to `e*r`, and the
    /// order becomes `floor(order_t * r)`.
    pub fn substitute_q_power(&self, r: &BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidInput(format!(
                "substitution ratio must be positive, got {r}"
            )));
        }
        let scaled = |e: usize| -> Option<usize> {
            let v = r * BigInt::from(e);
            if v.is_integer() {
                v.to_integer().to_usize()
            } else {
                None
            }
        };
        let new_order = (r * BigInt::from(self.order_t()))
            .floor()
            .to_integer()
            .to_usize()
            .ok_or_else(|| Error::InvalidInput("substituted order overflows".into()))?;
        let mut coeffs = vec![ExactScalar::zero(); new_order + 1];
        for (e, c) in self.terms() {
            let target = scaled(e).ok_or_else(|| Error::FractionalExponent {
                exponent: e,
                ratio: r.to_string(),
            })?;
            coeffs[target] = c.clone();
        }
        Ok(GradedSeries { coeffs })
    }

    /// Multisection `sum nu_{Mn+k} q^n` of an ordinary q-series.
    pub fn omega(&self, class: SupportClass) -> Result<Self> {
        if !self.is_q_series() {
            return Err(Error::NotIntegralSeries);
        }
        let (m, k) = (class.modulus(), class.residue());
        let nq = self.q_order();
        if nq < k {
            return Err(Error::OrderExceeded {
                requested: k * GRADING,
                available: self.order_t(),
            });
        }
        let out_q = (nq - k) / m;
        let coeffs = (0..=out_q).map(|n| self.coeffs[(m * n + k) * GRADING].clone());
        Ok(Self::from_q_coeffs(coeffs, Precision::q(out_q)))
    }

    /// First disagreement through `t^order_t`; both series must reach it.
    pub fn first_mismatch(&self, other: &Self, order_t: usize) -> Result<Option<Mismatch>> {
        let available = self.order_t().min(other.order_t());
        if order_t > available {
            return Err(Error::OrderExceeded {
                requested: order_t,
                available,
            });
        }
        Ok((0..=order_t)
            .find(|&e| self.coeffs[e] != other.coeffs[e])
            .map(|e| Mismatch {
                t_exponent: e,
                q_exponent: q_exponent_label(e),
                lhs: self.coeffs[e].clone(),
                rhs: other.coeffs[e].clone(),
            }))
    }

    /// Exact coefficientwise equality through `q^n_q`.
    pub fn equal_to_order(&self, other: &Self, n_q: usize) -> Result<bool> {
        Ok(self.first_mismatch(other, n_q * GRADING)?.is_none())
    }

    /// Shared lowest common offset `s` (in t) when every term lies in
    /// `s + 12*Z`; used for rendering `q^(s/12) * (ordinary series)`.
    pub fn residue_offset(&self) -> Option<usize> {
        let mut terms = self.terms();
        let (first, _) = terms.next()?;
        let r = first % GRADING;
        terms.all(|(e, _)| e % GRADING == r).then_some(r)
    }
}

impl fmt::Display for GradedSeries {
    /// `1 + 6*q + 6*q^3 + O(q^4)`, with fractional exponents as `q^(1/3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_real() && c.re().is_negative();
            let body = if neg { (-c).to_string() } else { c.to_string() };
            let body = if c.is_real() { body } else { format!("({body})") };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mono = match e {
                0 => String::new(),
                GRADING => "q".to_string(),
                _ => {
                    let x = q_exponent_label(e);
                    if x.contains('/') {
                        format!("q^({x})")
                    } else {
                        format!("q^{x}")
                    }
                }
            };
            let term = match (mono.is_empty(), body == "1") {
                (true, _) => body,
                (false, true) => mono,
                (false, false) => format!("{body}*{mono}"),
            };
            write!(f, "{sep}{term}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        let big_o = if self.is_q_series() {
            (self.q_order() + 1).to_string()
        } else {
            q_exponent_label(self.order_t() + 1)
        };
        if big_o.contains('/') {
            write!(f, " + O(q^({big_o}))")
        } else {
            write!(f, " + O(q^{big_o})")
        }
    }
}

impl<'a> Add<&'a GradedSeries> for &'a GradedSeries {
    type Output = GradedSeries;
    fn add(self, rhs: &GradedSeries) -> GradedSeries {
        GradedSeries::add(self, rhs)
    }
}

impl<'a> Sub<&'a GradedSeries> for &'a GradedSeries {
    type Output = GradedSeries;
    fn sub(self, rhs: &GradedSeries) -> GradedSeries {
        GradedSeries::sub(self, rhs)
    }
}

impl<'a> Mul<&'a GradedSeries> for &'a GradedSeries {
    type Output = GradedSeries;
    fn mul(self, rhs: &GradedSeries) -> GradedSeries {
        GradedSeries::mul(self, rhs)
    }
}

impl Neg for &GradedSeries {
    type Output = GradedSeries;
    fn neg(self) -> GradedSeries {
        self.scale(&-ExactScalar::one())
    }
}

/// `gcd` of the integer coefficients; `None` when any coefficient is not an
/// integer. Used by the congruence suites.
pub fn content(coeffs: &[ExactScalar]) -> Option<BigInt> {
    let mut g = BigInt::zero();
    for c in coeffs {
        g = g.gcd(&c.to_integer()?);
    }
    Some(g)
}
