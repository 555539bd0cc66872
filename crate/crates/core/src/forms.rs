//! The cubic theta functions, Eisenstein series, their G-normalizations and
//! exact polynomial fitting in monomial bases.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{
    binomial, lvalue_at_nonpositive, CharacterKind, DirichletCharacter,
};
use crate::error::{Error, Result};
use crate::qfactory::{eta_quotient, lambert_series, theta2, theta3, EtaFactor, EtaQuotientSpec, LambertSpec};
use crate::scalar::ExactScalar;
use crate::series::{GradedSeries, Mismatch, Precision, GRADING};

fn int(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

/// Builds `f(q^r)` trusted through `prec`, expanding `f` only as far as needed.
pub fn dilate<F>(f: F, r: u64, prec: Precision) -> Result<GradedSeries>
where
    F: FnOnce(Precision) -> Result<GradedSeries>,
{
    let r_us = r as usize;
    let inner = Precision::t(prec.order_t().div_ceil(r_us));
    let g = f(inner)?.substitute_q_power(&BigRational::from_integer(BigInt::from(r)))?;
    Ok(g.truncate(prec.order_t()))
}

/// `a(q) = 1 + 6 sum (n/3) q^n / (1 - q^n)`.
pub fn borwein_a(prec: Precision) -> GradedSeries {
    let lam = lambert_series(&LambertSpec::divisor_sum(0, DirichletCharacter::jacobi3()), prec)
        .expect("divisor-sum Lambert spec is well formed");
    &GradedSeries::one(prec) + &lam.scale(&int(6))
}

/// `b(q) = (q;q)^3 / (q^3;q^3)`.
pub fn borwein_b(prec: Precision) -> GradedSeries {
    let spec = EtaQuotientSpec::product(vec![EtaFactor::new(1, 1, 3), EtaFactor::new(3, 3, -1)])
        .expect("valid spec");
    eta_quotient(&spec, prec)
}

/// `c(q) = 3 q^(1/3) (q^3;q^3)^3 / (q;q)`.
pub fn borwein_c(prec: Precision) -> GradedSeries {
    let spec = EtaQuotientSpec::new(
        vec![EtaFactor::new(3, 3, 3), EtaFactor::new(1, 1, -1)],
        int(3),
        GRADING / 3,
    )
    .expect("valid spec");
    eta_quotient(&spec, prec)
}

/// Lattice points `(n, m)` with `n^2 + nm + m^2 + s(n + m) <= bound`, for
/// `s` in `{0, 1}`. The radius bound follows from `Q(n,m) >= 3/4 max(n,m)^2`.
fn lattice_points(bound: usize, shifted: bool) -> impl Iterator<Item = (i64, i64, usize)> {
    let r = ((4 * (bound as i64 + 2)) as f64 / 3.0).sqrt() as i64 + 2;
    (-r..=r).flat_map(move |n| {
        (-r..=r).filter_map(move |m| {
            let s = if shifted { n + m } else { 0 };
            let v = n * n + n * m + m * m + s;
            (v >= 0 && v as usize <= bound).then_some((n, m, v as usize))
        })
    })
}

/// `a(q) = sum_{n,m} q^{n^2 + nm + m^2}` by direct double summation.
pub fn a_lattice_oracle(prec: Precision) -> GradedSeries {
    let nq = prec.q_order();
    let mut counts = vec![0i64; nq + 1];
    for (_, _, v) in lattice_points(nq, false) {
        counts[v] += 1;
    }
    GradedSeries::from_q_coeffs(counts.into_iter().map(int), prec)
}

/// `b(q) = sum omega^{n-m} q^{n^2+nm+m^2}`. With `c_r` the number of
/// representations having `n - m = r (mod 3)`, the coefficient is
/// `c_0 + c_1 omega + c_2 omega^2 = c_0 - (c_1 + c_2)/2`, since the swap
/// `(n,m) -> (m,n)` gives `c_1 = c_2`.
pub fn b_lattice_oracle(prec: Precision) -> GradedSeries {
    let nq = prec.q_order();
    let mut counts = vec![[0i64; 3]; nq + 1];
    for (n, m, v) in lattice_points(nq, false) {
        counts[v][(n - m).rem_euclid(3) as usize] += 1;
    }
    let coeffs = counts.into_iter().map(|[c0, c1, c2]| {
        debug_assert_eq!(c1, c2);
        ExactScalar::real(
            BigRational::from_integer(BigInt::from(c0))
                - BigRational::new(BigInt::from(c1 + c2), BigInt::from(2)),
        )
    });
    GradedSeries::from_q_coeffs(coeffs, prec)
}

/// `c(q) = sum q^{(n+1/3)^2 + (n+1/3)(m+1/3) + (m+1/3)^2}`; the exponent is
/// `n^2 + nm + m^2 + n + m + 1/3`.
pub fn c_lattice_oracle(prec: Precision) -> GradedSeries {
    let order = prec.order_t();
    let mut coeffs = vec![0i64; order + 1];
    if order >= GRADING / 3 {
        let bound = (order - GRADING / 3) / GRADING;
        for (_, _, v) in lattice_points(bound, true) {
            coeffs[GRADING * v + GRADING / 3] += 1;
        }
    }
    GradedSeries::from_t_coeffs(coeffs.into_iter().map(int).collect())
}

/// `E_{2k} = 1 + (2 / zeta(1-2k)) sum sigma_{2k-1}(n) q^n` for even weight.
pub fn eisenstein_full(weight: u32, prec: Precision) -> Result<GradedSeries> {
    if weight < 2 || weight % 2 == 1 {
        return Err(Error::InvalidInput(format!(
            "full-level Eisenstein series need even weight >= 2, got {weight}"
        )));
    }
    eisenstein_hecke(weight, &DirichletCharacter::trivial(), prec)
}

/// The quasimodular `E_2 = 1 - 24 sum sigma(n) q^n`.
pub fn e2(prec: Precision) -> GradedSeries {
    eisenstein_full(2, prec).expect("weight 2 is valid")
}

/// `E_{k,chi} = 1 + (2 / L(1-k, chi)) sum chi(n) n^{k-1} q^n / (1 - q^n)`.
pub fn eisenstein_hecke(k: u32, chi: &DirichletCharacter, prec: Precision) -> Result<GradedSeries> {
    if k == 0 {
        return Err(Error::InvalidInput("Eisenstein weight must be positive".into()));
    }
    let inv_l = lvalue_at_nonpositive(k as usize, chi)
        .inv()
        .ok_or_else(|| Error::ZeroLValue {
            weight: k,
            character: chi.name().to_string(),
        })?;
    let factor = &int(2) * &inv_l;
    let lam = lambert_series(&LambertSpec::divisor_sum(k - 1, chi.clone()), prec)?;
    Ok(&GradedSeries::one(prec) + &lam.scale(&factor))
}

/// The three G-normalizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GKind {
    /// `G_{2k} = (zeta(1-2k)/2) E_{2k}`.
    Full,
    /// `G_{2k,1} = (L(1-2k, 1)/2) E_{2k,1}` with the principal character mod 3.
    Principal,
    /// `G_{2k,chi} = (L(-2k, chi)/2) E_{2k+1,chi}` with `chi = (./3)`.
    Chi,
}

/// Normalizing constant and underlying Eisenstein series of `G_{2k}` of the
/// given kind.
fn g_parts(kind: GKind, k: u32) -> Result<(u32, DirichletCharacter)> {
    match kind {
        GKind::Full if k >= 1 => Ok((2 * k, DirichletCharacter::trivial())),
        GKind::Principal if k >= 1 => Ok((2 * k, DirichletCharacter::principal3())),
        GKind::Chi => Ok((2 * k + 1, DirichletCharacter::jacobi3())),
        _ => Err(Error::InvalidInput(format!("G_{} of kind {kind:?} is undefined", 2 * k))),
    }
}

/// `G_{2k}` of the given kind, i.e. half the L-value times the normalized
/// Eisenstein series.
pub fn g_normalized(kind: GKind, k: u32, prec: Precision) -> Result<GradedSeries> {
    let (weight, chi) = g_parts(kind, k)?;
    let half_l = &lvalue_at_nonpositive(weight as usize, &chi) / &int(2);
    Ok(eisenstein_hecke(weight, &chi, prec)?.scale(&half_l))
}

/// Constant term of `G_{2k}` of the given kind.
pub fn g_constant(kind: GKind, k: u32) -> Result<ExactScalar> {
    let (weight, chi) = g_parts(kind, k)?;
    Ok(&lvalue_at_nonpositive(weight as usize, &chi) / &int(2))
}

/// Names a series the CLI and registry can build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormLabel {
    A,
    B,
    C,
    /// `E_{2k}` by its weight.
    E(u32),
    /// Hecke Eisenstein series `E_{k,chi}`.
    Hecke(u32, CharacterKind),
    /// `G_{2k}` of a kind, indexed by `2k`.
    G(u32, GKind),
    Theta3,
    Theta2,
    ALattice,
    BLattice,
    CLattice,
}

impl FormLabel {
    /// Weight, or `None` for the half-integral theta series.
    pub fn weight(&self) -> Option<u32> {
        match *self {
            FormLabel::A | FormLabel::B | FormLabel::C => Some(1),
            FormLabel::ALattice | FormLabel::BLattice | FormLabel::CLattice => Some(1),
            FormLabel::E(w) | FormLabel::Hecke(w, _) => Some(w),
            FormLabel::G(i, GKind::Chi) => Some(i + 1),
            FormLabel::G(i, _) => Some(i),
            FormLabel::Theta3 | FormLabel::Theta2 => None,
        }
    }

    pub fn character(&self) -> Option<DirichletCharacter> {
        match *self {
            FormLabel::Hecke(_, kind) => Some(DirichletCharacter::new(kind)),
            FormLabel::G(_, GKind::Chi) => Some(DirichletCharacter::jacobi3()),
            FormLabel::G(_, GKind::Principal) => Some(DirichletCharacter::principal3()),
            _ => None,
        }
    }

    pub fn build(&self, prec: Precision) -> Result<GradedSeries> {
        match *self {
            FormLabel::A => Ok(borwein_a(prec)),
            FormLabel::B => Ok(borwein_b(prec)),
            FormLabel::C => Ok(borwein_c(prec)),
            FormLabel::E(w) => eisenstein_full(w, prec),
            FormLabel::Hecke(k, kind) => eisenstein_hecke(k, &DirichletCharacter::new(kind), prec),
            FormLabel::G(i, kind) => g_normalized(kind, i / 2, prec),
            FormLabel::Theta3 => Ok(theta3(1, prec)),
            FormLabel::Theta2 => Ok(theta2(1, prec)),
            FormLabel::ALattice => Ok(a_lattice_oracle(prec)),
            FormLabel::BLattice => Ok(b_lattice_oracle(prec)),
            FormLabel::CLattice => Ok(c_lattice_oracle(prec)),
        }
    }
}

impl fmt::Display for FormLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = |kind: CharacterKind| DirichletCharacter::new(kind).name();
        match *self {
            FormLabel::A => f.write_str("a"),
            FormLabel::B => f.write_str("b"),
            FormLabel::C => f.write_str("c"),
            FormLabel::E(w) => write!(f, "E{w}"),
            FormLabel::Hecke(k, kind) => write!(f, "E{k}_{}", suffix(kind)),
            FormLabel::G(i, GKind::Full) => write!(f, "G{i}"),
            FormLabel::G(i, GKind::Principal) => write!(f, "G{i}_one3"),
            FormLabel::G(i, GKind::Chi) => write!(f, "G{i}_chi3"),
            FormLabel::Theta3 => f.write_str("theta3"),
            FormLabel::Theta2 => f.write_str("theta2"),
            FormLabel::ALattice => f.write_str("a_lattice"),
            FormLabel::BLattice => f.write_str("b_lattice"),
            FormLabel::CLattice => f.write_str("c_lattice"),
        }
    }
}

impl FromStr for FormLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownLabel(s.to_string());
        let fixed = match s {
            "a" => Some(FormLabel::A),
            "b" => Some(FormLabel::B),
            "c" => Some(FormLabel::C),
            "theta3" => Some(FormLabel::Theta3),
            "theta2" => Some(FormLabel::Theta2),
            "a_lattice" => Some(FormLabel::ALattice),
            "b_lattice" => Some(FormLabel::BLattice),
            "c_lattice" => Some(FormLabel::CLattice),
            _ => None,
        };
        if let Some(l) = fixed {
            return Ok(l);
        }
        let (head, tail) = match s.split_once('_') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let letter = head.chars().next().ok_or_else(unknown)?;
        let digits = &head[1..];
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(unknown());
        }
        let n: u32 = digits.parse().map_err(|_| unknown())?;
        let label = match (letter, tail) {
            ('E', None) if n >= 2 && n % 2 == 0 => FormLabel::E(n),
            ('E', Some(ch)) if n >= 1 => {
                let chi: DirichletCharacter = ch.parse().map_err(|_| unknown())?;
                FormLabel::Hecke(n, chi.kind())
            }
            ('G', None) if n >= 2 && n % 2 == 0 => FormLabel::G(n, GKind::Full),
            ('G', Some("one3")) if n >= 2 && n % 2 == 0 => FormLabel::G(n, GKind::Principal),
            ('G', Some("chi3")) if n % 2 == 0 => FormLabel::G(n, GKind::Chi),
            _ => return Err(unknown()),
        };
        Ok(label)
    }
}

/// Labelled series spanning a space of polynomials.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    names: Vec<String>,
    series: Vec<GradedSeries>,
}

impl MonomialBasis {
    /// `x^{d-k} y^k` for `k = 0..=d`.
    pub fn homogeneous(
        x: &GradedSeries,
        y: &GradedSeries,
        d: u32,
        x_name: &str,
        y_name: &str,
    ) -> Result<Self> {
        let mut names = Vec::new();
        let mut series = Vec::new();
        let mut xp = vec![GradedSeries::one(x.precision())];
        let mut yp = vec![GradedSeries::one(y.precision())];
        for _ in 0..d {
            xp.push(xp.last().unwrap().mul(x));
            yp.push(yp.last().unwrap().mul(y));
        }
        for k in 0..=d as usize {
            names.push(monomial_name(&[(x_name, d as usize - k), (y_name, k)]));
            series.push(xp[d as usize - k].mul(&yp[k]));
        }
        Ok(MonomialBasis { names, series })
    }

    pub fn explicit(elements: Vec<(String, GradedSeries)>) -> Self {
        let (names, series) = elements.into_iter().unzip();
        MonomialBasis { names, series }
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn series(&self) -> &[GradedSeries] {
        &self.series
    }

    pub fn order_t(&self) -> usize {
        self.series.iter().map(GradedSeries::order_t).min().unwrap_or(0)
    }
}

fn monomial_name(parts: &[(&str, usize)]) -> String {
    let body: Vec<String> = parts
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(n, e)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
        .collect();
    if body.is_empty() {
        "1".into()
    } else {
        body.join("*")
    }
}

/// Coefficients `alpha_0..alpha_d` of a fitted polynomial, in basis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyCoefficients(pub Vec<ExactScalar>);

impl PolyCoefficients {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `sum alpha_k basis_k`.
    pub fn evaluate(&self, basis: &MonomialBasis) -> Result<GradedSeries> {
        if self.len() != basis.len() {
            return Err(Error::Shape(format!(
                "{} coefficients for a basis of size {}",
                self.len(),
                basis.len()
            )));
        }
        let mut acc = GradedSeries::zero(Precision::t(basis.order_t()));
        for (c, s) in self.0.iter().zip(basis.series()) {
            if !c.is_zero() {
                acc = &acc + &s.scale(c);
            }
        }
        Ok(acc)
    }

    pub fn render(&self, basis: &MonomialBasis) -> String {
        let terms: Vec<String> = self
            .0
            .iter()
            .zip(basis.names())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("({c})*{n}"))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Exact fit of `f` in the span of `basis`.
///
/// Rows (t-exponents) are eliminated one at a time, lowest first, each
/// pivoting on its lowest surviving column. Once the basis has full rank the
/// solution is checked against every available coefficient.
pub fn fit_polynomial(f: &GradedSeries, basis: &MonomialBasis) -> Result<PolyCoefficients> {
    let n = basis.len();
    let order = f.order_t().min(basis.order_t());
    let value = |s: &GradedSeries, e: usize| s.coeff_t(e).expect("within order").clone();
    // each pivot row: (pivot column, row entries over n columns + rhs)
    let mut pivots: Vec<(usize, Vec<ExactScalar>)> = Vec::new();
    let mut last_used = None;
    for e in 0..=order {
        if pivots.len() == n {
            break;
        }
        let mut row: Vec<ExactScalar> = basis.series().iter().map(|s| value(s, e)).collect();
        row.push(value(f, e));
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        for (col, prow) in &pivots {
            if !row[*col].is_zero() {
                let factor = row[*col].clone();
                for (x, p) in row.iter_mut().zip(prow) {
                    if !p.is_zero() {
                        *x -= &(&factor * p);
                    }
                }
            }
        }
        if let Some(col) = (0..n).find(|&j| !row[j].is_zero()) {
            let inv = row[col].inv().expect("nonzero pivot");
            for x in row.iter_mut() {
                *x *= &inv;
            }
            for (_, prow) in pivots.iter_mut() {
                if !prow[col].is_zero() {
                    let factor = prow[col].clone();
                    for (x, p) in prow.iter_mut().zip(&row) {
                        if !p.is_zero() {
                            *x -= &(&factor * p);
                        }
                    }
                }
            }
            pivots.push((col, row));
            last_used = Some(e);
        }
    }
    if pivots.len() < n {
        return Err(Error::UnderDetermined(format!(
            "basis has rank {} < {} through t^{order}",
            pivots.len(),
            n
        )));
    }
    let last_used = last_used.unwrap_or(0);
    let spare = (last_used + 1..=order)
        .filter(|&e| basis.series().iter().any(|s| !value(s, e).is_zero()))
        .count();
    if spare < n {
        return Err(Error::UnderDetermined(format!(
            "only {spare} verification coefficients remain beyond t^{last_used}"
        )));
    }
    let mut alpha = vec![ExactScalar::zero(); n];
    for (col, row) in &pivots {
        alpha[*col] = row[n].clone();
    }
    let coeffs = PolyCoefficients(alpha);
    let fitted = coeffs.evaluate(basis)?;
    if let Some(m) = f.truncate(order).first_mismatch(&fitted, order)? {
        return Err(Error::NoFit {
            t_exponent: m.t_exponent,
            expected: m.lhs.to_string(),
            fitted: m.rhs.to_string(),
        });
    }
    Ok(coeffs)
}

/// Result of one named series comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub mismatch: Option<Mismatch>,
}

impl CheckResult {
    pub fn compare(name: &str, lhs: &GradedSeries, rhs: &GradedSeries) -> Result<Self> {
        let order = lhs.order_t().min(rhs.order_t());
        let mismatch = lhs.first_mismatch(rhs, order)?;
        Ok(CheckResult {
            name: name.to_string(),
            passed: mismatch.is_none(),
            mismatch,
        })
    }
}

/// Checks the low-weight cubic parameterizations of `E_4`, `E_6`,
/// `E_{3,chi}`, the weight-two relation `(3 E_2(q^3) - E_2(q))/2 = a^2` and
/// the Lambert form of `a`.
pub fn cubic_parameterization_check(prec: Precision) -> Result<Vec<CheckResult>> {
    let a = borwein_a(prec);
    let b = borwein_b(prec);
    let c = borwein_c(prec);
    let a3 = a.pow(3)?;
    let c3 = c.pow(3)?;
    let e4 = eisenstein_full(4, prec)?;
    let e4_rhs = &a3.mul(&a) + &a.mul(&c3).scale(&int(8));
    let e6 = eisenstein_full(6, prec)?;
    let e6_rhs = &(&a3.mul(&a3) - &a3.mul(&c3).scale(&int(20))) - &c3.mul(&c3).scale(&int(8));
    let e3 = eisenstein_hecke(3, &DirichletCharacter::jacobi3(), prec)?;
    let e2_3 = dilate(|p| Ok(e2(p)), 3, prec)?;
    let gr = (&e2_3.scale(&int(3)) - &e2(prec)).scale(&ExactScalar::ratio(1, 2));
    let sha = eisenstein_hecke(1, &DirichletCharacter::jacobi3(), prec)?;
    Ok(vec![
        CheckResult::compare("E4 = a^4 + 8ac^3", &e4, &e4_rhs)?,
        CheckResult::compare("E6 = a^6 - 20a^3c^3 - 8c^6", &e6, &e6_rhs)?,
        CheckResult::compare("E3_chi3 = b^3", &e3, &b.pow(3)?)?,
        CheckResult::compare("(3E2(q^3) - E2(q))/2 = a^2", &gr, &a.mul(&a))?,
        CheckResult::compare("E1_chi3 = a", &sha, &a)?,
    ])
}

/// Which index form the mixed sums of the recursion use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IndexVariant {
    /// As printed: `G_{2n+2-2j}` in the first display, `G_{2n-2j,chi}` in
    /// the second.
    Printed,
    /// Swapped: `G_{2n-2j}` in the first display, `G_{2n+2-2j,chi}` in the
    /// second.
    Shifted,
}

/// How the unsubscripted `G` in the first display is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GReading {
    FullLevel,
    Principal,
}

impl GReading {
    fn kind(self) -> GKind {
        match self {
            GReading::FullLevel => GKind::Full,
            GReading::Principal => GKind::Principal,
        }
    }
}

/// Right-hand sides of the two recursion displays at `n`; compare the first
/// against `G_{2n+2,chi}` and the second against `G_{2n+2,1}`.
#[derive(Clone, Debug)]
pub struct CooperRhs {
    pub first: GradedSeries,
    pub second: GradedSeries,
}

pub fn cooper_recursion(
    n: u32,
    variant: IndexVariant,
    reading: GReading,
    prec: Precision,
) -> Result<CooperRhs> {
    if n == 0 {
        return Err(Error::InvalidInput("recursion index starts at n = 1".into()));
    }
    let g_chi = |k: u32| g_normalized(GKind::Chi, k, prec);
    let g0 = g_chi(0)?;
    let g2n = g_chi(n)?;
    let w = int(((2 * n + 1) * (2 * n + 2)) as i64);
    let mut first = g0.mul(&g0).mul(&g2n).scale(&(&w * &int(-9)));
    let mut second = g0.mul(&g2n).scale(&int(18));
    for j in 1..n {
        let binom = ExactScalar::from_bigint(binomial(2 * n as u64, 2 * j as u64));
        let gj = g_chi(j)?;
        let other_first = match variant {
            IndexVariant::Printed => n + 1 - j,
            IndexVariant::Shifted => n - j,
        };
        let term = gj.mul(&g_normalized(reading.kind(), other_first, prec)?);
        first = &first - &term.scale(&(&(&binom * &w) * &int(2)));
        let other_second = match variant {
            IndexVariant::Printed => n - j,
            IndexVariant::Shifted => n + 1 - j,
        };
        let term = gj.mul(&g_chi(other_second)?);
        second = &second + &term.scale(&(&binom * &int(6)));
    }
    Ok(CooperRhs { first, second })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &GradedSeries) -> Vec<i64> {
        s.q_coeffs()
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c.to_integer().unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn theta_function_leading_terms() {
        let p = Precision::q(5);
        assert_eq!(ints(&borwein_a(p)), vec![1, 6, 0, 6, 6, 0]);
        assert_eq!(ints(&borwein_b(p))[..2], [1, -3]);
        let c = borwein_c(p);
        assert_eq!(c.valuation(), Some(4));
        assert_eq!(c.coeff_t(4).unwrap(), &int(3));
        let c3 = c.pow(3).unwrap();
        assert!(c3.is_q_series());
        assert_eq!(c3.valuation(), Some(12));
        assert_eq!(c3.coeff_q(1).unwrap(), &int(27));
    }

    #[test]
    fn borwein_system() {
        let p = Precision::q(60);
        let (a, b, c) = (borwein_a(p), borwein_b(p), borwein_c(p));
        let cubes = &b.pow(3).unwrap() + &c.pow(3).unwrap();
        assert!(a.pow(3).unwrap().equal_to_order(&cubes, 60).unwrap());
        let a3 = dilate(|p| Ok(borwein_a(p)), 3, p).unwrap();
        let c3 = dilate(|p| Ok(borwein_c(p)), 3, p).unwrap();
        assert!(a.equal_to_order(&(&a3 + &c3.scale(&int(2))), 60).unwrap());
        assert!(b.equal_to_order(&(&a3 - &c3), 60).unwrap());
    }

    #[test]
    fn lattice_oracles_agree() {
        let p = Precision::q(40);
        assert_eq!(a_lattice_oracle(p), borwein_a(p));
        assert_eq!(b_lattice_oracle(p), borwein_b(p));
        assert_eq!(c_lattice_oracle(p), borwein_c(p));
        let theta = &theta3(1, p).mul(&theta3(3, p)) + &theta2(1, p).mul(&theta2(3, p));
        assert_eq!(theta, borwein_a(p));
    }

    #[test]
    fn eisenstein_leading_coefficients() {
        let p = Precision::q(3);
        assert_eq!(ints(&eisenstein_full(4, p).unwrap()), vec![1, 240, 2160, 6720]);
        assert_eq!(ints(&eisenstein_full(6, p).unwrap())[1], -504);
        assert_eq!(ints(&e2(p)), vec![1, -24, -72, -96]);
        assert!(eisenstein_full(3, p).is_err());
        assert!(matches!(
            eisenstein_hecke(2, &DirichletCharacter::jacobi3(), p),
            Err(Error::ZeroLValue { weight: 2, .. })
        ));
    }

    #[test]
    fn hecke_series_and_normalizations() {
        let p = Precision::q(30);
        let chi = DirichletCharacter::jacobi3();
        assert_eq!(eisenstein_hecke(1, &chi, p).unwrap(), borwein_a(p));
        let g0 = g_normalized(GKind::Chi, 0, p).unwrap();
        assert_eq!(g0.coeff_t(0).unwrap(), &ExactScalar::ratio(1, 6));
        assert_eq!(g0, borwein_a(p).scale(&ExactScalar::ratio(1, 6)));
        let g4 = g_normalized(GKind::Full, 2, p).unwrap();
        assert_eq!(g4.coeff_t(0).unwrap(), &ExactScalar::ratio(1, 240));
        assert_eq!(g4.coeff_q(2).unwrap(), &int(9));
    }

    #[test]
    fn labels_round_trip() {
        for s in [
            "a", "b", "c", "E2", "E4", "E12", "E3_chi3", "E6_one3", "E1_chi5", "G4", "G4_one3",
            "G0_chi3", "G2_chi3", "theta3", "theta2", "a_lattice", "b_lattice", "c_lattice",
        ] {
            let l: FormLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        for bad in ["nosuch", "E3", "G3", "E", "E4_xx", "G0", "Ex"] {
            assert!(matches!(bad.parse::<FormLabel>(), Err(Error::UnknownLabel(_))), "{bad}");
        }
        assert_eq!("G4_chi3".parse::<FormLabel>().unwrap().weight(), Some(5));
    }

    #[test]
    fn fits() {
        let p = Precision::q(40);
        let a = borwein_a(p);
        let b = borwein_b(p);
        let c = borwein_c(p);
        let e4 = eisenstein_full(4, p).unwrap();
        let a3 = a.pow(3).unwrap();
        let c3 = c.pow(3).unwrap();
        let basis = MonomialBasis::explicit(vec![
            ("a^4".into(), a3.mul(&a)),
            ("a*c^3".into(), a.mul(&c3)),
        ]);
        assert_eq!(fit_polynomial(&e4, &basis).unwrap().0, vec![int(1), int(8)]);

        let e3 = eisenstein_hecke(3, &DirichletCharacter::jacobi3(), p).unwrap();
        let cubes = MonomialBasis::homogeneous(&a3, &c3, 1, "a^3", "c^3").unwrap();
        assert_eq!(fit_polynomial(&e3, &cubes).unwrap().0, vec![int(1), int(-1)]);
        let ab = MonomialBasis::homogeneous(&a, &b, 3, "a", "b").unwrap();
        assert_eq!(fit_polynomial(&e3, &ab).unwrap().0, vec![int(0), int(0), int(0), int(1)]);

        let weight3 = MonomialBasis::homogeneous(&a, &c, 3, "a", "c").unwrap();
        assert!(matches!(fit_polynomial(&e4, &weight3), Err(Error::NoFit { .. })));

        let zero = GradedSeries::zero(p);
        assert!(fit_polynomial(&zero, &cubes).unwrap().is_zero());

        let dependent = MonomialBasis::explicit(vec![("a".into(), a.clone()), ("2a".into(), a.scale(&int(2)))]);
        assert!(matches!(fit_polynomial(&a, &dependent), Err(Error::UnderDetermined(_))));
    }

    #[test]
    fn parameterizations_hold() {
        for r in cubic_parameterization_check(Precision::q(40)).unwrap() {
            assert!(r.passed, "{} failed at {:?}", r.name, r.mismatch);
        }
    }

    #[test]
    fn cooper_first_display_at_n1() {
        let p = Precision::q(20);
        let rhs = cooper_recursion(1, IndexVariant::Printed, GReading::FullLevel, p).unwrap();
        let g0 = g_normalized(GKind::Chi, 0, p).unwrap();
        let g2 = g_normalized(GKind::Chi, 1, p).unwrap();
        assert_eq!(rhs.first, g0.mul(&g0).mul(&g2).scale(&int(-108)));
        assert_eq!(rhs.first, g_normalized(GKind::Chi, 2, p).unwrap());
    }
}
