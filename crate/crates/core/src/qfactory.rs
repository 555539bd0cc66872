//! Series builders: Pochhammer symbols, eta quotients, Lambert series and
//! theta series.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{divisors, DirichletCharacter};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::series::{GradedSeries, Precision, GRADING};

/// `f *= (1 - q^k)` on q-indexed integer coefficients, in place.
fn mul_one_minus(f: &mut [BigInt], k: usize) {
    for n in (k..f.len()).rev() {
        if !f[n - k].is_zero() {
            let v = f[n - k].clone();
            f[n] -= v;
        }
    }
}

/// Inverse of an integer series with constant term `1`.
fn invert_monic(f: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(f[0].is_one());
    let tail: Vec<(usize, &BigInt)> = f
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let mut g = vec![BigInt::zero(); f.len()];
    g[0] = BigInt::one();
    for m in 1..f.len() {
        let mut acc = BigInt::zero();
        for &(k, fk) in &tail {
            if k > m {
                break;
            }
            if !g[m - k].is_zero() {
                acc += fk * &g[m - k];
            }
        }
        g[m] = -acc;
    }
    g
}

fn mul_int(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let n = f.len().min(g.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, a) in f.iter().enumerate().take(n) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate().take(n - i) {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    out
}

/// `(q^a; q^m)^e` with nonnegative `e`, q-indexed through `q^nq`.
fn pochhammer_pos(a: usize, m: usize, e: u64, nq: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(); nq + 1];
    f[0] = BigInt::one();
    let mut k = a;
    while k <= nq {
        for _ in 0..e {
            mul_one_minus(&mut f, k);
        }
        k += m;
    }
    f
}

fn int_series(coeffs: Vec<BigInt>, prec: Precision) -> GradedSeries {
    GradedSeries::from_q_coeffs(coeffs.into_iter().map(ExactScalar::from_bigint), prec)
}

/// Expansion of `(q^a; q^m)_inf^e`. Negative exponents expand the positive
/// power and invert once.
pub fn pochhammer_inf(a: u64, m: u64, e: i64, prec: Precision) -> Result<GradedSeries> {
    if a == 0 || m == 0 {
        return Err(Error::InvalidSpec(format!(
            "offset and modulus must be positive in ({a},{m},{e})"
        )));
    }
    let nq = prec.q_order();
    let pos = pochhammer_pos(a as usize, m as usize, e.unsigned_abs(), nq);
    let coeffs = if e < 0 { invert_monic(&pos) } else { pos };
    Ok(int_series(coeffs, prec))
}

/// Generalized pentagonal numbers `k(3k-1)/2` with sign `(-1)^k`, up to `nq`.
fn pentagonal_terms(nq: usize) -> Vec<(usize, i64)> {
    let mut out = vec![(0, 1)];
    for k in 1usize.. {
        let p1 = k * (3 * k - 1) / 2;
        if p1 > nq {
            break;
        }
        let s = if k % 2 == 0 { 1 } else { -1 };
        out.push((p1, s));
        let p2 = k * (3 * k + 1) / 2;
        if p2 <= nq {
            out.push((p2, s));
        }
    }
    out
}

/// `(q;q)_inf` by the pentagonal number theorem.
pub fn euler_product_fast(prec: Precision) -> GradedSeries {
    let nq = prec.q_order();
    let mut coeffs = vec![BigInt::zero(); nq + 1];
    for (n, s) in pentagonal_terms(nq) {
        coeffs[n] = BigInt::from(s);
    }
    int_series(coeffs, prec)
}

/// One factor `(q^offset; q^modulus)^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EtaFactor {
    pub offset: u64,
    pub modulus: u64,
    pub exponent: i64,
}

impl EtaFactor {
    pub fn new(offset: u64, modulus: u64, exponent: i64) -> Self {
        EtaFactor {
            offset,
            modulus,
            exponent,
        }
    }
}

/// `prefactor * t^prefactor_t_exponent * prod (q^a; q^m)^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaQuotientSpec {
    factors: Vec<EtaFactor>,
    prefactor: ExactScalar,
    prefactor_t_exponent: usize,
}

impl EtaQuotientSpec {
    /// Builds and normalizes: merges repeated `(a, m)` pairs, drops zero
    /// exponents and sorts by modulus then offset.
    pub fn new(
        factors: Vec<EtaFactor>,
        prefactor: ExactScalar,
        prefactor_t_exponent: usize,
    ) -> Result<Self> {
        let mut merged: BTreeMap<(u64, u64), i64> = BTreeMap::new();
        for f in factors {
            if f.offset == 0 || f.modulus == 0 {
                return Err(Error::InvalidSpec(format!(
                    "offset and modulus must be positive in ({},{},{})",
                    f.offset, f.modulus, f.exponent
                )));
            }
            if f.offset > f.modulus {
                return Err(Error::InvalidSpec(format!(
                    "offset {} exceeds modulus {}",
                    f.offset, f.modulus
                )));
            }
            *merged.entry((f.modulus, f.offset)).or_default() += f.exponent;
        }
        let factors = merged
            .into_iter()
            .filter(|&(_, e)| e != 0)
            .map(|((m, a), e)| EtaFactor::new(a, m, e))
            .collect();
        Ok(EtaQuotientSpec {
            factors,
            prefactor,
            prefactor_t_exponent,
        })
    }

    pub fn product(factors: Vec<EtaFactor>) -> Result<Self> {
        Self::new(factors, ExactScalar::one(), 0)
    }

    /// Factors given as `(a, m, e)` where a negative `a` stands for
    /// `(-q^|a|; q^m)^e = (q^{2|a|}; q^{2m})^e / (q^|a|; q^m)^e`.
    pub fn from_signed(
        triples: &[(i64, u64, i64)],
        prefactor: ExactScalar,
        prefactor_t_exponent: usize,
    ) -> Result<Self> {
        let mut factors = Vec::new();
        for &(a, m, e) in triples {
            if a < 0 {
                let a = a.unsigned_abs();
                factors.push(EtaFactor::new(2 * a, 2 * m, e));
                factors.push(EtaFactor::new(a, m, -e));
            } else {
                factors.push(EtaFactor::new(a as u64, m, e));
            }
        }
        Self::new(factors, prefactor, prefactor_t_exponent)
    }

    pub fn factors(&self) -> &[EtaFactor] {
        &self.factors
    }

    pub fn prefactor(&self) -> &ExactScalar {
        &self.prefactor
    }

    pub fn prefactor_t_exponent(&self) -> usize {
        self.prefactor_t_exponent
    }

    /// Spec of the product of two quotients.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Self::new(
            factors,
            &self.prefactor * &other.prefactor,
            self.prefactor_t_exponent + other.prefactor_t_exponent,
        )
    }
}

/// Exact expansion of an eta quotient. All products run over integers; the
/// negative part is inverted once at the end.
pub fn eta_quotient(spec: &EtaQuotientSpec, prec: Precision) -> GradedSeries {
    let s = spec.prefactor_t_exponent;
    if s > prec.order_t() {
        return GradedSeries::zero(prec);
    }
    let inner = Precision::t(prec.order_t() - s);
    let nq = inner.q_order();
    let mut num = vec![BigInt::zero(); nq + 1];
    num[0] = BigInt::one();
    let mut den = num.clone();
    for f in &spec.factors {
        let target = if f.exponent > 0 { &mut num } else { &mut den };
        let mut k = f.offset as usize;
        while k <= nq {
            for _ in 0..f.exponent.unsigned_abs() {
                mul_one_minus(target, k);
            }
            k += f.modulus as usize;
        }
    }
    let coeffs = if den.iter().skip(1).all(Zero::is_zero) {
        num
    } else {
        mul_int(&num, &invert_monic(&den))
    };
    int_series(coeffs, inner)
        .scale(&spec.prefactor)
        .shift_up(s)
}

fn scalar_text(c: &ExactScalar) -> String {
    if c.is_real() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} * q^({}/{}) * prod[",
            scalar_text(&self.prefactor),
            self.prefactor_t_exponent,
            GRADING
        )?;
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{},{})", x.offset, x.modulus, x.exponent)?;
        }
        f.write_str("]")
    }
}

/// Splits on `sep` outside of brackets and parentheses, returning byte
/// offsets with each piece.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// Parses the body of `prod[...]`: a comma-separated list of `(a,m,e)`
/// triples, where `a` may be negative.
pub fn parse_factor_list(body: &str, base: usize) -> Result<Vec<(i64, u64, i64)>> {
    let mut out = Vec::new();
    if body.trim().is_empty() {
        return Ok(out);
    }
    for (off, piece) in split_top_level(body, ',') {
        let pos = base + off;
        let p = piece.trim();
        let inner = p
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(pos, format!("expected `(a,m,e)`, found `{p}`")))?;
        let nums: Vec<&str> = inner.split(',').map(str::trim).collect();
        if nums.len() != 3 {
            return Err(Error::parse(pos, format!("expected three entries in `{p}`")));
        }
        let bad = |what: &str| Error::parse(pos, format!("invalid {what} in `{p}`"));
        let a: i64 = nums[0].parse().map_err(|_| bad("offset"))?;
        let m: u64 = nums[1].parse().map_err(|_| bad("modulus"))?;
        let e: i64 = nums[2].parse().map_err(|_| bad("exponent"))?;
        if a == 0 || m == 0 {
            return Err(bad("zero offset or modulus"));
        }
        out.push((a, m, e));
    }
    Ok(out)
}

/// Parses `q`, `q^n`, `q^(a/b)` into a t-exponent.
pub(crate) fn parse_q_monomial(s: &str, pos: usize) -> Result<Option<usize>> {
    let s = s.trim();
    let Some(rest) = s.strip_prefix('q') else {
        return Ok(None);
    };
    let rest = rest.trim();
    if rest.is_empty() {
        return Ok(Some(GRADING));
    }
    let Some(exp) = rest.strip_prefix('^') else {
        return Ok(None);
    };
    let exp = exp.trim();
    let exp = exp
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(exp);
    let bad = || Error::parse(pos, format!("invalid q exponent `{exp}`"));
    let (num, den) = match exp.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<usize>().map_err(|_| bad())?,
            d.trim().parse::<usize>().map_err(|_| bad())?,
        ),
        None => (exp.parse::<usize>().map_err(|_| bad())?, 1),
    };
    if den == 0 || (num * GRADING) % den != 0 {
        return Err(Error::parse(
            pos,
            format!("q^({num}/{den}) is not a power of q^(1/{GRADING})"),
        ));
    }
    Ok(Some(num * GRADING / den))
}

impl FromStr for EtaQuotientSpec {
    type Err = Error;

    /// Accepts any `*`-separated combination of scalars, q-monomials and
    /// `prod[...]` blocks, e.g. `27 * q * prod[(3,3,6),(1,1,6)]`.
    fn from_str(s: &str) -> Result<Self> {
        let mut prefactor = ExactScalar::one();
        let mut t_exp = 0usize;
        let mut triples = Vec::new();
        for (off, piece) in split_top_level(s, '*') {
            let p = piece.trim();
            let lead = piece.len() - piece.trim_start().len();
            let pos = off + lead;
            if p.is_empty() {
                return Err(Error::parse(pos, "empty factor"));
            }
            if let Some(body) = p.strip_prefix("prod[").and_then(|r| r.strip_suffix(']')) {
                triples.extend(parse_factor_list(body, pos + 5)?);
            } else if let Some(e) = parse_q_monomial(p, pos)? {
                t_exp += e;
            } else {
                let c: ExactScalar = p
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("unrecognized factor `{p}`")))?;
                prefactor = &prefactor * &c;
            }
        }
        Self::from_signed(&triples, prefactor, t_exp)
    }
}

/// `sum_{n>=1} chi(n) n^w sum_t c_t sum_{j>=0} psi(s_t + M j) q^{n (s_t + M j)}`,
/// i.e. `sum_n chi(n) n^w (sum_t c_t q^{s_t n}) / (1 - q^{M n})` when `psi`
/// is absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambertSpec {
    pub weight: u32,
    /// `(coefficient, shift)` pairs of the numerator.
    pub terms: Vec<(ExactScalar, u64)>,
    pub modulus: u64,
    pub chi: DirichletCharacter,
    pub psi: Option<DirichletCharacter>,
}

impl LambertSpec {
    /// `sum chi(n) n^w q^n / (1 - q^n)`.
    pub fn divisor_sum(weight: u32, chi: DirichletCharacter) -> Self {
        LambertSpec {
            weight,
            terms: vec![(ExactScalar::one(), 1)],
            modulus: 1,
            chi,
            psi: None,
        }
    }

    /// Coefficient of `q^N` as the twisted divisor sum
    /// `sum_{n | N, N/n = s_t + M j} chi(n) n^w c_t psi(N/n)`.
    pub fn coefficient_by_enumeration(&self, big_n: u64) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        if big_n == 0 {
            return acc;
        }
        for n in divisors(big_n) {
            let k = big_n / n;
            let chi_n = self.chi.value_u(n);
            if chi_n.is_zero() {
                continue;
            }
            let psi_k = self.psi.as_ref().map_or(ExactScalar::one(), |p| p.value_u(k).clone());
            for (c, s) in &self.terms {
                if k >= *s && (k - s) % self.modulus == 0 {
                    let term = &(chi_n * c) * &psi_k;
                    acc += &term.scale_int(&BigInt::from(n).pow(self.weight));
                }
            }
        }
        acc
    }

    fn validate(&self) -> Result<()> {
        if self.modulus == 0 || self.terms.iter().any(|&(_, s)| s == 0) {
            return Err(Error::InvalidSpec(
                "Lambert shifts and modulus must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Termwise expansion of a Lambert series; the constant term is zero.
pub fn lambert_series(spec: &LambertSpec, prec: Precision) -> Result<GradedSeries> {
    spec.validate()?;
    let nq = prec.q_order() as u64;
    let mut coeffs = vec![ExactScalar::zero(); nq as usize + 1];
    for n in 1..=nq {
        let chi_n = spec.chi.value_u(n);
        if chi_n.is_zero() {
            continue;
        }
        let base = chi_n.scale_int(&BigInt::from(n).pow(spec.weight));
        for (c, s) in &spec.terms {
            let head = &base * c;
            let mut k = *s;
            while n * k <= nq {
                match &spec.psi {
                    Some(psi) => {
                        let v = psi.value_u(k);
                        if !v.is_zero() {
                            coeffs[(n * k) as usize] += &(&head * v);
                        }
                    }
                    None => coeffs[(n * k) as usize] += &head,
                }
                k += spec.modulus;
            }
        }
    }
    Ok(GradedSeries::from_q_coeffs(coeffs, prec))
}

/// `theta3(q^m) = sum_{n in Z} q^{m n^2}`.
pub fn theta3(m: u64, prec: Precision) -> GradedSeries {
    let order = prec.order_t();
    let mut coeffs = vec![ExactScalar::zero(); order + 1];
    coeffs[0] = ExactScalar::one();
    let two = ExactScalar::from_int(2);
    for n in 1usize.. {
        let e = GRADING * m as usize * n * n;
        if e > order {
            break;
        }
        coeffs[e] = two.clone();
    }
    GradedSeries::from_t_coeffs(coeffs)
}

/// `theta2(q^m) = sum_{n in Z} q^{m (n + 1/2)^2}`, supported on
/// t-exponents `3 m (2n+1)^2`.
pub fn theta2(m: u64, prec: Precision) -> GradedSeries {
    let order = prec.order_t();
    let mut coeffs = vec![ExactScalar::zero(); order + 1];
    let two = ExactScalar::from_int(2);
    for n in 0usize.. {
        let e = 3 * m as usize * (2 * n + 1) * (2 * n + 1);
        if e > order {
            break;
        }
        coeffs[e] = two.clone();
    }
    GradedSeries::from_t_coeffs(coeffs)
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
    fn euler_product_matches_pentagonal() {
        let p = pochhammer_inf(1, 1, 1, Precision::q(16)).unwrap();
        assert_eq!(
            ints(&p),
            vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0]
        );
        assert_eq!(p, euler_product_fast(Precision::q(16)));
        assert_eq!(pochhammer_inf(1, 1, 0, Precision::q(5)).unwrap(), GradedSeries::one(Precision::q(5)));
    }

    #[test]
    fn euler_product_cross_check_to_order_200() {
        let prec = Precision::t(2400);
        assert_eq!(pochhammer_inf(1, 1, 1, prec).unwrap(), euler_product_fast(prec));
    }

    #[test]
    fn partition_numbers_from_inverse() {
        let p = pochhammer_inf(1, 1, -1, Precision::q(10)).unwrap();
        assert_eq!(ints(&p), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        let direct = euler_product_fast(Precision::q(10)).invert().unwrap();
        assert_eq!(p, direct);
    }

    #[test]
    fn first_factor_of_mod_five_product() {
        let p = pochhammer_inf(2, 5, 1, Precision::q(6)).unwrap();
        assert_eq!(ints(&p), vec![1, 0, -1, 0, 0, 0, 0]);
    }

    #[test]
    fn garvan_rhs_and_three_core_generating_function() {
        let spec: EtaQuotientSpec = "3 * prod[(3,3,6),(1,1,-2)]".parse().unwrap();
        let s = eta_quotient(&spec, Precision::q(4));
        assert_eq!(ints(&s)[..3], [3, 6, 15]);
        let core: EtaQuotientSpec = "prod[(3,3,3),(1,1,-1)]".parse().unwrap();
        assert_eq!(ints(&eta_quotient(&core, Precision::q(4))), vec![1, 1, 2, 0, 2]);
    }

    #[test]
    fn empty_spec_is_one() {
        let spec = EtaQuotientSpec::product(vec![]).unwrap();
        assert_eq!(eta_quotient(&spec, Precision::q(7)), GradedSeries::one(Precision::q(7)));
    }

    #[test]
    fn spec_text_round_trip() {
        let spec: EtaQuotientSpec = "3 * q^(1/3) * prod[(1,1,-1),(3,3,3)]".parse().unwrap();
        let text = spec.to_string();
        assert_eq!(text, "3 * q^(4/12) * prod[(1,1,-1),(3,3,3)]");
        assert_eq!(text.parse::<EtaQuotientSpec>().unwrap(), spec);
        let g: EtaQuotientSpec = "(1+i) * prod[(2,5,1)]".parse().unwrap();
        assert_eq!(g.to_string().parse::<EtaQuotientSpec>().unwrap(), g);
        assert!(matches!("prod[(1,1)]".parse::<EtaQuotientSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("prod[(3,2,1)]".parse::<EtaQuotientSpec>(), Err(Error::InvalidSpec(_))));
        assert!(matches!("q^(1/5)".parse::<EtaQuotientSpec>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn negative_offset_normalizes() {
        let spec: EtaQuotientSpec = "prod[(-1,2,1)]".parse().unwrap();
        assert_eq!(spec.factors(), &[EtaFactor::new(1, 2, -1), EtaFactor::new(2, 4, 1)]);
        // (-q;q^2) = 1 + q + q^3 + q^4 + q^5 + q^6 + q^7 + 2q^8 ...
        let s = eta_quotient(&spec, Precision::q(8));
        assert_eq!(ints(&s), vec![1, 1, 0, 1, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn prefactor_shift_keeps_order() {
        let spec: EtaQuotientSpec = "3 * q^(1/3) * prod[(3,3,3),(1,1,-1)]".parse().unwrap();
        let s = eta_quotient(&spec, Precision::q(3));
        assert_eq!(s.order_t(), 36);
        assert_eq!(s.coeff_t(4).unwrap(), &ExactScalar::from_int(3));
        assert_eq!(s.coeff_t(16).unwrap(), &ExactScalar::from_int(3));
    }

    #[test]
    fn lambert_examples() {
        let triv = DirichletCharacter::trivial();
        let s = lambert_series(&LambertSpec::divisor_sum(1, triv), Precision::q(6)).unwrap();
        assert_eq!(s.coeff_q(6).unwrap(), &ExactScalar::from_int(12));
        let sha = lambert_series(
            &LambertSpec::divisor_sum(0, DirichletCharacter::jacobi3()),
            Precision::q(4),
        )
        .unwrap();
        let a = &GradedSeries::one(Precision::q(4)) + &sha.scale(&ExactScalar::from_int(6));
        assert_eq!(ints(&a), vec![1, 6, 0, 6, 6]);
        let lr = LambertSpec {
            weight: 5,
            terms: vec![(ExactScalar::one(), 1), (ExactScalar::one(), 2)],
            modulus: 3,
            chi: DirichletCharacter::trivial(),
            psi: None,
        };
        let s = lambert_series(&lr, Precision::q(3)).unwrap();
        assert_eq!(ints(&s), vec![0, 1, 33, 243]);
    }

    #[test]
    fn lambert_matches_enumeration() {
        let q5 = DirichletCharacter::quintic5();
        let spec = LambertSpec {
            weight: 2,
            terms: vec![(ExactScalar::one(), 1), (ExactScalar::i(), 4)],
            modulus: 5,
            chi: q5.clone(),
            psi: Some(DirichletCharacter::jacobi3()),
        };
        let s = lambert_series(&spec, Precision::q(50)).unwrap();
        for n in 0..=50 {
            assert_eq!(s.coeff_q(n).unwrap(), &spec.coefficient_by_enumeration(n as u64), "n = {n}");
        }
    }

    #[test]
    fn theta_supports() {
        let t3 = theta3(1, Precision::q(9));
        assert_eq!(ints(&t3), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
        let t2 = theta2(1, Precision::t(30));
        let support: Vec<usize> = t2.terms().map(|(e, _)| e).collect();
        assert_eq!(support, vec![3, 27]);
        let t2m = theta2(3, Precision::t(100));
        assert_eq!(t2m.terms().map(|(e, _)| e).collect::<Vec<_>>(), vec![9, 81]);
    }
}
