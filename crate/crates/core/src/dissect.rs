//! Exact matrices for the trisection (`Omega_{3,m}`) and trimidiation (`pi`)
//! operators on homogeneous polynomials in the cubic theta functions,
//! together with determinants, characteristic polynomials and integer
//! eigen-analysis.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{binomial_i, serialize_display};
use crate::error::{Error, Result};
use crate::forms::{borwein_a, borwein_b, borwein_c, fit_polynomial, MonomialBasis, PolyCoefficients};
use crate::scalar::ExactScalar;
use crate::series::{GradedSeries, Precision};

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&x| rat(BigInt::from(x)))
            .collect();
        Self::new(rows.len(), cols, entries)
    }

    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> BigRational,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Rows as integers, or `None` if any entry is fractional.
    pub fn to_int_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|x| x.is_integer().then(|| x.to_integer()))
                    .collect()
            })
            .collect()
    }

    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let entries = indices.iter().flat_map(|&r| self.row(r).iter().cloned()).collect();
        ExactMatrix {
            rows: indices.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols)
                .map(|k| self.get(r, k) * other.get(k, c))
                .fold(BigRational::zero(), |a, b| a + b)
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("addition needs equal shapes".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix { entries, ..*self })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let entries = self.entries.iter().map(|x| x * k).collect();
        ExactMatrix { entries, ..*self }
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// `M v` for a vector of (possibly Gaussian) scalars.
    pub fn apply(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = ExactScalar::zero();
                for (m, x) in self.row(r).iter().zip(v) {
                    if !m.is_zero() && !x.is_zero() {
                        acc += &(&ExactScalar::real(m.clone()) * x);
                    }
                }
                acc
            })
            .collect())
    }

    fn require_square(&self, what: &str) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.rows)
    }

    /// Fraction-free (Bareiss) determinant. Rows are first cleared of
    /// denominators so the elimination runs over integers.
    pub fn det(&self) -> Result<BigRational> {
        let n = self.require_square("determinant")?;
        if n == 0 {
            return Ok(BigRational::one());
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|r| {
                let l = self
                    .row(r)
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                self.row(r)
                    .iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect();
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigRational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let det = &a[n - 1][n - 1] * sign;
        Ok(BigRational::new(det, scale))
    }

    /// Determinant by Laplace expansion along the first row. Exponential in
    /// the size; meant as an oracle for small matrices.
    pub fn det_cofactor(&self) -> Result<BigRational> {
        let n = self.require_square("determinant")?;
        fn expand(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> BigRational {
            if rows.is_empty() {
                return BigRational::one();
            }
            let r = rows[0];
            let mut acc = BigRational::zero();
            for (i, &c) in cols.iter().enumerate() {
                let x = m.get(r, c);
                if x.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&k| k != c).collect();
                let minor = expand(m, &rows[1..], &sub_cols);
                if i % 2 == 0 {
                    acc += x * minor;
                } else {
                    acc -= x * minor;
                }
            }
            acc
        }
        let idx: Vec<usize> = (0..n).collect();
        Ok(expand(self, &idx, &idx))
    }

    /// Coefficients `p_0..p_n` of `det(x I - M)`, lowest degree first, by
    /// the Faddeev-LeVerrier recursion.
    pub fn charpoly(&self) -> Result<Vec<BigRational>> {
        let n = self.require_square("characteristic polynomial")?;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m = Self::zeros(n, n);
        let id = Self::identity(n);
        for k in 1..=n {
            m = self.mul(&m)?.add(&id.scale(&coeffs[n - k + 1]))?;
            let am = self.mul(&m)?;
            coeffs[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
        }
        Ok(coeffs)
    }

    /// `p(M)` for coefficients listed lowest degree first.
    pub fn eval_poly(&self, p: &[BigRational]) -> Result<Self> {
        let n = self.require_square("polynomial evaluation")?;
        let mut acc = Self::zeros(n, n);
        for c in p.iter().rev() {
            acc = self.mul(&acc)?.add(&Self::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            for c in 0..m.cols {
                m.entries.swap(p * m.cols + c, row * m.cols + c);
            }
            let inv = m.get(row, col).recip();
            for c in 0..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let f = m.get(r, col).clone();
                    for c in 0..m.cols {
                        let v = m.get(r, c) - &f * m.get(row, c);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect();
        let mut st = s.serialize_struct("ExactMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

/// `B_d`: column `k` holds the coefficients of `pi(a^{3(d-k)} c^{3k})` in the
/// monomials `a^{3d-r} c^r`, `r = 0..=3d`.
pub fn matrix_b(d: usize) -> ExactMatrix {
    let d = d as i64;
    ExactMatrix::from_fn(3 * d as usize + 1, d as usize + 1, |r, k| {
        let (r, k) = (r as i64, k as i64);
        let mut acc = BigInt::zero();
        for j in 0..=k {
            for l in 0..=(3 * d - 3 * j) {
                let term = binomial_i(k, j)
                    * binomial_i(3 * d - 3 * j, l)
                    * binomial_i(3 * j, r - l)
                    * (BigInt::one() << l as usize);
                if (3 * j + l - r).rem_euclid(2) == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
        }
        rat(acc)
    })
}

/// Monomials `a^{3d-r} c^r` for `r = 0..=3d` with `r = m (mod 3)`.
pub fn ac_basis(d: usize, residue: Option<usize>, prec: Precision) -> Result<MonomialBasis> {
    let a = borwein_a(prec);
    let c = borwein_c(prec);
    let full = MonomialBasis::homogeneous(&a, &c, 3 * d as u32, "a", "c")?;
    Ok(match residue {
        None => full,
        Some(m) => MonomialBasis::explicit(
            full.names()
                .iter()
                .cloned()
                .zip(full.series().iter().cloned())
                .enumerate()
                .filter(|(r, _)| r % 3 == m)
                .map(|(_, x)| x)
                .collect(),
        ),
    })
}

/// The cube monomials `a^{3(d-k)} c^{3k}`, `k = 0..=d`, spanning the domain
/// of `B_d`.
pub fn cube_basis(d: usize, prec: Precision) -> Result<MonomialBasis> {
    let a3 = borwein_a(prec).pow(3)?;
    let c3 = borwein_c(prec).pow(3)?;
    MonomialBasis::homogeneous(&a3, &c3, d as u32, "a^3", "c^3")
}

fn real_column(p: &PolyCoefficients) -> Result<Vec<BigRational>> {
    p.0.iter()
        .map(|x| {
            x.is_real()
                .then(|| x.re().clone())
                .ok_or_else(|| Error::InvalidInput(format!("non-real matrix entry {x}")))
        })
        .collect()
}

fn from_columns(columns: Vec<Vec<BigRational>>) -> ExactMatrix {
    let rows = columns.first().map_or(0, Vec::len);
    ExactMatrix::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
}

fn one_third() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(3))
}

/// `B_d` rebuilt from series: each cube monomial is expanded, sent through
/// `q -> q^(1/3)` and refitted in the degree-`3d` `(a, c)` basis.
pub fn matrix_b_oracle(d: usize, prec: Precision) -> Result<ExactMatrix> {
    let domain = cube_basis(d, prec)?;
    let inner = Precision::t(prec.order_t() / 3);
    let target = ac_basis(d, None, inner)?;
    let columns = domain
        .series()
        .iter()
        .map(|f| {
            let g = f.substitute_q_power(&one_third())?;
            real_column(&fit_polynomial(&g, &target)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(from_columns(columns))
}

/// `C_d`: rows `r = 0 (mod 3)` of `B_d`, the matrix of `Omega_{3,0}` on the
/// cube monomials.
pub fn matrix_c(d: usize) -> ExactMatrix {
    let b = matrix_b(d);
    let rows: Vec<usize> = (0..=3 * d).step_by(3).collect();
    b.select_rows(&rows)
}

/// The trimidiation matrix: entry `(r, n)` is the coefficient of `a^r c^{d-r}`
/// in `pi(a^{d-n} b^n) = (a + 2c)^{d-n} (a - c)^n`.
pub fn matrix_btri(d: usize) -> ExactMatrix {
    let d = d as i64;
    let n_sz = d as usize + 1;
    ExactMatrix::from_fn(n_sz, n_sz, |r, n| {
        let (r, n) = (r as i64, n as i64);
        let mut acc = BigInt::zero();
        for k in 0..=(d - n) {
            let term = binomial_i(d - n, k)
                * binomial_i(n, r - k)
                * (BigInt::one() << (d - n - k) as usize);
            if (n - r + k).rem_euclid(2) == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        rat(acc)
    })
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn rising(x: i64, k: u64) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |a, i| a * (x + i))
}

/// `2^{d-n} (-1)^{n-r} C(n,r) 2F1(n-d, -r; n-r+1; -1/2)`, with
/// `C(n,r) / (n-r+1)_k` read as `n! / (r! (n-r+k)!)` so the series stays
/// finite when `n - r + 1 <= 0`.
pub fn btri_entry_hypergeometric(d: usize, r: usize, n: usize) -> BigRational {
    let (di, ri, ni) = (d as i64, r as i64, n as i64);
    let mut sum = BigRational::zero();
    for k in 0..=r as u64 {
        let low = ni - ri + k as i64;
        if low < 0 {
            continue;
        }
        let num = rising(ni - di, k) * rising(-ri, k) * factorial(n as u64);
        let den = factorial(k) * factorial(r as u64) * factorial(low as u64);
        let z = BigRational::new(
            if k % 2 == 0 { BigInt::one() } else { -BigInt::one() },
            BigInt::one() << k as usize,
        );
        sum += BigRational::new(num, den) * z;
    }
    let pre = BigRational::from_integer(BigInt::one() << (d - n));
    let sign = if (ni - ri).rem_euclid(2) == 0 { 1 } else { -1 };
    sum * pre * BigRational::from_integer(BigInt::from(sign))
}

/// Column indexing used when reading a trimidiation matrix off the series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ColumnConvention {
    /// Column `n` is the image of `a^{d-n} b^n`.
    ExponentOfB,
    /// Column `n` is the image of `a^n b^{d-n}`.
    ExponentOfA,
}

#[derive(Clone, Debug, Serialize)]
pub struct BtriOracleReport {
    pub d: usize,
    pub by_exponent_of_b: ExactMatrix,
    pub by_exponent_of_a: ExactMatrix,
    /// Conventions under which the series-built matrix equals `matrix_btri(d)`.
    pub matching: Vec<ColumnConvention>,
}

impl BtriOracleReport {
    pub fn resolved(&self) -> Option<ColumnConvention> {
        match self.matching.as_slice() {
            [one] => Some(*one),
            _ => None,
        }
    }
}

/// Builds the trimidiation matrix from series under both column conventions;
/// rows are the exponent of `a` in `a^r c^{d-r}`.
pub fn matrix_btri_oracle(d: usize, prec: Precision) -> Result<BtriOracleReport> {
    let a = borwein_a(prec);
    let b = borwein_b(prec);
    let inner = Precision::t(prec.order_t() / 3);
    let ai = borwein_a(inner);
    let ci = borwein_c(inner);
    // basis a^r c^{d-r} for r = 0..=d: reverse of the homogeneous (a, c) order
    let hom = MonomialBasis::homogeneous(&ai, &ci, d as u32, "a", "c")?;
    let target = MonomialBasis::explicit(
        hom.names()
            .iter()
            .cloned()
            .zip(hom.series().iter().cloned())
            .rev()
            .collect(),
    );
    let images = MonomialBasis::homogeneous(&a, &b, d as u32, "a", "b")?;
    let mut columns = Vec::new();
    for f in images.series() {
        let g = f.substitute_q_power(&one_third())?;
        columns.push(real_column(&fit_polynomial(&g, &target)?)?);
    }
    let by_b = from_columns(columns.clone());
    columns.reverse();
    let by_a = from_columns(columns);
    let printed = matrix_btri(d);
    let mut matching = Vec::new();
    if by_b == printed {
        matching.push(ColumnConvention::ExponentOfB);
    }
    if by_a == printed {
        matching.push(ColumnConvention::ExponentOfA);
    }
    Ok(BtriOracleReport {
        d,
        by_exponent_of_b: by_b,
        by_exponent_of_a: by_a,
        matching,
    })
}

/// Applies `B_d` to `f = sum alpha_k a^{3(d-k)} c^{3k}` and keeps
/// `beta_r` for `r = m (mod 3)`, so that
/// `Omega_{3,m}(f) = q^{-m/3} sum_{r = m (3)} beta_r a^{3d-r} c^r`.
/// The result is indexed like `ac_basis(d, Some(m), _)`.
pub fn omega_on_polynomial(coeffs: &PolyCoefficients, m: usize) -> Result<PolyCoefficients> {
    if coeffs.is_empty() {
        return Err(Error::InvalidInput("empty coefficient vector".into()));
    }
    if m > 2 {
        return Err(Error::InvalidInput(format!("residue {m} is not a class mod 3")));
    }
    let d = coeffs.len() - 1;
    let beta = matrix_b(d).apply(&coeffs.0)?;
    Ok(PolyCoefficients(beta.into_iter().skip(m).step_by(3).collect()))
}

/// Series of `q^{-m/3} sum beta_r a^{3d-r} c^r` for the output of
/// [`omega_on_polynomial`], i.e. the polynomial shifted down by `4m` in t.
pub fn omega_polynomial_series(
    beta: &PolyCoefficients,
    d: usize,
    m: usize,
    prec: Precision,
) -> Result<GradedSeries> {
    let basis = ac_basis(d, Some(m), prec)?;
    beta.evaluate(&basis)?.shift_down(4 * m)
}

/// An integer eigenvalue with a primitive integer eigenvector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenPair {
    #[serde(serialize_with = "serialize_display")]
    pub eigenvalue: BigInt,
    #[serde(serialize_with = "serialize_int_vec")]
    pub eigenvector: Vec<BigInt>,
}

fn serialize_int_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn serialize_rat_vec<S: Serializer>(
    v: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenAnalysis {
    /// `det(x I - M)`, lowest degree first.
    #[serde(serialize_with = "serialize_rat_vec")]
    pub charpoly: Vec<BigRational>,
    /// Sorted by decreasing eigenvalue.
    pub pairs: Vec<EigenPair>,
    /// Degree of the charpoly factor with no integer roots; not analyzed.
    pub unresolved_degree: usize,
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let flip = ints.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
    ints.into_iter()
        .map(|x| if flip { -x / &g } else { x / &g })
        .collect()
}

/// Prime factorization of `|n| > 0` by trial division up to `bound`; any
/// cofactor left over is returned as a single opaque block.
fn factor_small(n: &BigInt, bound: u64) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= bound && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

fn divisors_of(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_small(n, 1_000_000) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs
}

fn horner(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divides by `(x - r)`; `p` must vanish at `r`.
fn deflate(p: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + carry * r;
        q[i] = carry.clone();
    }
    q
}

/// Integer eigenvalues (divisors of the charpoly's constant term after
/// clearing denominators) with primitive integer eigenvectors spanning each
/// eigenspace.
pub fn integer_eigen(m: &ExactMatrix) -> Result<EigenAnalysis> {
    let charpoly = m.charpoly()?;
    let l = charpoly.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut poly: Vec<BigInt> = charpoly.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut roots: Vec<BigInt> = Vec::new();
    while poly.len() > 1 && poly[0].is_zero() {
        poly.remove(0);
        roots.push(BigInt::zero());
    }
    if poly.len() > 1 {
        for d in divisors_of(&poly[0]) {
            for cand in [d.clone(), -d] {
                while poly.len() > 1 && horner(&poly, &cand).is_zero() {
                    poly = deflate(&poly, &cand);
                    roots.push(cand.clone());
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots.reverse();
    let n = m.rows();
    let mut pairs = Vec::new();
    for lambda in roots {
        let shifted = m.add(&ExactMatrix::identity(n).scale(&-rat(lambda.clone())))?;
        for v in shifted.nullspace() {
            pairs.push(EigenPair {
                eigenvalue: lambda.clone(),
                eigenvector: primitive_integer_vector(&v),
            });
        }
    }
    Ok(EigenAnalysis {
        charpoly,
        pairs,
        unresolved_degree: poly.len() - 1,
    })
}

/// One determinant in a conjecture scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetScanRecord {
    pub index: usize,
    /// Matrix size.
    pub size: usize,
    #[serde(serialize_with = "serialize_display")]
    pub determinant: BigRational,
    pub sign: i8,
    /// `w` with `determinant = sign * 3^w`, or `None` when the determinant
    /// is not plus or minus a power of three.
    pub power_of_three: Option<u32>,
    /// Exponent predicted by the conjecture, where it makes a prediction.
    pub expected: Option<u32>,
}

impl DetScanRecord {
    pub fn new(index: usize, m: &ExactMatrix, expected: Option<u32>) -> Result<Self> {
        let det = m.det()?;
        let sign = match det.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        Ok(DetScanRecord {
            index,
            size: m.rows(),
            power_of_three: power_of_three(&det),
            determinant: det,
            sign,
            expected,
        })
    }

    pub fn matches_expected(&self) -> Option<bool> {
        self.expected.map(|e| self.power_of_three == Some(e))
    }

    pub fn verdict(&self) -> String {
        match self.power_of_three {
            Some(w) => format!("{}3^{w}", if self.sign < 0 { "-" } else { "" }),
            None => "NotAPowerOfThree".into(),
        }
    }
}

fn power_of_three(x: &BigRational) -> Option<u32> {
    if !x.is_integer() || x.is_zero() {
        return None;
    }
    let three = BigInt::from(3);
    let mut n = x.to_integer().abs();
    let mut w = 0;
    while (&n % &three).is_zero() {
        n /= &three;
        w += 1;
    }
    n.is_one().then_some(w)
}

/// Largest supported index of the `C_n = matrix_c(3n)` scan.
pub const DET_SCAN_C_MAX: usize = 3;
/// Largest supported index of the trimidiation scan.
pub const DET_SCAN_BTRI_MAX: usize = 8;

fn check_bound(value: usize, bound: usize, what: &'static str) -> Result<()> {
    if value == 0 || value > bound {
        return Err(Error::RangeExceeded {
            what,
            value: value as u64,
            bound: bound as u64,
        });
    }
    Ok(())
}

/// `det C_n` with `C_n = matrix_c(3n)` for `n = 1..=n_max`. The exponent
/// `16` is predicted at `n = 1`; other indices are recorded as data.
pub fn det_scan_c(n_max: usize) -> Result<Vec<DetScanRecord>> {
    check_bound(n_max, DET_SCAN_C_MAX, "n_max")?;
    (1..=n_max)
        .map(|n| DetScanRecord::new(n, &matrix_c(3 * n), (n == 1).then_some(16)))
        .collect()
}

/// `det matrix_c(d)` for every `d = 1..=d_max`.
pub fn det_scan_c_by_degree(d_max: usize) -> Result<Vec<DetScanRecord>> {
    check_bound(d_max, 3 * DET_SCAN_C_MAX, "d_max")?;
    (1..=d_max)
        .map(|d| DetScanRecord::new(d, &matrix_c(d), None))
        .collect()
}

/// `det matrix_btri(n)` for `n = 1..=n_max`, predicted `3^{n(n+1)/2}`.
pub fn det_scan_btri(n_max: usize) -> Result<Vec<DetScanRecord>> {
    check_bound(n_max, DET_SCAN_BTRI_MAX, "n_max")?;
    (1..=n_max)
        .map(|n| DetScanRecord::new(n, &matrix_btri(n), Some((n * (n + 1) / 2) as u32)))
        .collect()
}
