//! Dirichlet characters, Bernoulli numbers, L-values at nonpositive
//! integers, twisted divisor sums and the 3-core partition oracle.

use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CharacterKind {
    /// The character modulo 1.
    Trivial,
    /// Principal character modulo 3.
    Principal3,
    /// Jacobi symbol `(./3)`.
    Jacobi3,
    /// Quartic character modulo 5 with values `0, 1, -i, i, -1`.
    Quintic5,
}

/// A table-driven Dirichlet character.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    kind: CharacterKind,
    values: Vec<ExactScalar>,
}

impl DirichletCharacter {
    pub fn new(kind: CharacterKind) -> Self {
        let ints = |v: &[i64]| v.iter().map(|&x| ExactScalar::from_int(x)).collect();
        let values = match kind {
            CharacterKind::Trivial => ints(&[1]),
            CharacterKind::Principal3 => ints(&[0, 1, 1]),
            CharacterKind::Jacobi3 => ints(&[0, 1, -1]),
            CharacterKind::Quintic5 => {
                let i = ExactScalar::i();
                vec![
                    ExactScalar::zero(),
                    ExactScalar::one(),
                    -&i,
                    i,
                    ExactScalar::from_int(-1),
                ]
            }
        };
        DirichletCharacter { kind, values }
    }

    pub fn trivial() -> Self {
        Self::new(CharacterKind::Trivial)
    }

    pub fn principal3() -> Self {
        Self::new(CharacterKind::Principal3)
    }

    pub fn jacobi3() -> Self {
        Self::new(CharacterKind::Jacobi3)
    }

    pub fn quintic5() -> Self {
        Self::new(CharacterKind::Quintic5)
    }

    pub fn all() -> [DirichletCharacter; 4] {
        [
            Self::trivial(),
            Self::principal3(),
            Self::jacobi3(),
            Self::quintic5(),
        ]
    }

    pub fn kind(&self) -> CharacterKind {
        self.kind
    }

    pub fn modulus(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn value(&self, n: i64) -> &ExactScalar {
        let f = self.values.len() as i64;
        &self.values[n.rem_euclid(f) as usize]
    }

    pub fn value_u(&self, n: u64) -> &ExactScalar {
        &self.values[(n % self.values.len() as u64) as usize]
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(ExactScalar::is_real)
    }

    /// `chi(-1)`: `1` for even characters, `-1` for odd ones.
    pub fn parity(&self) -> &ExactScalar {
        self.value(-1)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            CharacterKind::Trivial => "triv",
            CharacterKind::Principal3 => "one3",
            CharacterKind::Jacobi3 => "chi3",
            CharacterKind::Quintic5 => "chi5",
        }
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DirichletCharacter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.trim() {
            "triv" | "1" => CharacterKind::Trivial,
            "one3" => CharacterKind::Principal3,
            "chi3" => CharacterKind::Jacobi3,
            "chi5" => CharacterKind::Quintic5,
            other => return Err(Error::UnknownLabel(other.to_string())),
        };
        Ok(Self::new(kind))
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient that vanishes outside `0 <= k <= n`.
pub fn binomial_i(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        binomial(n as u64, k as u64)
    }
}

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// Bernoulli number `B_n` with `B_1 = -1/2`, memoized.
pub fn bernoulli(n: usize) -> BigRational {
    let mut memo = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    while memo.len() <= n {
        let m = memo.len();
        if m == 0 {
            memo.push(BigRational::one());
            continue;
        }
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = BigRational::zero();
        for (k, bk) in memo.iter().enumerate() {
            if !bk.is_zero() {
                acc += bk * BigRational::from_integer(binomial(m as u64 + 1, k as u64));
            }
        }
        memo.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    memo[n].clone()
}

/// Bernoulli polynomial `B_n(x) = sum_k C(n,k) B_k x^(n-k)`.
pub fn bernoulli_poly(n: usize, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    let mut xp = BigRational::one();
    // accumulate from k = n down to 0 so x^(n-k) grows incrementally
    for k in (0..=n).rev() {
        let bk = bernoulli(k);
        if !bk.is_zero() {
            acc += bk * BigRational::from_integer(binomial(n as u64, k as u64)) * &xp;
        }
        xp *= x;
    }
    acc
}

/// Generalized Bernoulli number `B_{n,chi} = f^(n-1) sum_{a=1}^{f} chi(a) B_n(a/f)`.
pub fn gen_bernoulli(n: usize, chi: &DirichletCharacter) -> ExactScalar {
    assert!(n >= 1, "generalized Bernoulli numbers start at n = 1");
    let f = chi.modulus();
    let mut acc = ExactScalar::zero();
    for a in 1..=f {
        let v = chi.value_u(a);
        if v.is_zero() {
            continue;
        }
        let x = BigRational::new(BigInt::from(a), BigInt::from(f));
        acc += &(v * &ExactScalar::real(bernoulli_poly(n, &x)));
    }
    acc.scale_int(&BigInt::from(f).pow(n as u32 - 1))
}

/// `L(1 - n, chi) = -B_{n,chi} / n` for `n >= 1`.
pub fn lvalue_at_nonpositive(n: usize, chi: &DirichletCharacter) -> ExactScalar {
    let b = gen_bernoulli(n, chi);
    -(&b / &ExactScalar::from_int(n as i64))
}

/// `zeta(1 - n)` for `n >= 1`.
pub fn zeta_at_nonpositive(n: usize) -> BigRational {
    lvalue_at_nonpositive(n, &DirichletCharacter::trivial())
        .re()
        .clone()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `sum_{d | n} chi(d) psi(n/d) d^w` by direct enumeration.
pub fn sigma_twisted(
    n: u64,
    w: u32,
    chi: &DirichletCharacter,
    psi: &DirichletCharacter,
) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for d in divisors(n) {
        let c = chi.value_u(d) * psi.value_u(n / d);
        if !c.is_zero() {
            acc += &c.scale_int(&BigInt::from(d).pow(w));
        }
    }
    acc
}

/// 3-adic valuation of a nonzero integer.
pub fn valuation3(n: &BigInt) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let three = BigInt::from(3);
    let mut n = n.abs();
    let mut v = 0;
    while (&n % &three).is_zero() {
        n /= &three;
        v += 1;
    }
    v
}

/// Hook lengths of a partition given as nonincreasing parts.
pub fn hook_lengths(parts: &[usize]) -> Vec<usize> {
    let conj: Vec<usize> = (0..parts.first().copied().unwrap_or(0))
        .map(|j| parts.iter().take_while(|&&p| p > j).count())
        .collect();
    let mut hooks = Vec::new();
    for (i, &row) in parts.iter().enumerate() {
        for (j, &col) in conj.iter().enumerate().take(row) {
            hooks.push((row - j - 1) + (col - i - 1) + 1);
        }
    }
    hooks
}

/// Enumeration bound for [`three_core_count`].
pub const THREE_CORE_BOUND: u64 = 40;

/// Number of partitions of `k` with no hook length divisible by 3, counted
/// by generating every partition.
pub fn three_core_count(k: u64) -> Result<u64> {
    if k > THREE_CORE_BOUND {
        return Err(Error::RangeExceeded {
            what: "k",
            value: k,
            bound: THREE_CORE_BOUND,
        });
    }
    fn walk(rest: usize, max_part: usize, parts: &mut Vec<usize>, count: &mut u64) {
        if rest == 0 {
            if hook_lengths(parts).iter().all(|h| h % 3 != 0) {
                *count += 1;
            }
            return;
        }
        for p in (1..=rest.min(max_part)).rev() {
            parts.push(p);
            walk(rest - p, p, parts, count);
            parts.pop();
        }
    }
    let mut count = 0;
    walk(k as usize, k as usize, &mut Vec::new(), &mut count);
    Ok(count)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Legendre symbol `(n/p)` by listing the squares modulo `p`.
fn legendre_by_squares(n: i64, p: u64) -> i64 {
    let r = n.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if (1..p).any(|x| x * x % p == r) {
        1
    } else {
        -1
    }
}

/// Checks `n^(phi(p^lambda)/2) == (n/p) mod p^lambda`.
pub fn power_residue_check(n: i64, p: u64, lambda: u32) -> Result<bool> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    if lambda == 0 {
        return Err(Error::InvalidInput("lambda must be at least 1".into()));
    }
    if n.rem_euclid(p as i64) == 0 {
        return Err(Error::InvalidInput(format!("{p} divides {n}")));
    }
    let modulus = BigInt::from(p).pow(lambda);
    let half_phi = BigInt::from(p).pow(lambda - 1) * BigInt::from(p - 1) / 2;
    let base = BigInt::from(n).mod_floor(&modulus);
    let lhs = base.modpow(&half_phi, &modulus);
    let rhs = BigInt::from(legendre_by_squares(n, p)).mod_floor(&modulus);
    Ok(lhs == rhs)
}

/// A finitely checkable congruence `value(k) == target(k) mod modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceClaim {
    /// Human-readable name of the dissected sum.
    pub family: String,
    #[serde(serialize_with = "serialize_display")]
    pub modulus: BigInt,
    /// Inclusive index range.
    pub range: (u64, u64),
}

impl CongruenceClaim {
    /// Indices in the range where `value - target` is not divisible by the
    /// modulus.
    pub fn failures<F>(&self, mut residual: F) -> Vec<u64>
    where
        F: FnMut(u64) -> BigInt,
    {
        (self.range.0..=self.range.1)
            .filter(|&k| !residual(k).mod_floor(&self.modulus).is_zero())
            .collect()
    }
}

/// Serializes any `Display` value as a JSON string, keeping big integers
/// exact.
pub(crate) fn serialize_display<T, S>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error>
where
    T: fmt::Display,
    S: serde::Serializer,
{
    s.collect_str(v)
}

/// Converts a real integral scalar to `BigInt`, panicking otherwise. The
/// divisor sums fed to it are integral by construction.
pub(crate) fn integral(x: &ExactScalar) -> BigInt {
    x.to_integer()
        .unwrap_or_else(|| panic!("expected an integer, found {x}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(6), q(1, 42));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn zeta_gives_eisenstein_leading_factors() {
        // 2 / zeta(1 - 2k): -24, 240, -504
        let two = q(2, 1);
        assert_eq!(zeta_at_nonpositive(2), q(-1, 12));
        assert_eq!(&two / zeta_at_nonpositive(2), q(-24, 1));
        assert_eq!(&two / zeta_at_nonpositive(4), q(240, 1));
        assert_eq!(&two / zeta_at_nonpositive(6), q(-504, 1));
        assert_eq!(zeta_at_nonpositive(1), q(-1, 2));
    }

    #[test]
    fn l_values_mod_three() {
        let chi = DirichletCharacter::jacobi3();
        assert_eq!(gen_bernoulli(1, &chi), ExactScalar::ratio(-1, 3));
        let l0 = lvalue_at_nonpositive(1, &chi);
        assert_eq!(l0, ExactScalar::ratio(1, 3));
        assert_eq!(&ExactScalar::from_int(2) / &l0, ExactScalar::from_int(6));
        let one = DirichletCharacter::principal3();
        assert_eq!(lvalue_at_nonpositive(2, &one), ExactScalar::ratio(1, 6));
    }

    #[test]
    fn principal_l_values_match_euler_factor() {
        let one = DirichletCharacter::principal3();
        for n in 1..=16usize {
            let euler = zeta_at_nonpositive(n)
                * (BigRational::one() - BigRational::from_integer(BigInt::from(3).pow(n as u32 - 1)));
            assert_eq!(lvalue_at_nonpositive(n, &one), euler, "n = {n}");
        }
    }

    #[test]
    fn wrong_parity_l_values_vanish() {
        let chi = DirichletCharacter::jacobi3();
        for n in (2..12).step_by(2) {
            assert!(lvalue_at_nonpositive(n, &chi).is_zero());
        }
    }

    #[test]
    fn characters_sum_to_zero_and_are_multiplicative() {
        for chi in DirichletCharacter::all() {
            let f = chi.modulus() as i64;
            let total = (0..f).fold(ExactScalar::zero(), |acc, a| &acc + chi.value(a));
            let expect = match chi.kind() {
                CharacterKind::Trivial => 1,
                CharacterKind::Principal3 => 2,
                _ => 0,
            };
            assert_eq!(total, ExactScalar::from_int(expect), "{chi}");
            for a in 0..30 {
                for b in 0..30 {
                    assert_eq!(chi.value(a * b), &(chi.value(a) * chi.value(b)));
                }
            }
        }
        let q5 = DirichletCharacter::quintic5();
        let expect: Vec<ExactScalar> = ["0", "1", "-i", "i", "-1"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!((0..5).map(|a| q5.value(a).clone()).collect::<Vec<_>>(), expect);
    }

    #[test]
    fn twisted_divisor_sums() {
        let t = DirichletCharacter::trivial();
        let chi = DirichletCharacter::jacobi3();
        assert_eq!(sigma_twisted(8, 1, &t, &t), ExactScalar::from_int(15));
        assert_eq!(sigma_twisted(7, 0, &chi, &t), ExactScalar::from_int(2));
        assert_eq!(sigma_twisted(10, 0, &chi, &t), ExactScalar::from_int(0));
        assert_eq!(sigma_twisted(6, 1, &t, &t), ExactScalar::from_int(12));
    }

    #[test]
    fn three_cores() {
        assert_eq!(three_core_count(0).unwrap(), 1);
        assert_eq!(three_core_count(3).unwrap(), 0);
        assert_eq!(three_core_count(4).unwrap(), 2);
        assert!(matches!(three_core_count(41), Err(Error::RangeExceeded { .. })));
        assert_eq!(hook_lengths(&[3, 1]), vec![4, 2, 1, 1]);
    }

    #[test]
    fn power_residue_lemma() {
        assert!(power_residue_check(2, 3, 2).unwrap());
        assert!(power_residue_check(4, 3, 1).unwrap());
        assert!(power_residue_check(3, 3, 1).is_err());
        assert!(power_residue_check(2, 9, 1).is_err());
        for p in [3u64, 5, 7] {
            for lambda in 1..=3 {
                for n in 1..100i64 {
                    if n % p as i64 != 0 {
                        assert!(power_residue_check(n, p, lambda).unwrap(), "{n} {p} {lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation3(&BigInt::from(243)), 5);
        assert_eq!(valuation3(&BigInt::from(-18)), 2);
        assert_eq!(valuation3(&BigInt::from(5)), 0);
    }
}
