//! Congruence suites for dissected divisor sums and trisection eigenforms.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{
    integral, serialize_display, sigma_twisted, three_core_count, valuation3, CongruenceClaim,
    DirichletCharacter, THREE_CORE_BOUND,
};
use crate::dissect::{cube_basis, matrix_c};
use crate::error::{Error, Result};
use crate::forms::{eisenstein_full, fit_polynomial};
use crate::qfactory::{eta_quotient, EtaQuotientSpec};
use crate::scalar::ExactScalar;
use crate::series::{GradedSeries, Precision, SupportClass};

/// Largest `k_max` accepted by [`congruence_th1`].
pub const TH1_K_MAX: u64 = 2000;
/// Largest series order used by [`congruence_eq31`].
pub const EQ31_ORDER_MAX: u64 = 3000;
const SHOWN_FAILURES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyResult {
    pub claim: CongruenceClaim,
    pub failure_count: usize,
    /// At most the first ten failing indices.
    pub failures: Vec<u64>,
}

impl FamilyResult {
    fn new(claim: CongruenceClaim, residual: impl FnMut(u64) -> BigInt) -> Self {
        let all = claim.failures(residual);
        FamilyResult {
            claim,
            failure_count: all.len(),
            failures: all.into_iter().take(SHOWN_FAILURES).collect(),
        }
    }

    pub fn holds(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Th1Entry {
    pub ell: u64,
    /// `3^s` exactly divides `ell`.
    pub s: u32,
    #[serde(serialize_with = "serialize_display")]
    pub modulus: BigInt,
    pub families: Vec<FamilyResult>,
}

/// Agreement of the three routes to `c_3(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeCoreAgreement {
    /// Indices compared against hook enumeration.
    pub hook_checked: u64,
    pub hook_agrees: bool,
    /// Series coefficients against `sum_{d | 3k+1} (d/3)`.
    pub divisor_agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Th1Report {
    pub k_max: u64,
    pub three_cores: ThreeCoreAgreement,
    pub entries: Vec<Th1Entry>,
    pub passed: bool,
}

/// Checks, for each odd `ell` with `3^s || ell` and `0 <= k <= k_max`,
///
/// ```text
/// sum_{d | 3k+2} (d/3) d^(2 ell) = 0        sum_{d | 3k+1} (d/3) d^(2 ell) = c3(k)
/// sum_{d | 3k+2} d^ell          = 0        sum_{d | 3k+1} d^ell          = c3(k)
/// ```
///
/// modulo `3^(s+1)`, where `c3(k)` counts 3-core partitions of `k`.
pub fn congruence_th1(ells: &[u64], k_max: u64) -> Result<Th1Report> {
    if k_max > TH1_K_MAX {
        return Err(Error::RangeExceeded {
            what: "k_max",
            value: k_max,
            bound: TH1_K_MAX,
        });
    }
    if let Some(&bad) = ells.iter().find(|&&l| l % 2 == 0) {
        return Err(Error::InvalidEll(bad));
    }
    let prec = Precision::q(k_max as usize);
    let spec = EtaQuotientSpec::from_signed(&[(3, 3, 3), (1, 1, -1)], ExactScalar::one(), 0)?;
    let series = eta_quotient(&spec, prec);
    let c3: Vec<BigInt> = (0..=k_max)
        .map(|k| integral(series.coeff_q(k as usize).expect("within order")))
        .collect();

    let hook_checked = k_max.min(THREE_CORE_BOUND);
    let mut hook_agrees = true;
    for k in 0..=hook_checked {
        hook_agrees &= BigInt::from(three_core_count(k)?) == c3[k as usize];
    }
    let (triv, chi3) = (DirichletCharacter::trivial(), DirichletCharacter::jacobi3());
    let divisor_agrees =
        (0..=k_max).all(|k| integral(&sigma_twisted(3 * k + 1, 0, &chi3, &triv)) == c3[k as usize]);

    let mut entries = Vec::new();
    for &ell in ells {
        let s = valuation3(&BigInt::from(ell));
        let modulus = BigInt::from(3u32).pow(s + 1);
        let w = ell as u32;
        let families = [
            ("sum_{d|3k+2} (d/3) d^(2l) = 0", 2, 2 * w, &chi3, false),
            ("sum_{d|3k+1} (d/3) d^(2l) = c3(k)", 1, 2 * w, &chi3, true),
            ("sum_{d|3k+2} d^l = 0", 2, w, &triv, false),
            ("sum_{d|3k+1} d^l = c3(k)", 1, w, &triv, true),
        ]
        .into_iter()
        .map(|(family, r, weight, chi, with_c3)| {
            let claim = CongruenceClaim {
                family: family.to_string(),
                modulus: modulus.clone(),
                range: (0, k_max),
            };
            FamilyResult::new(claim, |k| {
                let sum = integral(&sigma_twisted(3 * k + r, weight, chi, &triv));
                if with_c3 {
                    sum - &c3[k as usize]
                } else {
                    sum
                }
            })
        })
        .collect();
        entries.push(Th1Entry {
            ell,
            s,
            modulus,
            families,
        });
    }
    let passed = hook_agrees
        && divisor_agrees
        && entries
            .iter()
            .all(|e| e.families.iter().all(FamilyResult::holds));
    Ok(Th1Report {
        k_max,
        three_cores: ThreeCoreAgreement {
            hook_checked,
            hook_agrees,
            divisor_agrees,
        },
        entries,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eq31Row {
    pub ell: u32,
    pub u: FamilyResult,
    pub v: FamilyResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eq31Report {
    pub ell_max: u32,
    pub n_max: u64,
    /// q-order of both expansions.
    pub series_order: u64,
    /// `u_n` from the Eisenstein series against `243 (sigma_5(n) - sigma_5(n/3))`.
    pub u_paths_agree: bool,
    pub rows: Vec<Eq31Row>,
    pub passed: bool,
}

/// With `sum u_n q^n = 3^5/504 (E6(q^3) - E6(q))` and
/// `sum v_n q^n = 27 q (q^3;q^3)^6 (q;q)^6`, checks
/// `u_{3^l n} = 0 mod 3^(5l)` and `v_{3^l n} = 0 mod 3^(2l)` for
/// `1 <= l <= ell_max`, `0 <= n <= n_max`.
pub fn congruence_eq31(ell_max: u32, n_max: u64) -> Result<Eq31Report> {
    let order = 3u64
        .checked_pow(ell_max)
        .and_then(|p| p.checked_mul(n_max))
        .filter(|&o| o <= EQ31_ORDER_MAX)
        .ok_or_else(|| Error::RangeExceeded {
            what: "3^ell_max * n_max",
            value: 3u64.saturating_pow(ell_max).saturating_mul(n_max),
            bound: EQ31_ORDER_MAX,
        })?;
    let prec = Precision::q(order as usize);
    let e6 = eisenstein_full(6, prec)?;
    let e6_3 = e6
        .substitute_q_power(&num_rational::BigRational::from_integer(3.into()))?
        .truncate(prec.order_t());
    let u_series = e6_3.sub(&e6).scale(&ExactScalar::ratio(243, 504));
    let v_spec =
        EtaQuotientSpec::from_signed(&[(3, 3, 6), (1, 1, 6)], ExactScalar::from_int(27), 12)?;
    let v_series = eta_quotient(&v_spec, prec);
    let coeffs = |s: &GradedSeries| -> Vec<BigInt> {
        (0..=order as usize)
            .map(|n| integral(s.coeff_q(n).expect("within order")))
            .collect()
    };
    let (u, v) = (coeffs(&u_series), coeffs(&v_series));

    let triv = DirichletCharacter::trivial();
    let sigma5 = |n: u64| integral(&sigma_twisted(n, 5, &triv, &triv));
    let u_paths_agree = (1..=order).all(|n| {
        let third = if n % 3 == 0 { sigma5(n / 3) } else { BigInt::zero() };
        u[n as usize] == BigInt::from(243) * (sigma5(n) - third)
    }) && u[0].is_zero();

    let rows: Vec<Eq31Row> = (1..=ell_max)
        .map(|ell| {
            let step = 3u64.pow(ell);
            let claim = |family: &str, e: u32| CongruenceClaim {
                family: family.to_string(),
                modulus: BigInt::from(3u32).pow(e),
                range: (0, n_max),
            };
            Eq31Row {
                ell,
                u: FamilyResult::new(claim("u_{3^l n} = 0 mod 3^(5l)", 5 * ell), |n| {
                    u[(step * n) as usize].clone()
                }),
                v: FamilyResult::new(claim("v_{3^l n} = 0 mod 3^(2l)", 2 * ell), |n| {
                    v[(step * n) as usize].clone()
                }),
            }
        })
        .collect();
    let passed = u_paths_agree && rows.iter().all(|r| r.u.holds() && r.v.holds());
    Ok(Eq31Report {
        ell_max,
        n_max,
        series_order: order,
        u_paths_agree,
        rows,
        passed,
    })
}

/// Trisection eigenvalue check for the Eisenstein series at the cusp 0 of
/// weight `3j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspEigenReport {
    pub j: u32,
    pub weight: u32,
    pub character: String,
    #[serde(serialize_with = "serialize_display")]
    pub eigenvalue: BigInt,
    /// Coordinates in `(a^3)^(j-k) (c^3)^k`, `k = 0..=j`.
    pub coordinates: Vec<ExactScalar>,
    /// `Omega_{3,0} f = 3^(3j-1) f` on the series.
    pub series_check: bool,
    /// `C_j` times the coordinates equals `3^(3j-1)` times them.
    pub matrix_check: bool,
}

impl CuspEigenReport {
    pub fn passed(&self) -> bool {
        self.series_check && self.matrix_check
    }
}

/// `f = sum_n (sum_{d | n} chi(n/d) d^(3j-1)) q^n` with `chi` the principal
/// character mod 3 for even `j` and `(./3)` for odd `j`.
pub fn cusp_eigenform_check(j: u32, order: usize) -> Result<CuspEigenReport> {
    if j == 0 {
        return Err(Error::InvalidInput("weight index j starts at 1".into()));
    }
    let chi = if j % 2 == 0 {
        DirichletCharacter::principal3()
    } else {
        DirichletCharacter::jacobi3()
    };
    let triv = DirichletCharacter::trivial();
    let w = 3 * j - 1;
    let build = |n_q: usize| {
        let coeffs = (0..=n_q as u64).map(|n| {
            if n == 0 {
                ExactScalar::zero()
            } else {
                sigma_twisted(n, w, &triv, &chi)
            }
        });
        GradedSeries::from_q_coeffs(coeffs, Precision::q(n_q))
    };
    let f = build(order);
    let lambda = ExactScalar::from_bigint(BigInt::from(3u32).pow(w));
    let trisected = build(3 * order).omega(SupportClass::new(3, 0)?)?;
    let series_check = trisected == f.scale(&lambda);

    let basis = cube_basis(j as usize, Precision::q(order))?;
    let alpha = fit_polynomial(&f, &basis)?.0;
    let image = matrix_c(j as usize).apply(&alpha)?;
    let matrix_check = image
        .iter()
        .zip(&alpha)
        .all(|(x, a)| *x == &lambda * a);
    Ok(CuspEigenReport {
        j,
        weight: 3 * j,
        character: chi.name().to_string(),
        eigenvalue: BigInt::from(3u32).pow(w),
        coordinates: alpha,
        series_check,
        matrix_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn th1_small() {
        let r = congruence_th1(&[1, 3], 60).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.entries[1].s, 1);
        assert_eq!(r.entries[1].modulus, BigInt::from(9));
        assert_eq!(r.three_cores.hook_checked, 40);
        assert!(matches!(congruence_th1(&[2], 10), Err(Error::InvalidEll(2))));
        assert!(congruence_th1(&[1], 2001).is_err());
    }

    #[test]
    fn th1_fails_for_a_stronger_modulus() {
        let claim = CongruenceClaim {
            family: "d^1 mod 9".into(),
            modulus: BigInt::from(9),
            range: (0, 30),
        };
        let (triv, chi) = (DirichletCharacter::trivial(), DirichletCharacter::trivial());
        let r = FamilyResult::new(claim, |k| integral(&sigma_twisted(3 * k + 2, 1, &chi, &triv)));
        assert!(!r.holds());
        assert_eq!(r.failures[0], 0);
    }

    #[test]
    fn eq31_small() {
        let r = congruence_eq31(2, 10).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.series_order, 90);
        assert!(congruence_eq31(8, 10).is_err());
    }

    #[test]
    fn cusp_eigenforms() {
        for j in 1..=3 {
            let r = cusp_eigenform_check(j, 40).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let r = cusp_eigenform_check(1, 20).unwrap();
        assert_eq!(r.coordinates, vec![ExactScalar::zero(), ExactScalar::ratio(1, 27)]);
    }
}
