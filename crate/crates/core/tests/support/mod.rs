#![allow(dead_code)]

//! Property suites shared by the `properties` and `acceptance` targets.
//! Every runner uses a fixed seed.

use cubic_core::arith::DirichletCharacter;
use cubic_core::dissect::ExactMatrix;
use cubic_core::qfactory::{lambert_series, LambertSpec};
use cubic_core::{ExactScalar, GradedSeries, Precision, SupportClass, GRADING};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

pub const SEED: u64 = 0x5eed_c0b1c;

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    })
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    prop_oneof![
        3 => (-9i64..=9).prop_map(ExactScalar::from_int),
        1 => (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ExactScalar::ratio(n, d)),
        1 => (-3i64..=3, -3i64..=3).prop_map(|(re, im)| {
            &ExactScalar::from_int(re) + &(&ExactScalar::i() * &ExactScalar::from_int(im))
        }),
    ]
}

/// Sparse graded series with t-order between 0 and 60.
fn graded() -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec(prop_oneof![2 => Just(ExactScalar::zero()), 1 => scalar()], 1..=61)
        .prop_map(GradedSeries::from_t_coeffs)
}

/// Ordinary q-series through `q^n`, `n <= 30`.
fn q_series() -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec(scalar(), 1..=31).prop_map(|c| {
        let n = c.len() - 1;
        GradedSeries::from_q_coeffs(c, Precision::q(n))
    })
}

fn same_to_common_order(x: &GradedSeries, y: &GradedSeries) -> Result<(), TestCaseError> {
    let o = x.order_t().min(y.order_t());
    prop_assert_eq!(x.truncate(o), y.truncate(o));
    Ok(())
}

pub fn ring_axioms() -> Result<(), String> {
    runner(64)
        .run(&(graded(), graded(), graded()), |(a, b, c)| {
            same_to_common_order(&(&(&a + &b) + &c), &(&a + &(&b + &c)))?;
            same_to_common_order(&(&a + &b), &(&b + &a))?;
            same_to_common_order(&(&a * &b), &(&b * &a))?;
            same_to_common_order(&(&(&a * &b) * &c), &(&a * &(&b * &c)))?;
            same_to_common_order(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)))?;
            let p = a.precision();
            prop_assert_eq!(&a + &GradedSeries::zero(p), a.clone());
            prop_assert_eq!(&a * &GradedSeries::one(p), a.clone());
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(a.add(&(-&b)), &a - &b);
            if !a.coeff_t(0).unwrap().is_zero() {
                prop_assert_eq!(&a * &a.invert().unwrap(), GradedSeries::one(p));
                prop_assert_eq!(a.pow(-2).unwrap(), a.pow(2).unwrap().invert().unwrap());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `f = sum_k q^k Omega_{M,k}(f)(q^M)` through the common order.
pub fn omega_recombination() -> Result<(), String> {
    runner(64)
        .run(&(q_series(), 1usize..=5), |(f, m)| {
            let p = f.precision();
            let mut acc = GradedSeries::zero(p);
            for k in 0..m.min(f.q_order() + 1) {
                let part = f.omega(SupportClass::new(m, k).unwrap()).unwrap();
                let lifted = part
                    .substitute_q_power(&BigRational::from_integer(BigInt::from(m)))
                    .unwrap()
                    .shift_up(k * GRADING);
                acc = &acc + &lifted;
            }
            let o = acc.order_t();
            prop_assert!(o + m * GRADING > p.order_t());
            prop_assert_eq!(acc, f.truncate(o));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `f(q^r)` then `q -> q^(1/r)` recovers `f`.
pub fn substitute_round_trip() -> Result<(), String> {
    let ratio = prop_oneof![
        (1i64..=5).prop_map(|m| (m, 1)),
        (1i64..=4).prop_map(|m| (3 * m, 4))
    ];
    runner(64)
        .run(&(q_series(), ratio), |(f, (n, d))| {
            let r = BigRational::new(n.into(), d.into());
            let there = f.substitute_q_power(&r).unwrap();
            let back = there.substitute_q_power(&r.recip()).unwrap();
            prop_assert!(back.order_t() <= f.order_t());
            prop_assert_eq!(back.clone(), f.truncate(back.order_t()));
            if n % d == 0 {
                prop_assert_eq!(back, f);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn character() -> impl Strategy<Value = DirichletCharacter> {
    prop::sample::select(DirichletCharacter::all().to_vec())
}

/// Lambert expansion against divisor enumeration for `n <= 50`.
pub fn lambert_vs_enumeration() -> Result<(), String> {
    let spec = (0u32..=6, 1u64..=5, character(), prop::option::of(character()))
        .prop_flat_map(|(w, m, chi, psi)| {
            (
                prop::collection::vec((scalar(), 1u64..=m.max(2)), 1..=3),
                Just((w, m, chi, psi)),
            )
        })
        .prop_map(|(terms, (weight, modulus, chi, psi))| LambertSpec {
            weight,
            terms,
            modulus,
            chi,
            psi,
        });
    runner(48)
        .run(&spec, |spec| {
            let s = lambert_series(&spec, Precision::q(50)).unwrap();
            for n in 0..=50u64 {
                prop_assert_eq!(
                    s.coeff_q(n as usize).unwrap(),
                    &spec.coefficient_by_enumeration(n),
                    "n = {}",
                    n
                );
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `p(M) = 0` for the characteristic polynomial, sizes 1 through 5; also the
/// Bareiss and cofactor determinants agree.
pub fn cayley_hamilton() -> Result<(), String> {
    let matrix = (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, n), n)
    });
    runner(64)
        .run(&matrix, |rows| {
            let m = ExactMatrix::from_int_rows(&rows).unwrap();
            let p = m.charpoly().unwrap();
            prop_assert_eq!(p.len(), rows.len() + 1);
            prop_assert!(p.last().unwrap().is_one());
            let z = m.eval_poly(&p).unwrap();
            prop_assert_eq!(z, ExactMatrix::zeros(rows.len(), rows.len()));
            prop_assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub const SUITES: [(&str, fn() -> Result<(), String>); 5] = [
    ("series ring axioms", ring_axioms),
    ("omega recombination", omega_recombination),
    ("substitute round-trip", substitute_round_trip),
    ("Lambert vs enumeration (n <= 50)", lambert_vs_enumeration),
    ("Cayley-Hamilton (sizes <= 5)", cayley_hamilton),
];
