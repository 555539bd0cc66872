//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed; exits nonzero if any criterion fails.

mod support;

use std::process::ExitCode;
use std::time::Instant;

use cubic_core::dissect::{
    det_scan_btri, det_scan_c, integer_eigen, matrix_b, matrix_b_oracle, matrix_btri,
    matrix_btri_oracle, matrix_c, ColumnConvention, ExactMatrix,
};
use cubic_core::forms::cubic_parameterization_check;
use cubic_core::verify::{
    congruence_eq31, congruence_th1, cusp_eigenform_check, recursion_report, Registry,
};
use cubic_core::{ExactScalar, Precision};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run_ids(reg: &Registry, ids: &[&str], order: Option<usize>, min_order: usize) -> Outcome {
    for id in ids {
        let r = reg.run_identity(id, order).map_err(|e| format!("{id}: {e}"))?;
        if let Some(m) = &r.first_mismatch {
            return Err(format!(
                "{id} fails at q^{}: lhs {} rhs {}",
                m.q_exponent, m.lhs, m.rhs
            ));
        }
        check(r.order >= min_order, format!("{id} only reached q^{}", r.order))?;
    }
    Ok(format!("{} identities", ids.len()))
}

fn garvan(reg: &Registry) -> Outcome {
    let r = reg.run_identity("garvan", Some(200)).map_err(|e| e.to_string())?;
    check(r.passed() && r.order == 200, format!("{:?}", r.first_mismatch))?;
    let lhs = cubic_core::verify::expand("dsum(3,2,1,triv)", Precision::q(2)).unwrap();
    check(lhs.coeff_q(2).unwrap() == &ExactScalar::from_int(15), "sigma(8) != 15")?;
    Ok("n <= 200".into())
}

fn parameterizations(reg: &Registry) -> Outcome {
    run_ids(
        reg,
        &["param-E4", "param-E6", "param-E3chi", "param-E2", "sha"],
        Some(120),
        120,
    )?;
    for c in cubic_parameterization_check(Precision::q(120)).map_err(|e| e.to_string())? {
        check(c.passed, format!("{} fails at {:?}", c.name, c.mismatch))?;
    }
    Ok("through q^120".into())
}

fn matrix(rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn matrices() -> Outcome {
    let printed_b = [
        matrix(&[&[1, 6, 12, 8], &[0, 9, 9, 9]]).transpose(),
        matrix(&[
            &[1, 12, 60, 160, 240, 192, 64],
            &[0, 9, 63, 171, 234, 180, 72],
            &[0, 0, 81, 162, 243, 162, 81],
        ])
        .transpose(),
        matrix(&[
            &[1, 18, 144, 672, 2016, 4032, 5376, 4608, 2304, 512],
            &[0, 9, 117, 657, 2088, 4140, 5328, 4464, 2304, 576],
            &[0, 0, 81, 648, 2187, 4212, 5265, 4374, 2268, 648],
            &[0, 0, 0, 729, 2187, 4374, 5103, 4374, 2187, 729],
        ])
        .transpose(),
    ];
    let printed_c = [
        matrix(&[&[1, 0], &[8, 9]]),
        matrix(&[&[1, 0, 0], &[160, 171, 162], &[64, 72, 81]]),
        matrix(&[
            &[1, 0, 0, 0],
            &[672, 657, 648, 729],
            &[5376, 5328, 5265, 5103],
            &[512, 576, 648, 729],
        ]),
    ];
    let printed_btri = [
        matrix(&[&[2, -1], &[1, 1]]),
        matrix(&[&[4, -2, 1], &[4, 1, -2], &[1, 1, 1]]),
        matrix(&[&[8, -4, 2, -1], &[12, 0, -3, 3], &[6, 3, 0, -3], &[1, 1, 1, 1]]),
    ];
    for d in 1..=3 {
        check(matrix_b(d) == printed_b[d - 1], format!("B_{d} differs from print"))?;
        check(matrix_c(d) == printed_c[d - 1], format!("C_{d} differs from print"))?;
        check(matrix_btri(d) == printed_btri[d - 1], format!("Btri_{d} differs from print"))?;
    }
    for d in 1..=4 {
        let prec = Precision::q(6 * d + 6);
        let oracle = matrix_b_oracle(d, prec).map_err(|e| e.to_string())?;
        check(oracle == matrix_b(d), format!("B_{d} oracle disagrees"))?;
        let tri = matrix_btri_oracle(d, prec).map_err(|e| e.to_string())?;
        check(
            tri.resolved() == Some(ColumnConvention::ExponentOfB),
            format!("Btri_{d} convention {:?}", tri.matching),
        )?;
    }
    Ok("printed B, C, Btri for d <= 3; oracles for d <= 4 (Btri columns by exponent of b)".into())
}

fn eigen(reg: &Registry) -> Outcome {
    let a = integer_eigen(&matrix_c(2)).map_err(|e| e.to_string())?;
    let got: Vec<(i64, Vec<i64>)> = a
        .pairs
        .iter()
        .map(|p| {
            (
                i64::try_from(&p.eigenvalue).unwrap(),
                p.eigenvector.iter().map(|x| i64::try_from(x).unwrap()).collect(),
            )
        })
        .collect();
    let want = vec![
        (243, vec![0, 9, 4]),
        (9, vec![0, 1, -1]),
        (1, vec![121, -152, 40]),
    ];
    check(got == want && a.unresolved_degree == 0, format!("eigen pairs {got:?}"))?;
    run_ids(reg, &["lr-eigenform", "eigenform-E5", "eigenform-bc"], Some(80), 80)?;
    for j in 1..=2 {
        let r = cusp_eigenform_check(j, 80).map_err(|e| e.to_string())?;
        check(r.passed(), format!("cusp-0 eigenform j = {j}: {r:?}"))?;
        check(r.eigenvalue == BigInt::from(3u32).pow(3 * j - 1), "eigenvalue")?;
    }
    Ok("C_2 eigenpairs, three eigenform identities, cusp-0 eigenvalues 9 and 243".into())
}

fn determinants() -> Outcome {
    for r in det_scan_btri(8).map_err(|e| e.to_string())? {
        check(r.matches_expected() == Some(true), format!("Btri_{}: {}", r.index, r.verdict()))?;
    }
    let c = det_scan_c(2).map_err(|e| e.to_string())?;
    for r in &c {
        check(r.power_of_three.is_some(), format!("C_{}: {}", r.size - 1, r.verdict()))?;
    }
    check(c[0].power_of_three == Some(16), "det C_3 exponent")?;
    Ok(format!(
        "det Btri_n = 3^(n(n+1)/2) for n <= 8; det C_3 = {}, det C_6 = {}",
        c[0].verdict(),
        c[1].verdict()
    ))
}

fn congruences() -> Outcome {
    let th1 = congruence_th1(&[1, 3, 5, 9], 500).map_err(|e| e.to_string())?;
    check(th1.passed, format!("{th1:?}"))?;
    for (ell_max, n_max) in [(1, 166), (2, 55)] {
        let r = congruence_eq31(ell_max, n_max).map_err(|e| e.to_string())?;
        check(r.passed, format!("{r:?}"))?;
    }
    Ok("th1 for l in {1,3,5,9}, k <= 500; eq31 for 3^l n <= 500".into())
}

fn recursion() -> Outcome {
    let r = recursion_report(4, &[60, 120]).map_err(|e| e.to_string())?;
    check(r.all_stable(), "verdict changed between orders")?;
    check(r.rows.iter().all(|row| row.checks.len() == 2), "missing order")?;
    let holding: Vec<String> = r
        .rows
        .iter()
        .filter(|row| row.holds())
        .map(|row| format!("n={} d{} {:?}/{:?}", row.n, row.display, row.variant, row.reading))
        .collect();
    Ok(format!("stable at q^60 and q^120; holding: {}", holding.len()))
}

fn properties() -> Outcome {
    for (name, suite) in support::SUITES {
        suite().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} suites, seed {:#x}", support::SUITES.len(), support::SEED))
}

fn main() -> ExitCode {
    let reg = Registry::bundled();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("Garvan identity", Box::new(|| garvan(&reg))),
        (
            "Borwein system",
            Box::new(|| {
                run_ids(
                    &reg,
                    &["borwein-cube", "triplication-a", "triplication-b"],
                    Some(120),
                    120,
                )
            }),
        ),
        ("Cubic parameterizations", Box::new(|| parameterizations(&reg))),
        (
            "Dissection displays",
            Box::new(|| {
                run_ids(
                    &reg,
                    &[
                        "intro-d3",
                        "intro-d7",
                        "3core",
                        "intro-d4chi",
                        "W7",
                        "W10",
                        "W11",
                        "W13",
                        "W14",
                        "W16",
                        "companion-theta",
                        "gn1",
                        "gn2-a",
                        "gn2-zero",
                    ],
                    None,
                    80,
                )
            }),
        ),
        (
            "Quintic identities",
            Box::new(|| run_ids(&reg, &["fjl-1", "fjl-2", "fjl-3", "fjl-4"], Some(200), 200)),
        ),
        ("Matrices", Box::new(matrices)),
        ("Eigen-analysis", Box::new(|| eigen(&reg))),
        ("Determinant conjectures", Box::new(determinants)),
        ("Congruence suites", Box::new(congruences)),
        ("Recursion report", Box::new(recursion)),
        ("Property suites", Box::new(properties)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
