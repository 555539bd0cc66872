//! `cubic`: expand series, verify identities, build trisection matrices and
//! run the congruence and determinant scans.
//!
//! Exit status: 0 on success, 1 when a verification or scan fails, 2 on a
//! usage or input error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cubic_core::dissect::{
    det_scan_btri, det_scan_c, integer_eigen, matrix_b, matrix_btri, matrix_c, DetScanRecord,
    ExactMatrix,
};
use cubic_core::series::q_exponent_label;
use cubic_core::verify::{
    congruence_eq31, congruence_th1, recursion_report, report::text_table, Registry,
};
use cubic_core::{Error, Precision, GRADING};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cubic", version, about = "Exact q-series for cubic theta functions and their trisections")]
struct Cli {
    /// Truncation order in powers of q.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=5000))]
    order: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Identity manifest; defaults to the bundled one.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "Btri", alias = "btri")]
    Btri,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanKind {
    #[value(name = "Btri", alias = "btri")]
    Btri,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a label (a, c, E6, G4_one3, ...), an eta quotient or any
    /// registry expression.
    Expand { expr: String },
    /// Verify one identity by id, or `all`.
    Verify { target: String },
    /// Print a dissection matrix of degree d.
    Matrix {
        #[arg(value_enum)]
        kind: MatrixKind,
        d: usize,
    },
    /// Integer eigenpairs of a square dissection matrix.
    Eigen {
        #[arg(value_enum)]
        kind: MatrixKind,
        d: usize,
    },
    /// Determinant scan; C scans the matrices of degree 3n.
    Detscan {
        #[arg(value_enum)]
        kind: ScanKind,
        max: usize,
    },
    /// Congruence suites for dissected divisor sums and eigenform coefficients.
    Congruence {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Verdicts on the two-display G-series recursion.
    RecursionReport {
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        #[arg(long, value_delimiter = ',', default_value = "60,120")]
        orders: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Four divisor-sum families modulo 3^(s+1) against 3-core counts.
    Th1 {
        #[arg(long, value_delimiter = ',', default_value = "1,3,5,9")]
        ells: Vec<u64>,
        #[arg(long, default_value_t = 500)]
        k_max: u64,
    },
    /// 3-adic divisibility of the weight-6 eigenform coefficients.
    Eq31 {
        #[arg(long, default_value_t = 2)]
        ell_max: u32,
        #[arg(long, default_value_t = 55)]
        n_max: u64,
    },
}

const MATRIX_D_MAX: usize = 40;

/// Rendered output and whether every check in it passed.
struct Output {
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match &cli.out {
        Some(path) => std::fs::write(path, &out.text),
        None => {
            print!("{}", out.text);
            Ok(())
        }
    };
    if let Err(e) = result {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let json = cli.format == Format::Json;
    let ok = |text: String| Output { text, ok: true };
    match &cli.command {
        Command::Expand { expr } => {
            let n = cli.order.unwrap_or(120) as usize;
            expand(expr, n, json).map(ok)
        }
        Command::Verify { target } => {
            let reg = match &cli.registry {
                Some(p) => Registry::load(p)?,
                None => Registry::bundled(),
            };
            let order = cli.order.map(|o| o as usize);
            let reports = if target == "all" {
                reg.run_all(order)?
            } else {
                vec![reg.run_identity(target, order)?]
            };
            let all_pass = reports.iter().all(|r| r.passed());
            let text = if json {
                if target == "all" {
                    json_text(&to_json(&reports))
                } else {
                    json_text(&to_json(&reports[0]))
                }
            } else {
                text_table(&reports)
            };
            Ok(Output { text, ok: all_pass })
        }
        Command::Matrix { kind, d } => {
            let m = build_matrix(*kind, *d)?;
            Ok(ok(if json {
                json_text(&json!({ "kind": kind_name(*kind), "d": d, "matrix": to_json(&m) }))
            } else {
                m.to_string()
            }))
        }
        Command::Eigen { kind, d } => {
            let m = build_matrix(*kind, *d)?;
            let e = integer_eigen(&m)?;
            Ok(ok(if json {
                json_text(&json!({ "kind": kind_name(*kind), "d": d, "analysis": to_json(&e) }))
            } else {
                let mut s = String::new();
                let cp: Vec<String> = e.charpoly.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "charpoly (lowest degree first): {}", cp.join(", "));
                for p in &e.pairs {
                    let v: Vec<String> = p.eigenvector.iter().map(ToString::to_string).collect();
                    let _ = writeln!(s, "({}, ({}))", p.eigenvalue, v.join(", "));
                }
                if e.unresolved_degree > 0 {
                    let _ = writeln!(s, "non-integer part of degree {}", e.unresolved_degree);
                }
                s
            }))
        }
        Command::Detscan { kind, max } => {
            let records = match kind {
                ScanKind::Btri => det_scan_btri(*max)?,
                ScanKind::C => det_scan_c(*max)?,
            };
            let all = records.iter().all(|r| {
                r.power_of_three.is_some() && r.matches_expected().unwrap_or(true)
            });
            let text = if json {
                json_text(&to_json(&records))
            } else {
                records.iter().map(scan_line).collect()
            };
            Ok(Output { text, ok: all })
        }
        Command::Congruence { suite } => match suite {
            Suite::Th1 { ells, k_max } => {
                let r = congruence_th1(ells, *k_max)?;
                let text = if json {
                    json_text(&to_json(&r))
                } else {
                    let mut s = format!(
                        "3-cores: hook oracle agrees through k = {}: {}; divisor form agrees: {}\n",
                        r.three_cores.hook_checked, r.three_cores.hook_agrees, r.three_cores.divisor_agrees
                    );
                    for e in &r.entries {
                        for f in &e.families {
                            let _ = writeln!(
                                s,
                                "l = {:<3} mod {:<5} {:<36} {}",
                                e.ell,
                                e.modulus,
                                f.claim.family,
                                family_verdict(f.failure_count, &f.failures)
                            );
                        }
                    }
                    s
                };
                Ok(Output { text, ok: r.passed })
            }
            Suite::Eq31 { ell_max, n_max } => {
                let r = congruence_eq31(*ell_max, *n_max)?;
                let text = if json {
                    json_text(&to_json(&r))
                } else {
                    let mut s = format!(
                        "series to q^{}; u from Eisenstein series agrees with divisor sums: {}\n",
                        r.series_order, r.u_paths_agree
                    );
                    for row in &r.rows {
                        for f in [&row.u, &row.v] {
                            let _ = writeln!(
                                s,
                                "l = {} {:<26} n <= {:<4} {}",
                                row.ell,
                                f.claim.family,
                                r.n_max,
                                family_verdict(f.failure_count, &f.failures)
                            );
                        }
                    }
                    s
                };
                Ok(Output { text, ok: r.passed })
            }
        },
        Command::RecursionReport { n_max, orders } => {
            let r = recursion_report(*n_max, orders)?;
            Ok(ok(if json { json_text(&to_json(&r)) } else { r.to_text() }))
        }
    }
}

fn kind_name(k: MatrixKind) -> &'static str {
    match k {
        MatrixKind::B => "B",
        MatrixKind::Btri => "Btri",
        MatrixKind::C => "C",
    }
}

fn build_matrix(kind: MatrixKind, d: usize) -> Result<ExactMatrix, Error> {
    if d == 0 || d > MATRIX_D_MAX {
        return Err(Error::RangeExceeded {
            what: "d",
            value: d as u64,
            bound: MATRIX_D_MAX as u64,
        });
    }
    Ok(match kind {
        MatrixKind::B => matrix_b(d),
        MatrixKind::Btri => matrix_btri(d),
        MatrixKind::C => matrix_c(d),
    })
}

fn scan_line(r: &DetScanRecord) -> String {
    let expected = match (r.expected, r.matches_expected()) {
        (Some(w), Some(true)) => format!("  expected 3^{w}: holds"),
        (Some(w), _) => format!("  expected 3^{w}: FAILS"),
        (None, _) => String::new(),
    };
    format!("n = {:<2} size {:<3} {}{}\n", r.index, r.size, r.verdict(), expected)
}

fn family_verdict(count: usize, first: &[u64]) -> String {
    if count == 0 {
        "holds".into()
    } else {
        let idx: Vec<String> = first.iter().map(ToString::to_string).collect();
        format!("FAILS at {count} indices, first {}", idx.join(", "))
    }
}

fn expand(src: &str, n: usize, json: bool) -> Result<String, Error> {
    let s = cubic_core::verify::expand(src, Precision::q(n))?;
    let offset = s.residue_offset().unwrap_or(0);
    let single_class = s.terms().all(|(e, _)| e % GRADING == offset);
    if json {
        let mut v = json!({ "expression": src, "order": n, "series": s.to_string() });
        if single_class {
            let coeffs: Vec<Value> = (offset..=s.order_t())
                .step_by(GRADING)
                .map(|e| to_json(s.coeff_t(e).expect("within order")))
                .collect();
            v["offset"] = json!(q_exponent_label(offset));
            v["coefficients"] = Value::Array(coeffs);
        } else {
            let coeffs: Vec<Value> = s.t_coeffs().iter().map(to_json).collect();
            v["grading"] = json!(GRADING);
            v["t_coefficients"] = Value::Array(coeffs);
        }
        return Ok(json_text(&v));
    }
    let mut out = format!("{src} = {s}\n");
    if single_class {
        let coeffs: Vec<String> = (offset..=s.order_t())
            .step_by(GRADING)
            .map(|e| s.coeff_t(e).expect("within order").to_string())
            .collect();
        let exponent = if offset == 0 {
            "n".to_string()
        } else {
            format!("({} + n)", q_exponent_label(offset))
        };
        let _ = writeln!(out, "coefficients of q^{exponent}, n >= 0: {}", coeffs.join(", "));
    }
    Ok(out)
}
