//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes plain arguments and returns a JSON string, either the
//! result or `{"error": "..."}`.

use cubic_core::dissect::{integer_eigen, matrix_b, matrix_btri, matrix_c};
use cubic_core::verify::{expand, Registry};
use cubic_core::{Precision, GRADING};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Upper bounds keeping the page responsive.
pub const ORDER_MAX: u32 = 400;
pub const DEGREE_MAX: u32 = 12;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn check_order(order: u32) -> Result<usize, String> {
    if order == 0 || order > ORDER_MAX {
        return Err(format!("order must be between 1 and {ORDER_MAX}"));
    }
    Ok(order as usize)
}

/// Expands a label, eta quotient or expression through `q^order`.
#[wasm_bindgen]
pub fn expand_series(expr: &str, order: u32) -> String {
    respond((|| {
        let s = expand(expr, Precision::q(check_order(order)?)).map_err(|e| e.to_string())?;
        let offset = s.residue_offset().unwrap_or(0);
        let coefficients: Vec<String> = if s.terms().all(|(e, _)| e % GRADING == offset) {
            (offset..=s.order_t())
                .step_by(GRADING)
                .map(|e| s.coeff_t(e).map(ToString::to_string).unwrap_or_default())
                .collect()
        } else {
            Vec::new()
        };
        Ok(json!({
            "series": s.to_string(),
            "offset_twelfths": offset,
            "coefficients": coefficients,
        }))
    })())
}

/// Ids of the bundled identities.
#[wasm_bindgen]
pub fn identity_ids() -> String {
    let reg = Registry::bundled();
    json!(reg.ids().collect::<Vec<_>>()).to_string()
}

/// Checks one bundled identity; `order = 0` uses its default order.
#[wasm_bindgen]
pub fn verify_identity(id: &str, order: u32) -> String {
    respond((|| {
        let order = if order == 0 { None } else { Some(check_order(order)?) };
        let reg = Registry::bundled();
        let rec = reg.get(id).map_err(|e| e.to_string())?;
        let rep = reg.run_identity(id, order).map_err(|e| e.to_string())?;
        let mut v = serde_json::to_value(&rep).map_err(|e| e.to_string())?;
        v["lhs"] = json!(rec.lhs_text);
        v["rhs"] = json!(rec.rhs_text);
        Ok(v)
    })())
}

/// A dissection matrix (`B`, `Btri` or `C`) with integer eigenpairs when
/// square.
#[wasm_bindgen]
pub fn dissection_matrix(kind: &str, d: u32) -> String {
    respond((|| {
        if d == 0 || d > DEGREE_MAX {
            return Err(format!("d must be between 1 and {DEGREE_MAX}"));
        }
        let d = d as usize;
        let m = match kind {
            "B" => matrix_b(d),
            "Btri" => matrix_btri(d),
            "C" => matrix_c(d),
            other => return Err(format!("unknown matrix kind `{other}`")),
        };
        let eigen = if m.is_square() {
            let e = integer_eigen(&m).map_err(|e| e.to_string())?;
            serde_json::to_value(&e).map_err(|e| e.to_string())?
        } else {
            Value::Null
        };
        let det = if m.is_square() {
            Value::String(m.det().map_err(|e| e.to_string())?.to_string())
        } else {
            Value::Null
        };
        Ok(json!({ "matrix": serde_json::to_value(&m).map_err(|e| e.to_string())?, "det": det, "eigen": eigen }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn expand_reports_coefficients() {
        let v = parse(&expand_series("a", 5));
        assert_eq!(v["coefficients"], json!(["1", "6", "0", "6", "6", "0"]));
        let v = parse(&expand_series("c", 3));
        assert_eq!(v["offset_twelfths"], 4);
        assert!(parse(&expand_series("a", 0))["error"].is_string());
        assert!(parse(&expand_series("nosuch", 5))["error"].is_string());
    }

    #[test]
    fn verify_and_ids() {
        let ids = parse(&identity_ids());
        assert!(ids.as_array().unwrap().iter().any(|x| x == "garvan"));
        let v = parse(&verify_identity("garvan", 40));
        assert_eq!(v["status"], "pass");
        assert_eq!(v["order"], 40);
        assert!(parse(&verify_identity("nope", 0))["error"].is_string());
    }

    #[test]
    fn matrices() {
        let v = parse(&dissection_matrix("C", 2));
        assert_eq!(v["matrix"]["entries"][1], json!(["160", "171", "162"]));
        assert_eq!(v["eigen"]["pairs"][0]["eigenvalue"], "243");
        assert_eq!(v["det"], "2187");
        assert!(parse(&dissection_matrix("B", 1))["eigen"].is_null());
        assert!(parse(&dissection_matrix("X", 1))["error"].is_string());
    }
}
