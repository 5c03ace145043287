//! Browser bindings: Grassmannian expansion, skew expansion and GP/GQ
//! polynomials, each returning a JSON string.

use serde_json::json;
use wasm_bindgen::prelude::*;

use ktrans::expand::{expand_grassmannian, skew_expansion, Basis};
use ktrans::partition::ShiftedSkewShape;
use ktrans::tableaux::{gp, gq};
use ktrans::weyl::{GroupType, SignedPermutation};

// keeps the browser responsive on large inputs
const MAX_DEGREE: u32 = 10;
const MAX_VARS: u32 = 4;

fn expansion_json(r: &ktrans::expand::ExpansionResult) -> serde_json::Value {
    let mut v = serde_json::to_value(r.to_json()).expect("serializable");
    v["text"] = json!(r.to_string());
    v
}

pub fn expand_json(ty: &str, w: &str) -> Result<String, String> {
    let ty: GroupType = ty.parse().map_err(|e: ktrans::error::Error| e.to_string())?;
    if !ty.is_classical() {
        return Err(format!("type {ty} has no Grassmannian expansion here; use B, C or D"));
    }
    let w: SignedPermutation = w.parse().map_err(|e: ktrans::error::Error| e.to_string())?;
    let r = expand_grassmannian(ty, &w).map_err(|e| e.to_string())?;
    Ok(expansion_json(&r).to_string())
}

pub fn skew_json(basis: &str, shape: &str) -> Result<String, String> {
    let basis: Basis = basis.parse().map_err(|e: ktrans::error::Error| e.to_string())?;
    let shape: ShiftedSkewShape = shape.parse().map_err(|e: ktrans::error::Error| e.to_string())?;
    let r = skew_expansion(basis, &shape).map_err(|e| e.to_string())?;
    let mut v = expansion_json(&r);
    v["shape"] = json!(shape.to_string());
    Ok(v.to_string())
}

pub fn poly_json(basis: &str, shape: &str, n: u32, d: u32) -> Result<String, String> {
    let basis: Basis = basis.parse().map_err(|e: ktrans::error::Error| e.to_string())?;
    let shape: ShiftedSkewShape = shape.parse().map_err(|e: ktrans::error::Error| e.to_string())?;
    shape.check().map_err(|e| e.to_string())?;
    if n == 0 || n > MAX_VARS || d > MAX_DEGREE {
        return Err(format!("need 1 <= N <= {MAX_VARS} and D <= {MAX_DEGREE}"));
    }
    let p = match basis {
        Basis::GP => gp(&shape, n, d),
        Basis::GQ => gq(&shape, n, d),
    };
    Ok(json!({"basis": basis, "shape": shape.to_string(), "N": n, "D": d, "poly": p.to_string()}).to_string())
}

#[wasm_bindgen]
pub fn expand(ty: &str, w: &str) -> Result<String, JsError> {
    expand_json(ty, w).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn skew(basis: &str, shape: &str) -> Result<String, JsError> {
    skew_json(basis, shape).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn polynomial(basis: &str, shape: &str, n: u32, d: u32) -> Result<String, JsError> {
    poly_json(basis, shape, n, d).map_err(|e| JsError::new(&e))
}
