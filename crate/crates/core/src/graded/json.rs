use super::linalg::{self, Mat};
use super::{GradedAlgebra, GradedError};
use crate::scalars::{rational_from_json, rational_to_json};
use num_traits::Zero;
use serde_json::{json, Value};

fn err(s: impl Into<String>) -> GradedError {
    GradedError::Json(s.into())
}

fn index(v: &Value, d: usize) -> Result<usize, GradedError> {
    let i = v.as_u64().ok_or_else(|| err(format!("bad index {v}")))? as usize;
    if i >= d {
        return Err(GradedError::IndexOutOfRange(i));
    }
    Ok(i)
}

pub fn algebra_to_json(a: &GradedAlgebra) -> Value {
    let basis: Vec<Value> =
        (0..a.dim()).map(|i| json!({"name": a.names()[i], "parity": a.parity(i)})).collect();
    let mut mult = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for (k, c) in a.structure(i, j) {
                if !c.is_zero() {
                    mult.push(json!([i, j, k, rational_to_json(c)]));
                }
            }
        }
    }
    json!({"basis": basis, "mult": mult, "g": operator_to_json(a.gram())})
}

pub fn algebra_from_json(v: &Value) -> Result<GradedAlgebra, GradedError> {
    let basis = v["basis"].as_array().ok_or_else(|| err("missing basis"))?;
    let mut names = Vec::new();
    let mut parity = Vec::new();
    for b in basis {
        names.push(b["name"].as_str().ok_or_else(|| err("basis name"))?.to_string());
        match b["parity"].as_u64() {
            Some(p @ (0 | 1)) => parity.push(p as u8),
            _ => return Err(err("parity must be 0 or 1")),
        }
    }
    let d = names.len();
    let mut mult = vec![vec![Vec::new(); d]; d];
    for e in v["mult"].as_array().ok_or_else(|| err("missing mult"))? {
        let e = e.as_array().filter(|e| e.len() == 4).ok_or_else(|| err("mult entries are [i,j,k,coef]"))?;
        let (i, j, k) = (index(&e[0], d)?, index(&e[1], d)?, index(&e[2], d)?);
        let c = rational_from_json(&e[3]).map_err(|x| err(x.to_string()))?;
        mult[i][j].push((k, c));
    }
    let g = operator_from_json(&v["g"], d)?;
    GradedAlgebra::new(names, parity, mult, g)
}

/// Sparse `[[i, j, coef]]`.
pub fn operator_to_json(m: &Mat) -> Value {
    let mut out = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                out.push(json!([i, j, rational_to_json(c)]));
            }
        }
    }
    Value::Array(out)
}

pub fn operator_from_json(v: &Value, d: usize) -> Result<Mat, GradedError> {
    let mut m = linalg::zeros(d, d);
    for e in v.as_array().ok_or_else(|| err("matrix must be a list"))? {
        let e = e.as_array().filter(|e| e.len() == 3).ok_or_else(|| err("matrix entries are [i,j,coef]"))?;
        let (i, j) = (index(&e[0], d)?, index(&e[1], d)?);
        m[i][j] += rational_from_json(&e[2]).map_err(|x| err(x.to_string()))?;
    }
    Ok(m)
}
