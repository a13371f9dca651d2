//! JSON encodings of scalars, matrices and rational matrices.
//!
//! Exact scalars are strings (`"13/10"`) or pairs of strings for complex
//! values; float scalars are numbers or `[re, im]` pairs. A rational
//! function is `{"num": [...], "den": [...]}` with ascending coefficients.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Result, YrkError};
use crate::matrix::{Mat, RatMat};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::scalar::Scalar;

pub fn mat_to_json<F: Scalar>(m: &Mat<F>) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|x| x.to_json()).collect())).collect())
}

pub fn mat_from_json<F: Scalar>(v: &Value) -> Result<Mat<F>> {
    let rows = v.as_array().ok_or_else(|| YrkError::Schema("matrix must be an array of rows".into()))?;
    let parsed: Vec<Vec<F>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| YrkError::Schema("matrix row must be an array".into()))?
                .iter()
                .map(F::from_json)
                .collect::<Result<Vec<F>>>()
        })
        .collect::<Result<_>>()?;
    let cols = parsed.first().map_or(0, |r| r.len());
    if parsed.iter().any(|r| r.len() != cols) {
        return Err(YrkError::Schema("ragged matrix".into()));
    }
    Ok(Mat::from_rows(parsed))
}

pub fn mats_from_json<F: Scalar>(v: &Value, field: &str) -> Result<Vec<Mat<F>>> {
    v.get(field)
        .and_then(|x| x.as_array())
        .ok_or_else(|| YrkError::Schema(format!("missing array field `{field}`")))?
        .iter()
        .map(mat_from_json)
        .collect()
}

pub fn ratfun_to_json<F: Scalar>(f: &RatFun<F>) -> Value {
    json!({
        "num": f.num().coeffs().iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        "den": f.den().coeffs().iter().map(|c| c.to_json()).collect::<Vec<_>>(),
    })
}

pub fn ratfun_from_json<F: Scalar>(v: &Value) -> Result<RatFun<F>> {
    let coeffs = |k: &str| -> Result<Poly<F>> {
        let a = v.get(k).and_then(|x| x.as_array()).ok_or_else(|| YrkError::Schema(format!("rational function needs `{k}`")))?;
        Ok(Poly::new(a.iter().map(F::from_json).collect::<Result<_>>()?))
    };
    RatFun::new(coeffs("num")?, coeffs("den")?)
}

pub fn ratmat_to_json<F: Scalar>(m: &RatMat<F>) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(ratfun_to_json).collect())).collect())
}

pub fn ratmat_from_json<F: Scalar>(v: &Value) -> Result<RatMat<F>> {
    let rows = v.as_array().ok_or_else(|| YrkError::Schema("rational matrix must be an array of rows".into()))?;
    let parsed: Vec<Vec<RatFun<F>>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| YrkError::Schema("row must be an array".into()))?
                .iter()
                .map(ratfun_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(Mat::from_rows(parsed))
}

/// Git-style content hash (`blob <len>\0<bytes>`) using SHA-256.
pub fn content_hash(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", bytes.len()).as_bytes());
    h.update(bytes);
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    #[test]
    fn ratmat_roundtrip() {
        let a = GaussRat::from_parts((1, 3), (-2, 1));
        let m: RatMat<GaussRat> = Mat::from_fn(2, 2, |i, j| RatFun::pole(&a, (i + j) as u32 + 1).scale(&GaussRat::from_i64(i as i64 - 3)));
        let back: RatMat<GaussRat> = ratmat_from_json(&ratmat_to_json(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(content_hash(b"abc"), content_hash(b"abc"));
        assert_ne!(content_hash(b"abc"), content_hash(b"abd"));
    }
}
