//! JSON schema for representations.

use serde_json::{json, Value};

use crate::cartan::{CartanData, CartanSpec};
use crate::error::{Result, YrkError};
use crate::io::{mat_to_json, mats_from_json};
use crate::scalar::Scalar;

use super::{Provenance, Representation, TensorKind};

impl<F: Scalar> Provenance<F> {
    pub fn to_json(&self) -> Value {
        match self {
            Provenance::Trivial => json!({"kind": "trivial"}),
            Provenance::Custom => json!({"kind": "custom"}),
            Provenance::Evaluation { a } => json!({"kind": "evaluation", "a": a.to_json()}),
            Provenance::Shift { a, inner } => json!({"kind": "shift", "a": a.to_json(), "inner": inner.to_json()}),
            Provenance::Tensor { kind, s, left, right } => json!({
                "kind": kind.as_str(),
                "s": s.to_json(),
                "left": left.to_json(),
                "right": right.to_json(),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v.get("kind").and_then(|k| k.as_str()).unwrap_or("custom");
        let scalar = |k: &str| -> Result<F> {
            F::from_json(v.get(k).ok_or_else(|| YrkError::Schema(format!("provenance `{kind}` needs `{k}`")))?)
        };
        let sub = |k: &str| -> Result<Box<Provenance<F>>> {
            Ok(Box::new(Provenance::from_json(v.get(k).ok_or_else(|| YrkError::Schema(format!("provenance needs `{k}`")))?)?))
        };
        Ok(match kind {
            "trivial" => Provenance::Trivial,
            "custom" => Provenance::Custom,
            "evaluation" => Provenance::Evaluation { a: scalar("a")? },
            "shift" => Provenance::Shift { a: scalar("a")?, inner: sub("inner")? },
            "standard" | "drinfeld" => Provenance::Tensor {
                kind: if kind == "standard" { TensorKind::Standard } else { TensorKind::Drinfeld },
                s: scalar("s")?,
                left: sub("left")?,
                right: sub("right")?,
            },
            other => return Err(YrkError::Schema(format!("unknown provenance kind `{other}`"))),
        })
    }
}

impl<F: Scalar> Representation<F> {
    pub fn to_json(&self) -> Value {
        let mats = |v: &[crate::matrix::Mat<F>]| Value::Array(v.iter().map(mat_to_json).collect());
        json!({
            "backend": F::backend(),
            "cartan": serde_json::to_value(self.cartan().spec()).expect("cartan spec serializes"),
            "hbar": self.hbar().to_json(),
            "dim": self.dim(),
            "xi0": mats(self.xi0()),
            "xp0": mats(self.xp0()),
            "xm0": mats(self.xm0()),
            "t1": mats(self.t1()),
            "poles": self.declared_poles().iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "provenance": self.provenance().to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let spec: CartanSpec = serde_json::from_value(v.get("cartan").cloned().ok_or_else(|| YrkError::Schema("missing `cartan`".into()))?)
            .map_err(|e| YrkError::Schema(format!("cartan: {e}")))?;
        let cartan = CartanData::from_spec(&spec)?;
        let hbar = F::from_json(v.get("hbar").ok_or_else(|| YrkError::Schema("missing `hbar`".into()))?)?;
        let provenance = match v.get("provenance") {
            Some(p) => Provenance::from_json(p)?,
            None => Provenance::Custom,
        };
        let rep = Representation::new(
            cartan,
            hbar,
            mats_from_json(v, "xi0")?,
            mats_from_json(v, "xp0")?,
            mats_from_json(v, "xm0")?,
            mats_from_json(v, "t1")?,
            provenance,
        )?;
        if let Some(d) = v.get("dim").and_then(|d| d.as_u64()) {
            if d as usize != rep.dim() {
                return Err(YrkError::Schema(format!("declared dim {d} does not match matrices of size {}", rep.dim())));
            }
        }
        let poles = match v.get("poles").and_then(|p| p.as_array()) {
            Some(a) => a.iter().map(F::from_json).collect::<Result<Vec<F>>>()?,
            None => Vec::new(),
        };
        Ok(rep.with_declared_poles(poles))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;
    use num_complex::Complex64;

    #[test]
    fn roundtrip_exact() {
        let v = Representation::sl2_evaluation(GaussRat::from_parts((-2, 1), (1, 1)), GaussRat::from_i64(1)).shift(&GaussRat::from_ratio(1, 2));
        let back = Representation::<GaussRat>::from_json(&v.to_json()).unwrap();
        assert_eq!(back, v);
        assert_eq!(back.provenance(), v.provenance());
    }

    #[test]
    fn backend_mismatch_is_a_schema_error() {
        let v = Representation::sl2_evaluation(GaussRat::from_i64(0), GaussRat::from_i64(1));
        let err = Representation::<Complex64>::from_json(&v.to_json()).unwrap_err();
        assert_eq!(err, YrkError::BackendMismatch);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let mut j = Representation::sl2_evaluation(GaussRat::from_i64(0), GaussRat::from_i64(1)).to_json();
        j["dim"] = json!(3);
        assert!(matches!(Representation::<GaussRat>::from_json(&j), Err(YrkError::Schema(_))));
    }
}
