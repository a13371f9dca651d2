//! Tensor products with a symbolic spectral shift, and the standard
//! coproduct.

use std::sync::Arc;

use crate::cartan::CartanData;
use crate::error::{Result, YrkError};
use crate::matrix::{Mat, RatMat};
use crate::ratfun::RatFun;
use crate::repn::{Provenance, Representation, TensorKind};
use crate::roots::same_point;
use crate::scalar::Scalar;

/// Generators of `V(s) ⊗ W` as rational matrices in the shift `s`.
#[derive(Debug, Clone)]
pub struct SymbolicModule<F: Scalar> {
    pub kind: TensorKind,
    pub left: Representation<F>,
    pub right: Representation<F>,
    pub xi0: Vec<RatMat<F>>,
    pub xp0: Vec<RatMat<F>>,
    pub xm0: Vec<RatMat<F>>,
    pub t1: Vec<RatMat<F>>,
    /// Shifts at which the construction is undefined even if the generator
    /// matrices happen to be regular there.
    pub singular: Vec<F>,
}

impl<F: Scalar> SymbolicModule<F> {
    pub fn cartan(&self) -> &Arc<CartanData> {
        self.left.cartan()
    }

    pub fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    /// Specialize the shift to a number.
    pub fn at(&self, s: &F) -> Result<Representation<F>> {
        if self.singular.iter().any(|p| same_point(p, s)) {
            return Err(YrkError::PoleCollision(format!("{} tensor product is undefined at s = {s}", self.kind.as_str())));
        }
        let ev = |v: &[RatMat<F>]| -> Result<Vec<Mat<F>>> {
            v.iter()
                .map(|m| {
                    m.eval(s).map_err(|_| {
                        YrkError::PoleCollision(format!("{} tensor product is singular at s = {s}", self.kind.as_str()))
                    })
                })
                .collect()
        };
        let provenance = Provenance::Tensor {
            kind: self.kind,
            s: s.clone(),
            left: Box::new(self.left.provenance().clone()),
            right: Box::new(self.right.provenance().clone()),
        };
        let mut poles: Vec<F> = self.left.declared_poles().iter().map(|p| p.add_ref(s)).collect();
        poles.extend(self.right.declared_poles().iter().cloned());
        Ok(Representation::new(
            self.cartan().clone(),
            self.left.hbar().clone(),
            ev(&self.xi0)?,
            ev(&self.xp0)?,
            ev(&self.xm0)?,
            ev(&self.t1)?,
            provenance,
        )?
        .with_declared_poles(poles))
    }
}

pub(crate) fn check_compatible<F: Scalar>(v: &Representation<F>, w: &Representation<F>) -> Result<()> {
    if v.cartan() != w.cartan() {
        return Err(YrkError::InvalidRepresentation("tensor factors have different Cartan data".into()));
    }
    if v.hbar() != w.hbar() {
        return Err(YrkError::InvalidRepresentation("tensor factors have different ħ".into()));
    }
    Ok(())
}

/// `A + s B` as a rational matrix in `s`.
pub(crate) fn affine_in_s<F: Scalar>(a: &Mat<F>, b: &Mat<F>) -> RatMat<F> {
    a.to_ratmat().add(&b.to_ratmat().scale(&RatFun::var()))
}

/// Root vectors `(x^+_β, x^-_β)` of a representation, in the order of
/// [`CartanData::positive_roots`].
pub fn root_vectors<F: Scalar>(v: &Representation<F>) -> Result<Vec<(Mat<F>, Mat<F>)>> {
    let c = v.cartan();
    if c.rank() == 1 {
        return Ok(vec![(v.xp0()[0].clone(), v.xm0()[0].clone())]);
    }
    let r = c.realization()?;
    Ok(r.root_vectors(c, v.xp0(), v.xm0()))
}

/// Standard coproduct with the shift on the first factor:
/// `ξ_{i,0}` and `x^±_{i,0}` are primitive and
/// `t_{i,1} ↦ (t_{i,1} + s ξ_{i,0}) ⊗ 1 + 1 ⊗ t_{i,1} - ħ Σ_β (β, α_i) x^-_β ⊗ x^+_β`.
pub fn standard_tensor<F: Scalar>(v: &Representation<F>, w: &Representation<F>) -> Result<SymbolicModule<F>> {
    check_compatible(v, w)?;
    let c = v.cartan().clone();
    let (i1, i2) = (Mat::<F>::identity(v.dim()), Mat::<F>::identity(w.dim()));
    let prim = |a: &Mat<F>, b: &Mat<F>| a.kron(&i2).add(&i1.kron(b));
    let rv = root_vectors(v)?;
    let rw = root_vectors(w)?;
    let n = c.rank();
    let mut xi0 = Vec::new();
    let mut xp0 = Vec::new();
    let mut xm0 = Vec::new();
    let mut t1 = Vec::new();
    for i in 0..n {
        xi0.push(prim(&v.xi0()[i], &w.xi0()[i]).to_ratmat());
        xp0.push(prim(&v.xp0()[i], &w.xp0()[i]).to_ratmat());
        xm0.push(prim(&v.xm0()[i], &w.xm0()[i]).to_ratmat());
        let mut t = prim(&v.t1()[i], &w.t1()[i]);
        let alpha_i = c.simple_root(i);
        for (k, beta) in c.positive_roots().iter().enumerate() {
            let coef = c.form(beta, &alpha_i);
            if coef != 0 {
                let term = rv[k].1.kron(&rw[k].0).scale(&v.hbar().mul_ref(&F::from_i64(coef)));
                t = t.sub(&term);
            }
        }
        t1.push(affine_in_s(&t, &v.xi0()[i].kron(&i2)));
    }
    Ok(SymbolicModule { kind: TensorKind::Standard, left: v.clone(), right: w.clone(), xi0, xp0, xm0, t1, singular: Vec::new() })
}

/// `V(s) ⊗ W` for the standard coproduct at a numeric shift.
pub fn standard_tensor_at<F: Scalar>(v: &Representation<F>, w: &Representation<F>, s: &F) -> Result<Representation<F>> {
    standard_tensor(v, w)?.at(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn q(p: i64, d: i64) -> GaussRat {
        GaussRat::from_ratio(p, d)
    }

    #[test]
    fn standard_tensor_satisfies_relations() {
        let v = Representation::sl2_evaluation(q(0, 1), q(1, 1));
        let w = Representation::sl2_evaluation(q(13, 10), q(1, 1));
        let vw = standard_tensor_at(&v, &w, &q(1, 3)).unwrap();
        let r = vw.verify_relations(3, 2, 0.0).unwrap();
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn standard_tensor_rank_two() {
        let c = CartanData::builtin("A2").unwrap();
        let v = Representation::evaluation(c.clone(), q(0, 1), q(1, 1)).unwrap();
        let w = Representation::evaluation(c, q(1, 2), q(1, 1)).unwrap();
        let vw = standard_tensor_at(&v, &w, &q(2, 7)).unwrap();
        let r = vw.verify_relations(4, 1, 0.0).unwrap();
        assert!(r.ok(), "{r:?}");
    }
}
