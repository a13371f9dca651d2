//! Fields `ξ_i(u)`, `x_i^±(u)` from zero modes.
//!
//! `x^±_{i,r} = (±ad(t_{i,1})/(2d_i))^r x^±_{i,0}`, so the generating field
//! is the resolvent `x^±_i(u) = ħ (u - M)^{-1} x^±_{i,0}`, computed in closed
//! form from the minimal polynomial of `M` on the Krylov space of `x^±_{i,0}`.

use crate::error::Result;
use crate::matrix::{Mat, RatMat};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::scalar::Scalar;

use super::Representation;

/// Rational fields of one node, as matrices of rational functions of `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct Currents<F: Scalar> {
    pub xi: RatMat<F>,
    pub xp: RatMat<F>,
    pub xm: RatMat<F>,
}

/// Modes `r = 0..count` of one node.
#[derive(Debug, Clone, PartialEq)]
pub struct Modes<F: Scalar> {
    pub xp: Vec<Mat<F>>,
    pub xm: Vec<Mat<F>>,
    pub xi: Vec<Mat<F>>,
}

/// Minimal polynomial `q` of `op` on the Krylov space of `x0`, and matrices
/// `N_p` with `(u - op)^{-1} x0 = (sum_p N_p u^p) / q(u)`.
pub fn krylov_resolvent<F: Scalar>(op: impl Fn(&Mat<F>) -> Mat<F>, x0: &Mat<F>) -> Result<(Poly<F>, Vec<Mat<F>>)> {
    if x0.is_zero() {
        return Ok((Poly::one(), Vec::new()));
    }
    let len = x0.rows() * x0.cols();
    let mut vs: Vec<Mat<F>> = vec![x0.clone()];
    loop {
        let next = op(vs.last().expect("nonempty"));
        let k = vs.len();
        let mut aug = Mat::from_fn(len, k + 1, |row, j| if j < k { vs[j].data()[row].clone() } else { next.data()[row].clone() });
        let piv = aug.rref();
        if piv.contains(&k) && k < len {
            vs.push(next);
            continue;
        }
        // next = sum_j a_j v_j
        let mut a = vec![F::zero(); k];
        for (r, &pc) in piv.iter().enumerate() {
            if pc < k {
                a[pc] = aug[(r, k)].clone();
            }
        }
        let mut qc: Vec<F> = a.iter().map(|x| x.neg_ref()).collect();
        qc.push(F::one());
        let q = Poly::new(qc);
        let mut num = vec![Mat::zeros(x0.rows(), x0.cols()); k];
        for m in 1..=k {
            let qm = q.coeff(m);
            if qm.is_zero() {
                continue;
            }
            for (j, v) in vs.iter().enumerate().take(m) {
                let p = m - 1 - j;
                num[p] = num[p].add(&v.scale(&qm));
            }
        }
        return Ok((q, num));
    }
}

fn ad_scaled<F: Scalar>(t: &Mat<F>, c: F) -> impl Fn(&Mat<F>) -> Mat<F> + '_ {
    move |x: &Mat<F>| t.commutator(x).scale(&c)
}

fn field<F: Scalar>(hbar: &F, q: &Poly<F>, num: &[Mat<F>], rows: usize, cols: usize) -> RatMat<F> {
    Mat::from_fn(rows, cols, |a, b| {
        let p = Poly::new(num.iter().map(|m| m[(a, b)].mul_ref(hbar)).collect());
        RatFun::new(p, q.clone()).expect("nonzero minimal polynomial")
    })
}

impl<F: Scalar> Currents<F> {
    pub(super) fn compute(v: &Representation<F>, i: usize) -> Result<Self> {
        let d = v.cartan().d(i);
        let n = v.dim();
        let t = &v.t1()[i];
        let cp = F::from_ratio(1, 2 * d);
        let cm = cp.neg_ref();
        let (qp, np) = krylov_resolvent(ad_scaled(t, cp), &v.xp0()[i])?;
        let (qm, nm) = krylov_resolvent(ad_scaled(t, cm), &v.xm0()[i])?;
        let xp = field(v.hbar(), &qp, &np, n, n);
        let xm = field(v.hbar(), &qm, &nm, n, n);
        let xi = Mat::identity(n).add(&xp.commutator(&v.xm0()[i].to_ratmat()));
        Ok(Currents { xi, xp, xm })
    }
}

impl<F: Scalar> Modes<F> {
    pub(super) fn compute(v: &Representation<F>, i: usize, count: usize) -> Self {
        let d = v.cartan().d(i);
        let t = &v.t1()[i];
        let cp = F::from_ratio(1, 2 * d);
        let mut xp = Vec::with_capacity(count);
        let mut xm = Vec::with_capacity(count);
        let mut p = v.xp0()[i].clone();
        let mut m = v.xm0()[i].clone();
        for _ in 0..count {
            xp.push(p.clone());
            xm.push(m.clone());
            p = t.commutator(&p).scale(&cp);
            m = t.commutator(&m).scale(&cp.neg_ref());
        }
        let xi = xp.iter().map(|x| x.commutator(&v.xm0()[i])).collect();
        Modes { xp, xm, xi }
    }
}
