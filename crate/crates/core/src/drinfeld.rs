//! Deformed Drinfeld tensor product `V ⊗ᴰ_s W`.
//!
//! Contour integrals are evaluated as residue sums against the principal
//! parts of the fields: the contour around `σ(W)` picks up the poles of
//! `x^+_W(v)`, the one around `σ(V) + s` those of `x^-_V(v - s)`. They are
//! normalized so that `∮ v^r x^±_i(v) dv = ħ x^±_{i,r}`.

use crate::error::{Result, YrkError};
use crate::matrix::{Mat, RatMat};
use crate::ratfun::RatFun;
use crate::repn::{Currents, Representation, TensorKind};
use crate::scalar::Scalar;
use crate::series::PowerSeries;
use crate::tensor::{affine_in_s, check_compatible, SymbolicModule};

fn factorial<F: Scalar>(k: usize) -> F {
    F::from_i64((1..=k as i64).product())
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

/// `g^{(k)} / k!` for every `k < m`.
fn taylor_factors<F: Scalar>(g: &RatMat<F>, m: usize) -> Vec<RatMat<F>> {
    let mut out = Vec::with_capacity(m);
    let mut d = g.clone();
    for k in 0..m {
        let inv = factorial::<F>(k).inv().expect("nonzero factorial");
        out.push(d.scale_scalar(&inv));
        d = d.derivative();
    }
    out
}

/// `∮_{C_2} f(v - s) ⊗ g(v) dv` as a rational matrix in `s`, where the
/// contour encloses the poles of `g` only:
/// `Σ_{q,m} f^{(m-1)}(q - s)/(m-1)! ⊗ C_{q,m}` over principal parts of `g`.
pub fn contour_right<F: Scalar>(f: &RatMat<F>, g: &RatMat<F>, hints: &[F]) -> Result<RatMat<F>> {
    let minus_one = F::from_i64(-1);
    let mut out = RatMat::zeros(f.rows() * g.rows(), f.cols() * g.cols());
    for (q, cs) in g.principal_parts(hints)? {
        for (fk, c) in taylor_factors(f, cs.len()).iter().zip(&cs) {
            out = out.add(&fk.compose_affine(&minus_one, &q).kron(&c.to_ratmat()));
        }
    }
    Ok(out)
}

/// `∮_{C_1} f(v - s) ⊗ g(v) dv` as a rational matrix in `s`, where the
/// contour encloses the poles of `f(v - s)` only:
/// `Σ_{p,m} D_{p,m} ⊗ g^{(m-1)}(p + s)/(m-1)!` over principal parts of `f`.
pub fn contour_left<F: Scalar>(f: &RatMat<F>, g: &RatMat<F>, hints: &[F]) -> Result<RatMat<F>> {
    let mut out = RatMat::zeros(f.rows() * g.rows(), f.cols() * g.cols());
    for (p, ds) in f.principal_parts(hints)? {
        for (gk, d) in taylor_factors(g, ds.len()).iter().zip(&ds) {
            out = out.add(&d.to_ratmat().kron(&gk.shift(&p)));
        }
    }
    Ok(out)
}

/// Shifts `s ∈ σ(W) - σ(V)` where the product is undefined.
pub fn singular_shifts<F: Scalar>(v: &Representation<F>, w: &Representation<F>) -> Result<Vec<F>> {
    let pv = v.pole_set()?;
    let pw = w.pole_set()?;
    let mut out: Vec<F> = Vec::new();
    for (q, _) in &pw {
        for (p, _) in &pv {
            let d = q.sub_ref(p);
            if !out.iter().any(|x| crate::roots::same_point(x, &d)) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Generators of `V ⊗ᴰ_s W` as rational matrices in `s`.
///
/// `ξ_{i,0}` is primitive, `t_{i,1} ↦ (t_{i,1} + s ξ_{i,0}) ⊗ 1 + 1 ⊗ t_{i,1}`, and
/// the zero modes of `x^±_i` come from the residue sums
/// `x^+_{i,0} ⊗ 1 + ħ⁻¹ Σ_{q,m} ξ_{V}^{(m-1)}(q - s)/(m-1)! ⊗ C_{q,m}` and
/// `1 ⊗ x^-_{i,0} + ħ⁻¹ Σ_{p,m} D_{p,m} ⊗ ξ_{W}^{(m-1)}(p + s)/(m-1)!`,
/// where `C_{q,m}`, `D_{p,m}` are principal part coefficients of `x^+_W` and `x^-_V`.
pub fn drinfeld_tensor<F: Scalar>(v: &Representation<F>, w: &Representation<F>) -> Result<SymbolicModule<F>> {
    check_compatible(v, w)?;
    let n = v.rank();
    let hinv = v.hbar().inv().ok_or(YrkError::DivisionByZero)?;
    let (i1, i2) = (Mat::<F>::identity(v.dim()), Mat::<F>::identity(w.dim()));
    let prim = |a: &Mat<F>, b: &Mat<F>| a.kron(&i2).add(&i1.kron(b));
    let (hv, hw) = (v.pole_hints(), w.pole_hints());
    let mut xi0 = Vec::new();
    let mut xp0 = Vec::new();
    let mut xm0 = Vec::new();
    let mut t1 = Vec::new();
    for i in 0..n {
        let cv = v.currents(i)?;
        let cw = w.currents(i)?;
        let xp = v.xp0()[i].kron(&i2).to_ratmat().add(&contour_right(&cv.xi, &cw.xp, &hw)?.scale_scalar(&hinv));
        let xm = i1.kron(&w.xm0()[i]).to_ratmat().add(&contour_left(&cv.xm, &cw.xi, &hv)?.scale_scalar(&hinv));
        xi0.push(prim(&v.xi0()[i], &w.xi0()[i]).to_ratmat());
        xp0.push(xp);
        xm0.push(xm);
        t1.push(affine_in_s(&prim(&v.t1()[i], &w.t1()[i]), &v.xi0()[i].kron(&i2)));
    }
    let singular = singular_shifts(v, w)?;
    Ok(SymbolicModule { kind: TensorKind::Drinfeld, left: v.clone(), right: w.clone(), xi0, xp0, xm0, t1, singular })
}

/// `V ⊗ᴰ_s W` at a numeric shift.
pub fn drinfeld_tensor_at<F: Scalar>(v: &Representation<F>, w: &Representation<F>, s: &F) -> Result<Representation<F>> {
    drinfeld_tensor(v, w)?.at(s)
}

/// Full fields of node `i` on `V ⊗ᴰ_s W` from the residue formulas, as rational
/// matrices in `u`. Independent of the zero-mode reconstruction.
pub fn residue_currents<F: Scalar>(v: &Representation<F>, w: &Representation<F>, s: &F, i: usize) -> Result<Currents<F>> {
    check_compatible(v, w)?;
    if singular_shifts(v, w)?.iter().any(|p| crate::roots::same_point(p, s)) {
        return Err(YrkError::PoleCollision(format!("drinfeld tensor product is undefined at s = {s}")));
    }
    let (i1, i2) = (RatMat::<F>::identity(v.dim()), RatMat::<F>::identity(w.dim()));
    let cv = v.currents(i)?;
    let cw = w.currents(i)?;
    let ms = s.neg_ref();
    let xi = cv.xi.shift(&ms).kron(&cw.xi);
    let mut xp = cv.xp.shift(&ms).kron(&i2);
    for (q, cs) in cw.xp.principal_parts(&w.pole_hints())? {
        let m = cs.len();
        let at = q.sub_ref(s);
        for (j, g) in taylor_factors(&cv.xi, m).iter().enumerate() {
            let gj = g.eval(&at)?.to_ratmat();
            for (k, c) in cs.iter().enumerate().skip(j) {
                let pole = RatFun::pole(&q, (k + 1 - j) as u32);
                xp = xp.add(&gj.kron(&c.to_ratmat()).scale(&pole));
            }
        }
    }
    let mut xm = i1.kron(&cw.xm);
    for (p, ds) in cv.xm.principal_parts(&v.pole_hints())? {
        let m = ds.len();
        let at = p.add_ref(s);
        for (j, g) in taylor_factors(&cw.xi, m).iter().enumerate() {
            let gj = g.eval(&at)?.to_ratmat();
            for (k, d) in ds.iter().enumerate().skip(j) {
                let pole = RatFun::pole(&at, (k + 1 - j) as u32);
                xm = xm.add(&d.to_ratmat().kron(&gj).scale(&pole));
            }
        }
    }
    Ok(Currents { xi, xp, xm })
}

/// Zero modes of `x^±_i` on `V ⊗ᴰ_s W` as series in `s⁻¹`.
#[derive(Debug, Clone)]
pub struct DrinfeldSeries<F: Scalar> {
    pub order: usize,
    pub xp0: Vec<PowerSeries<F>>,
    pub xm0: Vec<PowerSeries<F>>,
}

/// Expansion at `s = ∞` through `s^{-order}`:
/// the `s^{-N-1}` coefficient of `x^+_{i,0}` is `ħ Σ_n (-1)^{n+1} C(N,n) ξ_{i,n} ⊗ x^+_{i,N-n}`
/// and that of `x^-_{i,0}` is `ħ Σ_n (-1)^n C(N,n) x^-_{i,n} ⊗ ξ_{i,N-n}`.
pub fn drinfeld_tensor_series<F: Scalar>(v: &Representation<F>, w: &Representation<F>, order: usize) -> Result<DrinfeldSeries<F>> {
    check_compatible(v, w)?;
    let (i1, i2) = (Mat::<F>::identity(v.dim()), Mat::<F>::identity(w.dim()));
    let hbar = v.hbar();
    let mut xp0 = Vec::new();
    let mut xm0 = Vec::new();
    for i in 0..v.rank() {
        let mv = v.modes(i, order.max(1));
        let mw = w.modes(i, order.max(1));
        let mut cp = vec![v.xp0()[i].kron(&i2).add(&i1.kron(&w.xp0()[i]))];
        let mut cm = vec![v.xm0()[i].kron(&i2).add(&i1.kron(&w.xm0()[i]))];
        for big_n in 0..order {
            let mut p = Mat::zeros(cp[0].rows(), cp[0].cols());
            let mut m = p.clone();
            for k in 0..=big_n {
                let b = F::from_i64(binom(big_n, k)).mul_ref(hbar);
                let sign = if k % 2 == 0 { F::one() } else { F::from_i64(-1) };
                p = p.sub(&mv.xi[k].kron(&mw.xp[big_n - k]).scale(&b.mul_ref(&sign)));
                m = m.add(&mv.xm[k].kron(&mw.xi[big_n - k]).scale(&b.mul_ref(&sign)));
            }
            cp.push(p);
            cm.push(m);
        }
        xp0.push(PowerSeries::new(cp));
        xm0.push(PowerSeries::new(cm));
    }
    Ok(DrinfeldSeries { order, xp0, xm0 })
}

/// Largest entry of the difference of the generator matrices; exactly zero
/// when they coincide on the exact backend.
pub fn generator_residual<F: Scalar>(a: &Representation<F>, b: &Representation<F>) -> f64 {
    let mut r: f64 = 0.0;
    for (x, y) in [(a.xi0(), b.xi0()), (a.xp0(), b.xp0()), (a.xm0(), b.xm0()), (a.t1(), b.t1())] {
        for (m, n) in x.iter().zip(y) {
            let d = m.sub(n);
            if !d.is_zero() {
                r = r.max(d.max_abs().max(f64::MIN_POSITIVE));
            }
        }
    }
    r
}

/// Residual of `(V₁ ⊗ᴰ_{s₁} V₂) ⊗ᴰ_{s₂} V₃ = V₁ ⊗ᴰ_{s₁+s₂} (V₂ ⊗ᴰ_{s₂} V₃)`.
pub fn coassociativity_residual<F: Scalar>(
    v1: &Representation<F>,
    v2: &Representation<F>,
    v3: &Representation<F>,
    s1: &F,
    s2: &F,
) -> Result<f64> {
    let left = drinfeld_tensor_at(&drinfeld_tensor_at(v1, v2, s1)?, v3, s2)?;
    let right = drinfeld_tensor_at(v1, &drinfeld_tensor_at(v2, v3, s2)?, &s1.add_ref(s2))?;
    Ok(generator_residual(&left, &right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanData;
    use crate::scalar::GaussRat;

    fn q(p: i64, d: i64) -> GaussRat {
        GaussRat::from_ratio(p, d)
    }

    fn c2(a: GaussRat) -> Representation<GaussRat> {
        Representation::sl2_evaluation(a, q(1, 1))
    }

    #[test]
    fn satisfies_relations() {
        let vw = drinfeld_tensor_at(&c2(q(0, 1)), &c2(q(13, 10)), &q(2, 3)).unwrap();
        let r = vw.verify_relations(5, 2, 0.0).unwrap();
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn lowering_mode_on_c2_left() {
        let v = c2(q(0, 1));
        let w = drinfeld_tensor_at(&c2(q(1, 1)), &c2(q(-1, 1)), &q(0, 1)).unwrap();
        let s = q(7, 3);
        let vw = drinfeld_tensor_at(&v, &w, &s).unwrap();
        let xi_s = w.currents(0).unwrap().xi.eval(&s).unwrap();
        let expected = v.xm0()[0].kron(&xi_s).add(&Mat::identity(2).kron(&w.xm0()[0]));
        assert_eq!(vw.xm0()[0], expected);
    }

    #[test]
    fn counit() {
        let c = CartanData::sl2();
        let triv = Representation::trivial(c, q(1, 1)).unwrap();
        let w = c2(q(1, 2));
        let s = q(3, 1);
        assert_eq!(generator_residual(&drinfeld_tensor_at(&triv, &w, &s).unwrap(), &w), 0.0);
        assert_eq!(generator_residual(&drinfeld_tensor_at(&w, &triv, &s).unwrap(), &w.shift(&s)), 0.0);
    }

    #[test]
    fn coassociative() {
        let r = coassociativity_residual(&c2(q(0, 1)), &c2(q(1, 2)), &c2(q(-1, 1)), &q(3, 1), &q(5, 1)).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn residue_form_matches_series() {
        let (v, w) = (c2(q(0, 1)), c2(q(1, 1)));
        let sym = drinfeld_tensor(&v, &w).unwrap();
        let ser = drinfeld_tensor_series(&v, &w, 4).unwrap();
        assert_eq!(PowerSeries::from_ratmat(&sym.xp0[0], 4).unwrap(), ser.xp0[0]);
        assert_eq!(PowerSeries::from_ratmat(&sym.xm0[0], 4).unwrap(), ser.xm0[0]);
        let lead = v.xi0()[0].kron(&w.xp0()[0]).scale(&q(-1, 1));
        assert_eq!(*ser.xp0[0].coeff(1), lead);
    }

    #[test]
    fn residue_currents_match_reconstruction() {
        let (v, w) = (c2(q(0, 1)), drinfeld_tensor_at(&c2(q(1, 1)), &c2(q(-1, 2)), &q(1, 3)).unwrap());
        let s = q(9, 4);
        let vw = drinfeld_tensor_at(&v, &w, &s).unwrap();
        let direct = residue_currents(&v, &w, &s, 0).unwrap();
        assert_eq!(*vw.currents(0).unwrap(), direct);
    }

    #[test]
    fn collision_is_reported() {
        let (v, w) = (c2(q(0, 1)), c2(q(1, 1)));
        let s = singular_shifts(&v, &w).unwrap()[0].clone();
        let err = drinfeld_tensor_at(&v, &w, &s).unwrap_err();
        assert!(matches!(err, YrkError::PoleCollision(_)));
    }
}
