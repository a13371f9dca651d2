//! The lower triangular factor `R⁻_{V₁,V₂}(s)`.
//!
//! Blocks `R⁻(s)_β` (weight `(-β, β)`) are built by height from
//! `(sβ(h) - 𝒯(h)) R⁻_β = ħ Σ_α α(h) R⁻_{β-α} (x^-_α ⊗ x^+_α)`, where
//! `𝒯(h) = ad(T(h) ⊗ 1 + 1 ⊗ T(h))` and `T(d_i h_i) = t_{i,1}`. For `sl_2`
//! an independent closed form is available.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::cartan::RootVec;
use crate::drinfeld::{contour_right, drinfeld_tensor, drinfeld_tensor_at};
use crate::error::{Result, YrkError};
use crate::matrix::{flip_conj, Mat, RatMat};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::repn::Representation;
use crate::sampling::Sampler;
use crate::scalar::{Field, Ring, Scalar};
use crate::tensor::{check_compatible, root_vectors, standard_tensor, standard_tensor_at};

/// `R⁻` with its weight blocks, all in the original bases of `V₁`, `V₂`.
#[derive(Debug, Clone)]
pub struct RMinus<F: Scalar> {
    pub matrix: RatMat<F>,
    pub blocks: Vec<(RootVec, RatMat<F>)>,
}

fn to_int<F: Scalar>(x: &F) -> Option<i64> {
    let z = x.to_c64();
    let r = z.re.round();
    ((z.re - r).abs() < 1e-6 && z.im.abs() < 1e-6).then_some(r as i64)
}

/// Root-lattice coordinates of a difference of `ξ_{·,0}` eigenvalues.
fn to_root<F: Scalar>(binv: &Mat<F>, delta: &[F]) -> Option<RootVec> {
    (0..delta.len())
        .map(|i| {
            let x = (0..delta.len()).fold(F::zero(), |acc, j| acc.add_ref(&binv[(i, j)].mul_ref(&delta[j])));
            to_int(&x)
        })
        .collect()
}

/// Apply a constant matrix to a vector of rational functions.
fn apply<F: Scalar>(m: &Mat<F>, y: &[RatFun<F>]) -> Vec<RatFun<F>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).fold(RatFun::zero(), |acc, j| if m[(i, j)].is_zero() { acc } else { acc.add_ref(&y[j].scale(&m[(i, j)])) }))
        .collect()
}

/// `T(h)` on a representation, where `h` is given by the values `α_i(h)`.
fn cartan_t1<F: Scalar>(v: &Representation<F>, coef: &[F]) -> Mat<F> {
    coef.iter().zip(v.t1()).fold(Mat::zeros(v.dim(), v.dim()), |acc, (c, t)| acc.add(&t.scale(c)))
}

/// Data of the weight-block recursion shared by the symbolic and pointwise builders.
struct Recursion<F: Scalar> {
    dim: usize,
    hbar: F,
    tt: Mat<F>,
    xs: Vec<(F, Mat<F>)>,
    /// Blocks in order of height: `β(h)` and the support of `R⁻_β`.
    blocks: Vec<(RootVec, i64, F, Vec<(usize, usize)>)>,
    pm: Mat<F>,
}

impl<F: Scalar> Recursion<F> {
    fn new(v1: &Representation<F>, v2: &Representation<F>, h: Option<&[F]>) -> Result<Self> {
        check_compatible(v1, v2)?;
        let c = v1.cartan().clone();
        let n = c.rank();
        let a: Vec<F> = h.map(|x| x.to_vec()).unwrap_or_else(|| vec![F::one(); n]);
        if a.len() != n {
            return Err(YrkError::Domain(format!("h needs {n} values α_i(h), found {}", a.len())));
        }
        let binv: Mat<F> = c.b_inverse().map(F::from_gauss);
        let coef: Vec<F> = (0..n).map(|i| (0..n).fold(F::zero(), |acc, j| acc.add_ref(&binv[(i, j)].mul_ref(&a[j])))).collect();
        let beta_h = |beta: &[i64]| beta.iter().zip(&a).fold(F::zero(), |acc, (&b, x)| acc.add_ref(&x.mul_ref(&F::from_i64(b))));

        let (p1, w1) = v1.weight_basis()?;
        let (p2, w2) = v2.weight_basis()?;
        let (d1, d2) = (w1.dim(), w2.dim());
        let dim = d1 * d2;
        let (l1, l2) = (w1.weights().expect("weight basis"), w2.weights().expect("weight basis"));
        let tt = cartan_t1(&w1, &coef).kron(&Mat::identity(d2)).add(&Mat::identity(d1).kron(&cartan_t1(&w2, &coef)));
        let (rv1, rv2) = (root_vectors(&w1)?, root_vectors(&w2)?);
        let xs: Vec<(F, Mat<F>)> = c
            .positive_roots()
            .iter()
            .enumerate()
            .map(|(k, beta)| (beta_h(beta), rv1[k].1.kron(&rv2[k].0)))
            .filter(|(ah, x)| !ah.is_zero() && !x.is_zero())
            .collect();

        let mut supports: BTreeMap<(i64, RootVec), Vec<(usize, usize)>> = BTreeMap::new();
        for r in 0..dim {
            for col in 0..dim {
                let (r1, r2, c1, c2) = (r / d2, r % d2, col / d2, col % d2);
                let d_left: Vec<F> = (0..n).map(|i| l1[c1][i].sub_ref(&l1[r1][i])).collect();
                let d_right: Vec<F> = (0..n).map(|i| l2[r2][i].sub_ref(&l2[c2][i])).collect();
                let (Some(b1), Some(b2)) = (to_root(&binv, &d_left), to_root(&binv, &d_right)) else { continue };
                if b1 != b2 || b1.iter().any(|&x| x < 0) || b1.iter().all(|&x| x == 0) {
                    continue;
                }
                let height = b1.iter().sum();
                supports.entry((height, b1)).or_default().push((r, col));
            }
        }
        let mut blocks = Vec::with_capacity(supports.len());
        for ((height, beta), support) in supports {
            let b = beta_h(&beta);
            if b.is_zero() {
                return Err(YrkError::Domain(format!("h is not regular: β(h) = 0 for β = {beta:?}")));
            }
            blocks.push((beta, height, b, support));
        }
        Ok(Recursion { dim, hbar: v1.hbar().clone(), tt, xs, blocks, pm: p1.kron(&p2) })
    }

    /// The operator `L` on the support of one block.
    fn block_operator(&self, support: &[(usize, usize)]) -> Mat<F> {
        let pos: BTreeMap<(usize, usize), usize> = support.iter().enumerate().map(|(k, &rc)| (rc, k)).collect();
        let m = support.len();
        let tt = &self.tt;
        let mut l = Mat::<F>::zeros(m, m);
        for (k, &(r, col)) in support.iter().enumerate() {
            for q in 0..self.dim {
                if !tt[(q, r)].is_zero() {
                    if let Some(&t) = pos.get(&(q, col)) {
                        l[(t, k)] = l[(t, k)].add_ref(&tt[(q, r)]);
                    }
                }
                if !tt[(col, q)].is_zero() {
                    if let Some(&t) = pos.get(&(r, q)) {
                        l[(t, k)] = l[(t, k)].sub_ref(&tt[(col, q)]);
                    }
                }
            }
        }
        l
    }
}

/// Build `R⁻_{V₁,V₂}(s)` by the weight-block recursion. `h` lists `α_i(h)`;
/// the default is `α_i(h) = 1` for every `i`.
pub fn rminus_recursive<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>, h: Option<&[F]>) -> Result<RMinus<F>> {
    let rec = Recursion::new(v1, v2, h)?;
    let dim = rec.dim;
    let mut total = RatMat::<F>::identity(dim);
    let mut blocks: Vec<(RootVec, RatMat<F>)> = Vec::new();
    let mut current_height = 0;
    let mut rhs = RatMat::<F>::zeros(dim, dim);
    let mut pending = RatMat::<F>::zeros(dim, dim);
    for (beta, height, b, support) in &rec.blocks {
        if *height != current_height {
            total = total.add(&pending);
            pending = RatMat::zeros(dim, dim);
            current_height = *height;
            rhs = rec.xs.iter().fold(RatMat::zeros(dim, dim), |acc, (ah, x)| acc.add(&total.mul_const(x).scale_scalar(&ah.mul_ref(&rec.hbar))));
        }
        let y: Vec<RatFun<F>> = support.iter().map(|&(r, col)| rhs[(r, col)].clone()).collect();
        if y.iter().all(|f| f.is_zero()) {
            continue;
        }
        let l = rec.block_operator(support);
        // (z - L)^{-1} with z = β(h) s.
        let (p, adj) = l.resolvent();
        let zb = Poly::new(vec![F::zero(), b.clone()]);
        let den = RatFun::from_poly(p.compose_affine(b, &F::zero()));
        let mut x = vec![RatFun::zero(); support.len()];
        let mut zpow = RatFun::one();
        for aj in &adj {
            for (xi, t) in x.iter_mut().zip(apply(aj, &y)) {
                *xi = xi.add_ref(&t.mul_ref(&zpow));
            }
            zpow = zpow.mul_ref(&RatFun::from_poly(zb.clone()));
        }
        let mut block = RatMat::zeros(dim, dim);
        for (k, &(r, col)) in support.iter().enumerate() {
            block[(r, col)] = x[k].div_ref(&den).ok_or(YrkError::DivisionByZero)?;
        }
        pending = pending.add(&block);
        blocks.push((beta.clone(), block));
    }
    total = total.add(&pending);

    let pm = rec.pm;
    if pm.is_identity() {
        return Ok(RMinus { matrix: total, blocks });
    }
    let pinv = pm.inverse()?.to_ratmat();
    let pr = pm.to_ratmat();
    let back = |m: &RatMat<F>| pr.mul(m).mul(&pinv);
    Ok(RMinus { matrix: back(&total), blocks: blocks.iter().map(|(b, m)| (b.clone(), back(m))).collect() })
}

/// `R⁻_{V₁,V₂}(s)` at one complex point, solving each block as a linear system.
pub fn rminus_at<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>, s: Complex64) -> Result<Mat<Complex64>> {
    let rec = Recursion::new(v1, v2, None)?;
    let dim = rec.dim;
    let hbar = rec.hbar.to_c64();
    let xs: Vec<(Complex64, Mat<Complex64>)> = rec.xs.iter().map(|(a, x)| (a.to_c64(), x.to_c64())).collect();
    let mut total = Mat::<Complex64>::identity(dim);
    let mut pending = Mat::<Complex64>::zeros(dim, dim);
    let mut rhs = Mat::<Complex64>::zeros(dim, dim);
    let mut current_height = 0;
    for (_, height, b, support) in &rec.blocks {
        if *height != current_height {
            total = total.add(&pending);
            pending = Mat::zeros(dim, dim);
            current_height = *height;
            rhs = xs.iter().fold(Mat::zeros(dim, dim), |acc, (ah, x)| acc.add(&total.mul(x).scale(&(ah * hbar))));
        }
        let m = support.len();
        let y = Mat::from_fn(m, 1, |k, _| rhs[support[k]]);
        if y.is_zero() {
            continue;
        }
        let z = b.to_c64() * s;
        let l = rec.block_operator(support).to_c64();
        let a = Mat::from_fn(m, m, |i, j| if i == j { z - l[(i, j)] } else { -l[(i, j)] });
        let x = a.solve(&y).map_err(|_| YrkError::Pole(format!("R⁻ has a pole at s = {s}")))?;
        for (k, &rc) in support.iter().enumerate() {
            pending[rc] = x[(k, 0)];
        }
    }
    total = total.add(&pending);
    if rec.pm.is_identity() {
        return Ok(total);
    }
    let pm = rec.pm.to_c64();
    Ok(pm.mul(&total).mul(&pm.inverse()?))
}

/// `R⁺_{V₁,V₂}(s) = flip ∘ R⁻_{V₂,V₁}(-s)^{-1} ∘ flip` at one complex point.
pub fn rplus_at<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>, s: Complex64) -> Result<Mat<Complex64>> {
    let r21 = rminus_at(v2, v1, -s)?;
    let inv = r21.inverse().map_err(|_| YrkError::Pole(format!("R⁺ has a pole at s = {s}")))?;
    Ok(flip_conj(&inv, v2.dim(), v1.dim()))
}

/// Closed form for `sl_2`: `R⁻ = Σ ω_{k_1} ⋯ ω_{k_r} / (k_1 (k_1+k_2) ⋯ (k_1+⋯+k_r))`
/// with `ω_k = ((-1)^k / kħ) ∮_{C_2} x^-(u-s)^k ⊗ x^+(u)^k du`, the contour enclosing
/// `σ(V₂)`. The sum is accumulated through `n R_n = Σ_k R_{n-k} ω_k`.
pub fn rminus_sl2_closed_form<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>) -> Result<RatMat<F>> {
    check_compatible(v1, v2)?;
    if v1.rank() != 1 {
        return Err(YrkError::UnsupportedCartan("the closed form is available for sl2 only".into()));
    }
    let (d1, d2) = (v1.dim(), v2.dim());
    let xm = v1.currents(0)?.xm.clone();
    let xp = v2.currents(0)?.xp.clone();
    let hints = v2.pole_hints();
    let kmax = d1.min(d2);
    let mut omega: Vec<RatMat<F>> = Vec::new();
    let (mut pm, mut pp) = (RatMat::<F>::identity(d1), RatMat::<F>::identity(d2));
    for k in 1..=kmax {
        pm = pm.mul(&xm);
        pp = pp.mul(&xp);
        if pm.is_zero() || pp.is_zero() {
            break;
        }
        let sign = if k % 2 == 0 { F::one() } else { F::from_i64(-1) };
        let c = sign.mul_ref(&F::from_i64(k as i64).mul_ref(v1.hbar()).inv().ok_or(YrkError::DivisionByZero)?);
        omega.push(contour_right(&pm, &pp, &hints)?.scale_scalar(&c));
    }
    let mut terms: Vec<RatMat<F>> = vec![RatMat::identity(d1 * d2)];
    for nn in 1..=omega.len() {
        let mut acc = RatMat::zeros(d1 * d2, d1 * d2);
        for k in 1..=nn {
            acc = acc.add(&terms[nn - k].mul(&omega[k - 1]));
        }
        terms.push(acc.scale_scalar(&F::from_ratio(1, nn as i64)));
    }
    Ok(terms.iter().skip(1).fold(terms[0].clone(), |acc, t| acc.add(t)))
}

/// Inverse of a unipotent matrix `1 + N` with nilpotent `N`.
pub fn unipotent_inverse<F: Scalar>(m: &RatMat<F>) -> Result<RatMat<F>> {
    let n = m.rows();
    let nil = m.sub(&RatMat::identity(n));
    let mut out = RatMat::identity(n);
    let mut term = RatMat::identity(n);
    for _ in 0..n {
        term = term.mul(&nil).neg();
        if term.is_zero() {
            return Ok(out);
        }
        out = out.add(&term);
    }
    if term.mul(&nil).is_zero() {
        Ok(out)
    } else {
        Err(YrkError::Singular)
    }
}

/// `R⁺_{V₁,V₂}(s) = flip ∘ R⁻_{V₂,V₁}(-s)^{-1} ∘ flip`, from `R⁻_{V₂,V₁}` on `V₂ ⊗ V₁`.
pub fn rplus_from_rminus<F: Scalar>(rm21: &RatMat<F>, d1: usize, d2: usize) -> Result<RatMat<F>> {
    let inv = unipotent_inverse(&rm21.compose_affine(&F::from_i64(-1), &F::zero()))?;
    Ok(flip_conj(&inv, d2, d1))
}

/// `R⁺_{V₁,V₂}(s)`.
pub fn rplus<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>) -> Result<RatMat<F>> {
    rplus_from_rminus(&rminus_recursive(v2, v1, None)?.matrix, v1.dim(), v2.dim())
}

/// Sample points in `s` for residuals of rational matrices.
pub fn residual_points(seed: u64, radius: f64) -> Vec<Complex64> {
    let mut s = Sampler::new(seed, radius);
    (0..4).map(|_| s.point_c64(&[], 0.0)).collect()
}

/// Residuals of `R⁻(s) Δ_s(x) - Δᴰ_s(x) R⁻(s)` for `x ∈ {ξ_{i,0}, x^±_{i,0}, t_{i,1}}`.
pub fn intertwine_residuals<F: Scalar>(
    v1: &Representation<F>,
    v2: &Representation<F>,
    r: &RatMat<F>,
    seed: u64,
) -> Result<Vec<(String, f64)>> {
    let std = standard_tensor(v1, v2)?;
    let dr = drinfeld_tensor(v1, v2)?;
    let pts = residual_points(seed, 10.0 * v1.hbar().abs());
    let mut out = Vec::new();
    for i in 0..v1.rank() {
        for (name, a, b) in [("xi0", &std.xi0[i], &dr.xi0[i]), ("xp0", &std.xp0[i], &dr.xp0[i]), ("xm0", &std.xm0[i], &dr.xm0[i]), ("t1", &std.t1[i], &dr.t1[i])] {
            let d = r.mul(a).sub(&b.mul(r));
            out.push((format!("{name}[{i}]"), d.residual(&pts)));
        }
    }
    Ok(out)
}

fn eval_at<F: Scalar>(m: &RatMat<F>, s: &F) -> Result<Mat<F>> {
    m.eval(s).map_err(|_| YrkError::Pole(format!("R⁻ has a pole at s = {s}")))
}

fn diff_norm<F: Scalar>(a: &Mat<F>, b: &Mat<F>) -> f64 {
    let d = a.sub(b);
    if d.is_zero() {
        0.0
    } else {
        d.max_abs().max(f64::MIN_POSITIVE)
    }
}

/// Residuals of the two cocycle identities at `(s₁, s₂)`:
/// `R_{V₁⊗ᴰ_{s₁}V₂,V₃}(s₂) R_{V₁,V₂}(s₁) = R_{V₁,V₂⊗ᴰ_{s₂}V₃}(s₁+s₂) R_{V₂,V₃}(s₂)` and
/// `R_{V₁,V₂}(s₁) R_{V₁⊗_{s₁}V₂,V₃}(s₂) = R_{V₂,V₃}(s₂) R_{V₁,V₂⊗_{s₂}V₃}(s₁+s₂)`.
pub fn cocycle_residuals<F: Scalar>(
    v1: &Representation<F>,
    v2: &Representation<F>,
    v3: &Representation<F>,
    s1: &F,
    s2: &F,
) -> Result<(f64, f64)> {
    let s12 = s1.add_ref(s2);
    let (i1, i3) = (Mat::<F>::identity(v1.dim()), Mat::<F>::identity(v3.dim()));
    let r12 = eval_at(&rminus_recursive(v1, v2, None)?.matrix, s1)?.kron(&i3);
    let r23 = i1.kron(&eval_at(&rminus_recursive(v2, v3, None)?.matrix, s2)?);

    let d12 = drinfeld_tensor_at(v1, v2, s1)?;
    let d23 = drinfeld_tensor_at(v2, v3, s2)?;
    let lhs = eval_at(&rminus_recursive(&d12, v3, None)?.matrix, s2)?.mul(&r12);
    let rhs = eval_at(&rminus_recursive(v1, &d23, None)?.matrix, &s12)?.mul(&r23);
    let v_form = diff_norm(&lhs, &rhs);

    let k12 = standard_tensor_at(v1, v2, s1)?;
    let k23 = standard_tensor_at(v2, v3, s2)?;
    let lhs = r12.mul(&eval_at(&rminus_recursive(&k12, v3, None)?.matrix, s2)?);
    let rhs = r23.mul(&eval_at(&rminus_recursive(v1, &k23, None)?.matrix, &s12)?);
    Ok((v_form, diff_norm(&lhs, &rhs)))
}

/// Whether every block `β` vanishes to order `ν(β)` at `s = ∞`.
pub fn block_decay_holds<F: Scalar>(v1: &Representation<F>, r: &RMinus<F>) -> Result<bool> {
    let c = v1.cartan();
    for (beta, m) in &r.blocks {
        let nu = c.nu(beta)?;
        let series = crate::series::PowerSeries::from_ratmat(m, nu)?;
        if (0..nu).any(|k| !series.coeff(k).is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `s⁻¹` coefficient of a rational matrix regular at infinity.
pub fn one_jet<F: Scalar>(m: &RatMat<F>) -> Result<Mat<F>> {
    Ok(crate::series::PowerSeries::from_ratmat(m, 1)?.coeff(1).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{r_tensor, CartanData};
    use crate::scalar::GaussRat;

    fn q(p: i64, d: i64) -> GaussRat {
        GaussRat::from_ratio(p, d)
    }

    fn c2(a: GaussRat) -> Representation<GaussRat> {
        Representation::sl2_evaluation(a, q(1, 1))
    }

    #[test]
    fn two_by_two() {
        let v = c2(q(0, 1));
        let r = rminus_recursive(&v, &v, None).unwrap().matrix;
        let x = v.xm0()[0].kron(&v.xp0()[0]).to_ratmat().scale(&RatFun::pole(&q(0, 1), 1));
        assert_eq!(r, RatMat::identity(4).add(&x));
        assert_eq!(rminus_sl2_closed_form(&v, &v).unwrap(), r);
    }

    #[test]
    fn closed_form_on_three_factors() {
        let v = c2(q(0, 1));
        let w = drinfeld_tensor_at(&c2(q(7, 10)), &c2(q(-21, 10)), &q(0, 1)).unwrap();
        let r = rminus_recursive(&v, &w, None).unwrap();
        assert_eq!(rminus_sl2_closed_form(&v, &w).unwrap(), r.matrix);
        let r2 = rminus_recursive(&w, &v, None).unwrap();
        assert_eq!(rminus_sl2_closed_form(&w, &v).unwrap(), r2.matrix);
        assert!(block_decay_holds(&w, &r2).unwrap());
    }

    #[test]
    fn intertwines() {
        let v = c2(q(0, 1));
        let w = c2(q(13, 10));
        let r = rminus_recursive(&v, &w, None).unwrap().matrix;
        for (name, res) in intertwine_residuals(&v, &w, &r, 1).unwrap() {
            assert_eq!(res, 0.0, "{name}");
        }
    }

    #[test]
    fn intertwines_rank_two() {
        let c = CartanData::builtin("A2").unwrap();
        let v = Representation::evaluation(c.clone(), q(0, 1), q(1, 1)).unwrap();
        let w = Representation::evaluation(c.clone(), q(1, 2), q(1, 1)).unwrap();
        let r = rminus_recursive(&v, &w, None).unwrap();
        for (name, res) in intertwine_residuals(&v, &w, &r.matrix, 1).unwrap() {
            assert_eq!(res, 0.0, "{name}");
        }
        let other = rminus_recursive(&v, &w, Some(&[q(2, 1), q(3, 1)])).unwrap();
        assert_eq!(other.matrix, r.matrix);
        let rt = r_tensor(&root_vectors(&v).unwrap(), &root_vectors(&w).unwrap());
        assert_eq!(one_jet(&r.matrix).unwrap(), rt);
    }

    #[test]
    fn cocycle() {
        let (a, b, cc) = (c2(q(0, 1)), c2(q(1, 2)), c2(q(-1, 1)));
        assert_eq!(cocycle_residuals(&a, &b, &cc, &q(2, 1), &q(5, 1)).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn rplus_on_c2() {
        let v = c2(q(0, 1));
        let rp = rplus(&v, &v).unwrap();
        let x = v.xp0()[0].kron(&v.xm0()[0]).to_ratmat().scale(&RatFun::pole(&q(0, 1), 1));
        assert_eq!(rp, RatMat::identity(4).add(&x));
    }

    #[test]
    fn pointwise_matches_rational() {
        let c = CartanData::builtin("A2").unwrap();
        let v = Representation::evaluation(c.clone(), q(0, 1), q(1, 1)).unwrap();
        let w = drinfeld_tensor_at(&v, &Representation::evaluation(c, q(1, 3), q(1, 1)).unwrap(), &q(5, 2)).unwrap();
        let s = Complex64::new(1.3, -0.4);
        let rm = rminus_recursive(&v, &w, None).unwrap().matrix.eval_c64(s).unwrap();
        let rp = rplus(&v, &w).unwrap().eval_c64(s).unwrap();
        assert!(rm.sub(&rminus_at(&v, &w, s).unwrap()).max_abs() < 1e-12);
        assert!(rp.sub(&rplus_at(&v, &w, s).unwrap()).max_abs() < 1e-12);
    }
}
