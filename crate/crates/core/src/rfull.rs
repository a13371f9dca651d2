//! The meromorphic R-matrices `R^ε_{V₁,V₂}(s) = R⁺(s) R^{0,ε}(s) R⁻(s)`.

use num_complex::Complex64;

use crate::cartan::{omega_h, r_tensor};
use crate::error::{Result, YrkError};
use crate::matrix::{embed_pair, flip_conj, flip_matrix, Mat, RatMat};
use crate::repn::Representation;
use crate::rminus::{rminus_at, rminus_recursive, rplus, rplus_at};
use crate::rzero::{abelian_a, morphism_residual, rzero_series, sup_diff, AbelianA, Direction};
use crate::scalar::Scalar;
use crate::series::PowerSeries;
use crate::tensor::{root_vectors, standard_tensor_at};

/// The three factors of `R^ε` on `V₁ ⊗ V₂`.
#[derive(Debug, Clone)]
pub struct MeromorphicR<F: Scalar> {
    pub v1: Representation<F>,
    pub v2: Representation<F>,
    pub direction: Direction,
    pub rplus: RatMat<F>,
    pub rminus: RatMat<F>,
    pub abelian: AbelianA<F>,
}

/// Assemble `R^ε_{V₁,V₂}`.
pub fn rfull<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>, direction: Direction) -> Result<MeromorphicR<F>> {
    Ok(MeromorphicR {
        v1: v1.clone(),
        v2: v2.clone(),
        direction,
        rplus: rplus(v1, v2)?,
        rminus: rminus_recursive(v1, v2, None)?.matrix,
        abelian: abelian_a(v1, v2)?,
    })
}

fn eval_rational<F: Scalar>(m: &RatMat<F>, s: Complex64, name: &str) -> Result<Mat<Complex64>> {
    m.eval_c64(s).map_err(|_| YrkError::Pole(format!("{name} has a pole at s = {s}")))
}

impl<F: Scalar> MeromorphicR<F> {
    pub fn dims(&self) -> (usize, usize) {
        (self.v1.dim(), self.v2.dim())
    }

    /// `R^ε(s)` at a complex point. On the float backend the triangular
    /// factors are solved at `s` directly.
    pub fn eval(&self, s: Complex64, tol: f64) -> Result<Mat<Complex64>> {
        let (p, m) = if F::EXACT {
            (eval_rational(&self.rplus, s, "R⁺")?, eval_rational(&self.rminus, s, "R⁻")?)
        } else {
            (rplus_at(&self.v1, &self.v2, s)?, rminus_at(&self.v1, &self.v2, s)?)
        };
        let z = self.abelian.product(s, self.direction, tol)?.matrix;
        Ok(p.mul(&z).mul(&m))
    }

    /// The formal series `R(s)` through `s^{-order}`.
    pub fn series(&self, order: usize) -> Result<PowerSeries<F>> {
        let p = PowerSeries::from_ratmat(&self.rplus, order)?;
        let m = PowerSeries::from_ratmat(&self.rminus, order)?;
        Ok(p.mul(&rzero_series(&self.v1, &self.v2, order)?).mul(&m))
    }
}

/// `Ω_g = Σ_β (x^-_β ⊗ x^+_β + x^+_β ⊗ x^-_β) + Ω_h` on `V₁ ⊗ V₂`.
pub fn omega_g<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>) -> Result<Mat<F>> {
    let (r1, r2) = (root_vectors(v1)?, root_vectors(v2)?);
    let down = r_tensor(&r1, &r2);
    let up = flip_conj(&r_tensor(&r2, &r1), v2.dim(), v1.dim());
    Ok(down.add(&up).add(&omega_h(v1.cartan(), v1.xi0(), v2.xi0())))
}

/// `R^ε_{V₁,V₂}(s)` in one call.
pub fn rfull_at<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>, s: Complex64, direction: Direction, tol: f64) -> Result<Mat<Complex64>> {
    rfull(v1, v2, direction)?.eval(s, tol)
}

/// Residual of `R₁₂(s₁) R₁₃(s₁+s₂) R₂₃(s₂) = R₂₃(s₂) R₁₃(s₁+s₂) R₁₂(s₁)`.
pub fn qybe_residual<F: Scalar>(
    v1: &Representation<F>,
    v2: &Representation<F>,
    v3: &Representation<F>,
    s1: Complex64,
    s2: Complex64,
    direction: Direction,
    tol: f64,
) -> Result<f64> {
    let dims = [v1.dim(), v2.dim(), v3.dim()];
    let r12 = embed_pair(&rfull_at(v1, v2, s1, direction, tol)?, &dims, 0, 1);
    let r13 = embed_pair(&rfull_at(v1, v3, s1 + s2, direction, tol)?, &dims, 0, 2);
    let r23 = embed_pair(&rfull_at(v2, v3, s2, direction, tol)?, &dims, 1, 2);
    Ok(sup_diff(&r12.mul(&r13).mul(&r23), &r23.mul(&r13).mul(&r12)))
}

/// Residuals of `R_{V₁⊗_{s₁}V₂,V₃}(s₂) = R₁₃(s₁+s₂) R₂₃(s₂)` and
/// `R_{V₁,V₂⊗_{s₂}V₃}(s₁+s₂) = R₁₃(s₁+s₂) R₁₂(s₁)` for the standard tensor product.
pub fn cabling_residuals<F: Scalar>(
    v1: &Representation<F>,
    v2: &Representation<F>,
    v3: &Representation<F>,
    s1: &F,
    s2: &F,
    direction: Direction,
    tol: f64,
) -> Result<(f64, f64)> {
    let dims = [v1.dim(), v2.dim(), v3.dim()];
    let s12 = s1.add_ref(s2);
    let r = |a: &Representation<F>, b: &Representation<F>, s: &F| rfull_at(a, b, s.to_c64(), direction, tol);
    let r13 = embed_pair(&r(v1, v3, &s12)?, &dims, 0, 2);
    let r23 = embed_pair(&r(v2, v3, s2)?, &dims, 1, 2);
    let r12 = embed_pair(&r(v1, v2, s1)?, &dims, 0, 1);
    let lhs1 = r(&standard_tensor_at(v1, v2, s1)?, v3, s2)?;
    let lhs2 = r(v1, &standard_tensor_at(v2, v3, s2)?, &s12)?;
    Ok((sup_diff(&lhs1, &r13.mul(&r23)), sup_diff(&lhs2, &r13.mul(&r12))))
}

/// Morphism residual of `flip ∘ R^ε(s): V₁(s) ⊗ V₂ → V₂ ⊗ V₁(s)` on zero-mode generators.
pub fn intertwine_residual<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>, s: &F, direction: Direction, tol: f64) -> Result<f64> {
    let r = rfull_at(v1, v2, s.to_c64(), direction, tol)?;
    let x = flip_matrix::<Complex64>(v1.dim(), v2.dim()).mul(&r);
    let src = standard_tensor_at(v1, v2, s)?;
    let dst = standard_tensor_at(v2, &v1.shift(s), &F::zero())?;
    Ok(morphism_residual(&x, &src, &dst))
}

/// `‖flip ∘ R^↑_{V₁,V₂}(-s) ∘ flip - R^↓_{V₂,V₁}(s)^{-1}‖`.
pub fn unitarity_residual<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>, s: Complex64, tol: f64) -> Result<f64> {
    let up = rfull_at(v1, v2, -s, Direction::Up, tol)?;
    let down = rfull_at(v2, v1, s, Direction::Down, tol)?;
    Ok(sup_diff(&flip_conj(&up, v1.dim(), v2.dim()), &down.inverse()?))
}

/// `‖R^ε_{V₁(a),V₂(b)}(s) - R^ε_{V₁,V₂}(s + a - b)‖`.
pub fn shift_residual<F: Scalar>(
    v1: &Representation<F>,
    v2: &Representation<F>,
    a: &F,
    b: &F,
    s: Complex64,
    direction: Direction,
    tol: f64,
) -> Result<f64> {
    let lhs = rfull_at(&v1.shift(a), &v2.shift(b), s, direction, tol)?;
    let rhs = rfull_at(v1, v2, s + a.to_c64() - b.to_c64(), direction, tol)?;
    Ok(sup_diff(&lhs, &rhs))
}

/// `|R^ε(s) - Σ_{j≤k} R_j s^{-j}|` for `k = 0..=kmax`.
pub fn asymptotic_errors<F: Scalar>(r: &MeromorphicR<F>, s: Complex64, kmax: usize, tol: f64) -> Result<Vec<f64>> {
    let value = r.eval(s, tol)?;
    let series = r.series(kmax)?;
    Ok((0..=kmax).map(|k| sup_diff(&value, &series.partial_sum_c64(s, k))).collect())
}

/// Least-squares constant `C` in `err ≈ C |s|^{-(k+1)}` over the samples.
pub fn fit_order_constant(samples: &[(f64, f64)], k: usize) -> f64 {
    let p = -((k + 1) as f64);
    let (num, den) = samples.iter().fold((0.0, 0.0), |(n, d), &(s, e)| {
        let x = s.powf(p);
        (n + x * e, d + x * x)
    });
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanData;
    use crate::scalar::{GaussRat, Ring};

    fn fc2(a: f64) -> Representation<Complex64> {
        Representation::sl2_evaluation(Complex64::new(a, 0.0), Complex64::new(1.0, 0.0))
    }

    #[test]
    fn one_jet_is_casimir() {
        let h = GaussRat::from_ratio(1, 2);
        let v = Representation::sl2_evaluation(GaussRat::from_ratio(1, 3), h.clone());
        let w = Representation::sl2_evaluation(GaussRat::from_ratio(-1, 4), h.clone());
        let s = rfull(&v, &w, Direction::Up).unwrap().series(3).unwrap();
        assert!(s.coeff(0).is_identity());
        assert_eq!(s.coeff(1), &omega_g(&v, &w).unwrap().scale(&h));
    }

    #[test]
    fn one_jet_rank_two() {
        let c = CartanData::builtin("A2").unwrap();
        let one = GaussRat::one();
        let v = Representation::evaluation(c.clone(), GaussRat::zero(), one.clone()).unwrap();
        let w = Representation::evaluation(c, GaussRat::from_ratio(1, 2), one).unwrap();
        let s = rfull(&v, &w, Direction::Up).unwrap().series(2).unwrap();
        assert_eq!(s.coeff(1), &omega_g(&v, &w).unwrap());
    }

    #[test]
    fn qybe_and_cabling() {
        let (v1, v2, v3) = (fc2(0.0), fc2(0.4), fc2(-0.9));
        let (s1, s2) = (Complex64::new(3.1, 0.0), Complex64::new(2.7, 0.0));
        assert!(qybe_residual(&v1, &v2, &v3, s1, s2, Direction::Up, 1e-12).unwrap() < 1e-9);
        let (a, b) = cabling_residuals(&v1, &v2, &v3, &s1, &s2, Direction::Up, 1e-12).unwrap();
        assert!(a < 1e-8 && b < 1e-8, "{a} {b}");
        assert!(intertwine_residual(&v1, &v2, &s1, Direction::Up, 1e-12).unwrap() < 1e-9);
        assert!(unitarity_residual(&v1, &v2, Complex64::new(1.7, 0.0), 1e-12).unwrap() < 1e-9);
        let a = Complex64::new(0.3, 0.1);
        let b = Complex64::new(-0.2, 0.0);
        assert!(shift_residual(&v1, &v2, &a, &b, s1, Direction::Up, 1e-12).unwrap() < 1e-9);
    }
}
