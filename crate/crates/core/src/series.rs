//! Truncated power series in `s^{-1}` with matrix coefficients.

use num_complex::Complex64;

use crate::error::{Result, YrkError};
use crate::matrix::{Mat, RatMat};
use crate::scalar::Scalar;

/// `sum_{k=0}^{order} c_k s^{-k}`, every coefficient a `rows x cols` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<F: Scalar> {
    coeffs: Vec<Mat<F>>,
}

fn binom(n: i64, k: usize) -> i64 {
    // Generalized binomial for any integer n.
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 0..k as i64 {
        num *= (n - j) as i128;
        den *= (j + 1) as i128;
    }
    (num / den) as i64
}

impl<F: Scalar> PowerSeries<F> {
    pub fn new(coeffs: Vec<Mat<F>>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        PowerSeries { coeffs }
    }

    pub fn zero(rows: usize, cols: usize, order: usize) -> Self {
        PowerSeries { coeffs: vec![Mat::zeros(rows, cols); order + 1] }
    }

    pub fn identity(n: usize, order: usize) -> Self {
        let mut s = Self::zero(n, n, order);
        s.coeffs[0] = Mat::identity(n);
        s
    }

    pub fn constant(m: Mat<F>, order: usize) -> Self {
        let mut s = Self::zero(m.rows(), m.cols(), order);
        s.coeffs[0] = m;
        s
    }

    /// Scalar series `sum c_k s^{-k}` as 1x1 matrices.
    pub fn scalar(c: Vec<F>) -> Self {
        PowerSeries { coeffs: c.into_iter().map(|x| Mat::new(1, 1, vec![x])).collect() }
    }

    /// Expansion of a rational matrix at infinity.
    pub fn from_ratmat(m: &RatMat<F>, order: usize) -> Result<Self> {
        let entries: Vec<Vec<F>> = m.iter().map(|f| f.series_at_infinity(order)).collect::<Result<_>>()?;
        Ok(PowerSeries {
            coeffs: (0..=order)
                .map(|k| Mat::new(m.rows(), m.cols(), entries.iter().map(|e| e[k].clone()).collect()))
                .collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn rows(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn cols(&self) -> usize {
        self.coeffs[0].cols()
    }

    pub fn coeffs(&self) -> &[Mat<F>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Mat<F> {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    fn common_order(&self, o: &Self) -> usize {
        self.order().min(o.order())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        PowerSeries { coeffs: (0..=n).map(|k| self.coeffs[k].add(&o.coeffs[k])).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        PowerSeries { coeffs: (0..=n).map(|k| self.coeffs[k].sub(&o.coeffs[k])).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|m| m.scale(c)).collect() }
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(Mat::zeros(self.rows(), o.cols()), |acc, j| {
                    if self.coeffs[j].is_zero() || o.coeffs[k - j].is_zero() {
                        acc
                    } else {
                        acc.add(&self.coeffs[j].mul(&o.coeffs[k - j]))
                    }
                })
            })
            .collect();
        PowerSeries { coeffs }
    }

    /// Tensor product of coefficientwise Kronecker products.
    pub fn kron(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(Mat::zeros(self.rows() * o.rows(), self.cols() * o.cols()), |acc, j| {
                    acc.add(&self.coeffs[j].kron(&o.coeffs[k - j]))
                })
            })
            .collect();
        PowerSeries { coeffs }
    }

    /// Multiply every coefficient by a constant matrix on the left.
    pub fn left_mul(&self, m: &Mat<F>) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| m.mul(c)).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Mat<F>) -> Mat<F>) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Multiplicative inverse; requires an invertible leading coefficient.
    pub fn inverse(&self) -> Result<Self> {
        let c0inv = self.coeffs[0].inverse()?;
        let mut out: Vec<Mat<F>> = vec![c0inv.clone()];
        for k in 1..=self.order() {
            let mut acc = Mat::zeros(self.rows(), self.cols());
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out.push(c0inv.mul(&acc).neg());
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Logarithm of a series with identity leading coefficient.
    pub fn log(&self) -> Result<Self> {
        let n = self.rows();
        if !self.coeffs[0].is_identity() {
            return Err(YrkError::Domain("log needs an identity leading coefficient".into()));
        }
        let mut x = self.clone();
        x.coeffs[0] = Mat::zeros(n, n);
        let mut out = Self::zero(n, n, self.order());
        let mut power = x.clone();
        for k in 1..=self.order() {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&F::from_ratio(sign, k as i64)));
            power = power.mul(&x);
        }
        Ok(out)
    }

    /// Exponential of a series with zero leading coefficient.
    pub fn exp(&self) -> Result<Self> {
        let n = self.rows();
        if !self.coeffs[0].is_zero() {
            return Err(YrkError::Domain("exp needs a zero leading coefficient".into()));
        }
        let mut out = Self::identity(n, self.order());
        let mut term = Self::identity(n, self.order());
        for k in 1..=self.order() {
            term = term.mul(self).scale(&F::from_ratio(1, k as i64));
            out = out.add(&term);
        }
        Ok(out)
    }

    /// `f(s) ↦ f(s + c)`.
    pub fn shift(&self, c: &F) -> Self {
        let n = self.order();
        let mut out = Self::zero(self.rows(), self.cols(), n);
        for k in 0..=n {
            if self.coeffs[k].is_zero() {
                continue;
            }
            for j in 0..=n - k {
                let b = binom(-(k as i64), j);
                if b == 0 {
                    continue;
                }
                let f = F::from_i64(b).mul_ref(&c.pow(j as u32));
                out.coeffs[k + j] = out.coeffs[k + j].add(&self.coeffs[k].scale(&f));
            }
        }
        out
    }

    /// `f(s) ↦ f(-s)`.
    pub fn reflect(&self) -> Self {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, m)| if k % 2 == 1 { m.neg() } else { m.clone() })
                .collect(),
        }
    }

    /// `d/ds`, to the same order.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(self.rows(), self.cols(), n);
        for k in 1..n {
            out.coeffs[k + 1] = self.coeffs[k].scale(&F::from_i64(-(k as i64)));
        }
        out
    }

    /// Partial sum through `s^{-k}` evaluated at `s`.
    pub fn partial_sum_c64(&self, s: Complex64, k: usize) -> Mat<Complex64> {
        let mut acc = Mat::zeros(self.rows(), self.cols());
        let inv = 1.0 / s;
        let mut p = Complex64::new(1.0, 0.0);
        for c in self.coeffs.iter().take(k.min(self.order()) + 1) {
            acc = acc.add(&c.to_c64().scale(&p));
            p *= inv;
        }
        acc
    }

    /// Largest coefficient magnitude of `self - o`.
    pub fn max_diff(&self, o: &Self) -> f64 {
        self.sub(o).coeffs.iter().map(|m| m.max_abs()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::RatFun;
    use crate::scalar::GaussRat;

    fn sc(c: &[(i64, i64)]) -> PowerSeries<GaussRat> {
        PowerSeries::scalar(c.iter().map(|&(p, q)| GaussRat::from_ratio(p, q)).collect())
    }

    #[test]
    fn shift_matches_rational_expansion() {
        let a = GaussRat::from_ratio(2, 3);
        let c = GaussRat::from_ratio(-5, 4);
        let f = RatMat::new(1, 1, vec![RatFun::pole(&a, 2)]);
        let s = PowerSeries::from_ratmat(&f, 8).unwrap();
        let shifted = PowerSeries::from_ratmat(&f.shift(&c), 8).unwrap();
        assert_eq!(s.shift(&c), shifted);
    }

    #[test]
    fn log_exp_inverse() {
        let s = sc(&[(1, 1), (1, 2), (-3, 7), (2, 1), (0, 1), (5, 3)]);
        let back = s.log().unwrap().exp().unwrap();
        assert_eq!(back, s);
        let prod = s.mul(&s.inverse().unwrap());
        assert_eq!(prod, PowerSeries::identity(1, 5));
    }

    #[test]
    fn derivative_of_pole() {
        let a = GaussRat::from_ratio(1, 3);
        let f = RatMat::new(1, 1, vec![RatFun::pole(&a, 1)]);
        let s = PowerSeries::from_ratmat(&f, 6).unwrap();
        let ds = PowerSeries::from_ratmat(&f.derivative(), 6).unwrap();
        assert_eq!(s.derivative(), ds);
    }
}
