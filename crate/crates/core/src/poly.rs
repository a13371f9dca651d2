//! Dense univariate polynomials over a [`Scalar`] field.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Result, YrkError};
use crate::scalar::Scalar;

/// Polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Scalar> {
    coeffs: Vec<F>,
}

impl<F: Scalar> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<F: Scalar> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        if F::EXACT {
            while coeffs.last().is_some_and(|c| c.is_zero()) {
                coeffs.pop();
            }
        } else {
            let scale = coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
            while coeffs.last().is_some_and(|c| c.negligible(scale)) {
                coeffs.pop();
            }
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![F::one()] }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![F::zero(), F::one()] }
    }

    /// `x - a`.
    pub fn linear_root(a: &F) -> Self {
        Poly { coeffs: vec![a.neg_ref(), F::one()] }
    }

    pub fn from_roots(roots: &[F]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| acc.mul(&Poly::linear_root(r)))
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).add_ref(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).sub_ref(&o.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(YrkError::DivisionByZero)?;
        let lead_inv = d.lead().inv().ok_or(YrkError::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul_ref(&lead_inv);
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].sub_ref(&c.mul_ref(dj));
                }
            }
            r[k + dd] = F::zero();
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Exact quotient; fails if the remainder is nonzero (exact backend).
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if F::EXACT && !r.is_zero() {
            return Err(YrkError::Domain("polynomial division has a remainder".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(i) if !self.is_zero() => self.scale(&i),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor (Euclid). Intended for the exact backend.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = match a.div_rem(&b) {
                Ok((_, r)) => r,
                Err(_) => break,
            };
            a = b;
            b = r;
        }
        if a.is_zero() {
            Poly::one()
        } else {
            a.monic()
        }
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_c64();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.mul_ref(&F::from_i64(k as i64))).collect())
    }

    /// `p(a x + b)`.
    pub fn compose_affine(&self, a: &F, b: &F) -> Self {
        let lin = Poly::new(vec![b.clone(), a.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &F) -> Self {
        self.compose_affine(&F::one(), c)
    }

    pub fn to_c64(&self) -> Poly<Complex64> {
        Poly::new(self.coeffs.iter().map(|c| c.to_c64()).collect())
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Square-free part `p / gcd(p, p')`, monic.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).map(|(q, _)| q.monic()).unwrap_or_else(|_| self.monic())
    }

    /// Multiplicity of `r` as a root (exact division count on the exact
    /// backend; relative residual on the float backend).
    pub fn root_multiplicity(&self, r: &F) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = Poly::linear_root(r);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = match p.div_rem(&lin) {
                Ok(x) => x,
                Err(_) => return m,
            };
            let scale = p.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
            let zero = if F::EXACT { rem.is_zero() } else { rem.coeff(0).abs() <= 1e-8 * scale };
            if !zero || q.is_zero() && p.degree() == Some(0) {
                return m;
            }
            m += 1;
            p = q;
            if p.degree() == Some(0) {
                return m;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;
    use crate::scalar::GaussRat;

    fn p(c: &[i64]) -> Poly<GaussRat> {
        Poly::new(c.iter().map(|&k| GaussRat::from_i64(k)).collect())
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[1, 2, 3, 4, 5]);
        let d = p(&[-1, 0, 2]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p(&[1, 1]).pow(3).mul(&p(&[-2, 1]));
        let b = p(&[1, 1]).mul(&p(&[5, 1]));
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(a.square_free(), p(&[1, 1]).mul(&p(&[-2, 1])));
        assert_eq!(a.root_multiplicity(&GaussRat::from_i64(-1)), 3);
        assert_eq!(a.root_multiplicity(&GaussRat::from_i64(2)), 1);
        assert_eq!(a.root_multiplicity(&GaussRat::from_i64(3)), 0);
    }

    #[test]
    fn affine_composition() {
        let a = p(&[1, 0, 1]);
        let c = a.compose_affine(&GaussRat::from_i64(2), &GaussRat::from_i64(-1));
        assert_eq!(c, p(&[2, -4, 4]));
        let x = GaussRat::from_ratio(3, 5);
        assert_eq!(a.shift(&x).eval(&GaussRat::zero()), a.eval(&x));
    }
}
