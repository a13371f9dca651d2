//! Rational functions in one variable.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Result, YrkError};
use crate::poly::Poly;
use crate::roots;
use crate::scalar::{Field, Ring, Scalar};

/// Quotient `num / den` with monic, coprime denominator.
///
/// On the exact backend coprimality comes from the Euclidean gcd. On the
/// float backend common roots closer than [`CANCEL_TOL`] are divided out.
#[derive(Clone, PartialEq)]
pub struct RatFun<F: Scalar> {
    num: Poly<F>,
    den: Poly<F>,
}

/// Relative distance under which numerator and denominator roots cancel on
/// the float backend.
pub const CANCEL_TOL: f64 = 1e-8;

impl<F: Scalar> fmt::Debug for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<F: Scalar> fmt::Display for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}]/[{}]", self.num, self.den)
        }
    }
}

/// Power-series coefficients of `a / b` at 0, up to and including `order`.
pub fn series_quotient<F: Scalar>(a: &[F], b: &[F], order: usize) -> Result<Vec<F>> {
    let b0inv = b.first().and_then(|b0| b0.inv()).ok_or(YrkError::DivisionByZero)?;
    let mut out: Vec<F> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = a.get(k).cloned().unwrap_or_else(F::zero);
        for j in 1..=k.min(b.len().saturating_sub(1)) {
            acc = acc.sub_ref(&b[j].mul_ref(&out[k - j]));
        }
        out.push(acc.mul_ref(&b0inv));
    }
    Ok(out)
}

/// Principal parts of a rational function plus its polynomial part.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFractions<F: Scalar> {
    pub poly_part: Poly<F>,
    /// `(pole, c)` with `c[k-1]` the coefficient of `(x - pole)^{-k}`.
    pub terms: Vec<(F, Vec<F>)>,
}

impl<F: Scalar> RatFun<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(YrkError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFun { num, den: Poly::one() };
        }
        if den.is_constant() {
            let inv = den.lead().inv().expect("nonzero constant denominator");
            return RatFun { num: num.scale(&inv), den: Poly::one() };
        }
        let (num, den) = if F::EXACT {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_rem(&g).expect("gcd divides").0, den.div_rem(&g).expect("gcd divides").0)
            }
        } else {
            cancel_float(num, den)
        };
        let inv = den.lead().inv().expect("nonzero leading coefficient");
        RatFun { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }

    /// The identity function `x`.
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    /// `1 / (x - a)^m`.
    pub fn pole(a: &F, m: u32) -> Self {
        RatFun { num: Poly::one(), den: Poly::linear_root(a).pow(m) }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `deg num - deg den`, or `None` for zero.
    pub fn order_at_infinity(&self) -> Option<i64> {
        self.num.degree().map(|n| n as i64 - self.den.degree().unwrap_or(0) as i64)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn eval(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        let scale = self.den.coeffs().iter().map(|c| c.abs()).fold(0.0, f64::max) * (1.0 + x.abs()).powi(self.den.degree().unwrap_or(0) as i32);
        if d.is_zero() || (!F::EXACT && d.negligible(scale * 1e5)) {
            return Err(YrkError::Pole(format!("{x}")));
        }
        Ok(self.num.eval(x).div_ref(&d).expect("nonzero"))
    }

    pub fn eval_c64(&self, x: Complex64) -> Result<Complex64> {
        let d = self.den.eval_c64(x);
        if d.norm() == 0.0 {
            return Err(YrkError::Pole(format!("{x}")));
        }
        Ok(self.num.eval_c64(x) / d)
    }

    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::normalize(n, self.den.mul(&self.den))
    }

    /// `f(a x + b)`.
    pub fn compose_affine(&self, a: &F, b: &F) -> Self {
        if self.den.is_constant() {
            return Self::from_poly(self.num.compose_affine(a, b));
        }
        let num = self.num.compose_affine(a, b);
        let den = self.den.compose_affine(a, b);
        let inv = den.lead().inv().expect("nonzero leading coefficient");
        RatFun { num: num.scale(&inv), den: den.scale(&inv) }
    }

    /// `f(x + c)`.
    pub fn shift(&self, c: &F) -> Self {
        self.compose_affine(&F::one(), c)
    }

    /// `f(-x)`.
    pub fn reflect(&self) -> Self {
        self.compose_affine(&F::from_i64(-1), &F::zero())
    }

    pub fn pow(&self, n: u32) -> Self {
        RatFun { num: self.num.pow(n), den: self.den.pow(n) }
    }

    /// Poles with multiplicities. `hints` are tried first as exact candidates.
    pub fn poles(&self, hints: &[F]) -> Result<Vec<(F, usize)>> {
        if self.den.is_constant() {
            return Ok(Vec::new());
        }
        roots::roots(&self.den, hints)
    }

    /// Coefficients `c_k` of `f = sum_k c_k x^{-k}`, `k = 0..=order`.
    pub fn series_at_infinity(&self, order: usize) -> Result<Vec<F>> {
        let dd = self.den.degree().unwrap_or(0);
        if let Some(dn) = self.num.degree() {
            if dn > dd {
                return Err(YrkError::NotRegularAtInfinity);
            }
        } else {
            return Ok(vec![F::zero(); order + 1]);
        }
        let a: Vec<F> = (0..=dd).map(|k| self.num.coeff(dd - k)).collect();
        let b: Vec<F> = (0..=dd).map(|k| self.den.coeff(dd - k)).collect();
        series_quotient(&a, &b, order)
    }

    /// Taylor coefficients of `f(p + w)` in `w`, `k = 0..=order`.
    pub fn taylor_at(&self, p: &F, order: usize) -> Result<Vec<F>> {
        let a = self.num.shift(p);
        let b = self.den.shift(p);
        if b.coeff(0).is_zero() {
            return Err(YrkError::Pole(format!("{p}")));
        }
        series_quotient(a.coeffs(), b.coeffs(), order)
    }

    /// Principal part at `p` for a pole of multiplicity `mult`:
    /// `c[k-1]` is the coefficient of `(x - p)^{-k}`.
    pub fn principal_part(&self, p: &F, mult: usize) -> Result<Vec<F>> {
        if mult == 0 {
            return Ok(Vec::new());
        }
        let a = self.num.shift(p);
        let b = self.den.shift(p);
        if F::EXACT && b.coeffs().iter().take(mult).any(|c| !c.is_zero()) {
            return Err(YrkError::Domain(format!("{p} is not a pole of order {mult}")));
        }
        let b_red: Vec<F> = b.coeffs().iter().skip(mult).cloned().collect();
        let g = series_quotient(a.coeffs(), &b_red, mult - 1)?;
        Ok((1..=mult).map(|k| g[mult - k].clone()).collect())
    }

    pub fn residue_at(&self, p: &F) -> Result<F> {
        let m = self.den.root_multiplicity(p);
        if m == 0 {
            return Ok(F::zero());
        }
        Ok(self.principal_part(p, m)?[0].clone())
    }

    pub fn partial_fractions(&self, hints: &[F]) -> Result<PartialFractions<F>> {
        let (q, _) = self.num.div_rem(&self.den)?;
        let terms = self
            .poles(hints)?
            .into_iter()
            .map(|(p, m)| {
                let c = self.principal_part(&p, m)?;
                Ok((p, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PartialFractions { poly_part: q, terms })
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> RatFun<G> {
        RatFun::normalize(self.num.map(&f), self.den.map(&f))
    }

    pub fn to_c64(&self) -> RatFun<Complex64> {
        RatFun { num: self.num.to_c64(), den: self.den.to_c64() }
    }

    /// Largest evaluation magnitude over sample points, for residual reports.
    pub fn max_abs_at(&self, pts: &[Complex64]) -> f64 {
        pts.iter()
            .filter_map(|&z| self.eval_c64(z).ok())
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

impl<F: Scalar> PartialFractions<F> {
    /// Rebuild the rational function from its parts.
    pub fn recombine(&self) -> RatFun<F> {
        let mut acc = RatFun::from_poly(self.poly_part.clone());
        for (p, c) in &self.terms {
            for (k, ck) in c.iter().enumerate() {
                acc = acc.add_ref(&RatFun::pole(p, k as u32 + 1).scale(ck));
            }
        }
        acc
    }
}

fn cancel_float<F: Scalar>(mut num: Poly<F>, mut den: Poly<F>) -> (Poly<F>, Poly<F>) {
    if num.degree().unwrap_or(0) == 0 || den.degree().unwrap_or(0) == 0 {
        return (num, den);
    }
    let zn = roots::aberth(num.to_c64().coeffs());
    let zd = roots::aberth(den.to_c64().coeffs());
    let mut used = vec![false; zn.len()];
    for d in zd {
        if let Some(k) = (0..zn.len()).find(|&k| !used[k] && (zn[k] - d).norm() <= CANCEL_TOL * (1.0 + d.norm())) {
            used[k] = true;
            let r = match F::from_c64((zn[k] + d) / 2.0) {
                Some(r) => r,
                None => continue,
            };
            let lin = Poly::linear_root(&r);
            num = num.div_rem(&lin).map(|x| x.0).unwrap_or(num);
            den = den.div_rem(&lin).map(|x| x.0).unwrap_or(den);
        }
    }
    (num, den)
}

impl<F: Scalar> Ring for RatFun<F> {
    fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        RatFun { num: Poly::one(), den: Poly::one() }
    }
    fn add_ref(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::normalize(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_constant() {
            return RatFun { num: self.num.mul(&o.den).add(&o.num), den: o.den.clone() };
        }
        if o.den.is_constant() {
            return RatFun { num: o.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        Self::normalize(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_constant() && o.den.is_constant() {
            return RatFun { num: self.num.mul(&o.num), den: Poly::one() };
        }
        Self::normalize(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg_ref(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Scalar> Field for RatFun<F> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize(self.den.clone(), self.num.clone()))
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else if F::EXACT {
            1.0
        } else {
            self.num.coeffs().iter().map(|c| c.abs()).fold(0.0, f64::max).max(1e-300)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    type R = RatFun<GaussRat>;

    fn q(p: i64, d: i64) -> GaussRat {
        GaussRat::from_ratio(p, d)
    }

    #[test]
    fn arithmetic_reduces() {
        let x = R::var();
        let a = R::pole(&q(1, 2), 1);
        let b = x.sub_ref(&R::constant(q(1, 2)));
        assert_eq!(a.mul_ref(&b), R::one());
        let c = a.add_ref(&a.neg_ref());
        assert!(c.is_zero());
    }

    #[test]
    fn series_at_infinity_matches_geometric() {
        // 1/(x - a) = sum a^k x^{-k-1}
        let a = q(3, 7);
        let f = R::pole(&a, 1);
        let s = f.series_at_infinity(5).unwrap();
        assert_eq!(s[0], GaussRat::zero());
        for k in 1..=5 {
            assert_eq!(s[k], a.pow(k as u32 - 1));
        }
        assert!(R::var().series_at_infinity(2).is_err());
    }

    #[test]
    fn partial_fractions_recombine() {
        let p1 = q(13, 10);
        let p2 = GaussRat::from_parts((-2, 1), (1, 1));
        let num = Poly::new(vec![q(1, 1), q(-3, 1), q(0, 1), q(2, 1), q(5, 1)]);
        let den = Poly::from_roots(&[p1.clone(), p1.clone(), p2.clone()]);
        let f = R::new(num, den).unwrap();
        let pf = f.partial_fractions(&[]).unwrap();
        assert_eq!(pf.recombine(), f);
        assert_eq!(pf.terms.len(), 2);
        let r = f.residue_at(&p2).unwrap();
        assert_eq!(pf.terms.iter().find(|(p, _)| *p == p2).unwrap().1[0], r);
    }

    #[test]
    fn derivative_and_taylor() {
        let f = R::pole(&q(1, 1), 2);
        let t = f.taylor_at(&q(0, 1), 3).unwrap();
        // 1/(w-1)^2 = sum (k+1) w^k
        for (k, c) in t.iter().enumerate() {
            assert_eq!(*c, GaussRat::from_i64(k as i64 + 1));
        }
        let d = f.derivative();
        assert_eq!(d, R::pole(&q(1, 1), 3).scale(&GaussRat::from_i64(-2)));
    }

    #[test]
    fn float_cancellation() {
        let x = RatFun::<Complex64>::var();
        let a = Complex64::new(0.3, -1.0);
        let f = RatFun::pole(&a, 1).mul_ref(&x.sub_ref(&RatFun::constant(a)));
        assert!(f.is_polynomial());
        assert!((f.eval(&Complex64::new(2.0, 0.0)).unwrap() - 1.0).norm() < 1e-12);
    }
}
