//! Scalar fields: exact Gaussian rationals and IEEE complex doubles.
//!
//! Every algebraic container in this crate is generic over [`Scalar`], so a
//! computation is either fully exact or fully floating point. Mixing happens
//! only through [`DynScalar`], whose checked operations refuse it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Result, YrkError};

/// Commutative ring operations by reference.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_zero(&self) -> bool;
}

/// A ring in which every nonzero element can be inverted.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul_ref(&i))
    }

    /// Pivot preference for Gaussian elimination. Larger is better; zero
    /// means the element must not be used as a pivot.
    fn pivot_weight(&self) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    /// Backend selected by `YRK_BACKEND` (`exact` unless set to `float`).
    pub fn from_env() -> Backend {
        match std::env::var("YRK_BACKEND").ok().as_deref() {
            Some("float") => Backend::Float,
            _ => Backend::Exact,
        }
    }
}

/// A scalar field usable as coefficients everywhere in the crate.
pub trait Scalar: Field + fmt::Display {
    const EXACT: bool;

    fn backend() -> Backend {
        if Self::EXACT {
            Backend::Exact
        } else {
            Backend::Float
        }
    }
    fn from_i64(n: i64) -> Self;
    fn from_ratio(p: i64, q: i64) -> Self;
    fn from_gauss(g: &GaussRat) -> Self;
    /// Float backend only: wrap a complex double. The exact backend returns `None`.
    fn from_c64(z: Complex64) -> Option<Self>;
    fn to_c64(&self) -> Complex64;
    fn abs(&self) -> f64 {
        self.to_c64().norm()
    }
    /// True when `self` is zero relative to `scale` (exactly zero on the
    /// exact backend).
    fn negligible(&self, scale: f64) -> bool;
    /// Real part embedded back into the field.
    fn re(&self) -> Self;
    fn parse(s: &str) -> Result<Self>;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = r.mul_ref(self);
        }
        r
    }
}

/// Relative threshold under which float coefficients are treated as zero.
pub const FLOAT_EPS: f64 = 1e-13;

// ---------------------------------------------------------------------------
// Gaussian rationals

/// An element of ℚ(i) with arbitrary precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussRat { re: rat(re.0, re.1), im: rat(im.0, im.1) }
    }

    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Best rational approximation of `x` with denominator at most `max_den`.
    pub fn rational_approx(x: f64, max_den: i64) -> Option<BigRational> {
        if !x.is_finite() {
            return None;
        }
        let sign = if x < 0.0 { -1 } else { 1 };
        let mut y = x.abs();
        let (mut h0, mut h1) = (0i128, 1i128);
        let (mut k0, mut k1) = (1i128, 0i128);
        let mut best = None;
        for _ in 0..64 {
            let a = y.floor();
            if a > 1e15 {
                break;
            }
            let ai = a as i128;
            let h2 = ai * h1 + h0;
            let k2 = ai * k1 + k0;
            if k2 > max_den as i128 {
                break;
            }
            best = Some((h2, k2));
            h0 = h1;
            h1 = h2;
            k0 = k1;
            k1 = k2;
            let frac = y - a;
            if frac < 1e-15 {
                break;
            }
            y = 1.0 / frac;
        }
        best.map(|(h, k)| BigRational::new(BigInt::from(sign * h), BigInt::from(k)))
    }

    /// Candidate exact values near a complex double, from successively finer
    /// continued-fraction convergents of both parts.
    pub fn candidates(z: Complex64, tol: f64) -> Vec<GaussRat> {
        let mut out: Vec<GaussRat> = Vec::new();
        for max_den in [1i64, 2, 4, 6, 12, 60, 840, 27720, 10_000_000] {
            let re = Self::rational_approx(z.re, max_den);
            let im = if z.im.abs() < tol { Some(BigRational::zero()) } else { Self::rational_approx(z.im, max_den) };
            if let (Some(re), Some(im)) = (re, im) {
                let g = GaussRat { re, im };
                if (g.to_c64() - z).norm() <= tol.max(1e-9) * (1.0 + z.norm()) * 1e3 && !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Ring for GaussRat {
    fn zero() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn one() -> Self {
        GaussRat { re: BigRational::one(), im: BigRational::zero() }
    }
    fn add_ref(&self, o: &Self) -> Self {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat { re: &self.re * &o.re, im: BigRational::zero() };
        }
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg_ref(&self) -> Self {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Field for GaussRat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussRat { re: self.re.recip(), im: BigRational::zero() });
        }
        let n = self.norm_sqr();
        Some(GaussRat { re: &self.re / &n, im: -(&self.im / &n) })
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

fn rat_to_json(r: &BigRational) -> Value {
    if r.is_integer() {
        Value::String(r.numer().to_string())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

/// Parse a real number given as an integer, `p/q`, or a finite decimal
/// (optionally with exponent) into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || YrkError::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(YrkError::DivisionByZero);
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{}{}", int_part, frac_part);
    let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| err())?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(r)
}

/// Split `a+bi`, `a-bj`, `bi`, `a` into real and imaginary substrings.
fn split_complex(s: &str) -> (String, Option<String>) {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if !(s.ends_with('i') || s.ends_with('j')) {
        return (s, None);
    }
    let body = &s[..s.len() - 1];
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k];
        if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let (re, im) = match split {
        Some(k) => (body[..k].to_string(), body[k..].to_string()),
        None => ("0".to_string(), body.to_string()),
    };
    let im = match im.as_str() {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        _ => im.trim_start_matches('+').to_string(),
    };
    (re, Some(im))
}

impl FromStr for GaussRat {
    type Err = YrkError;
    fn from_str(s: &str) -> Result<Self> {
        let (re, im) = split_complex(s);
        let re = parse_rational(&re)?;
        let im = match im {
            Some(im) => parse_rational(&im)?,
            None => BigRational::zero(),
        };
        Ok(GaussRat { re, im })
    }
}

impl Scalar for GaussRat {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        GaussRat::real(BigRational::from_integer(BigInt::from(n)))
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        GaussRat::real(rat(p, q))
    }
    fn from_gauss(g: &GaussRat) -> Self {
        g.clone()
    }
    fn from_c64(_z: Complex64) -> Option<Self> {
        None
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
    fn abs(&self) -> f64 {
        self.to_c64().norm()
    }
    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
    fn re(&self) -> Self {
        GaussRat::real(self.re.clone())
    }
    fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
    fn to_json(&self) -> Value {
        if self.im.is_zero() {
            rat_to_json(&self.re)
        } else {
            Value::Array(vec![rat_to_json(&self.re), rat_to_json(&self.im)])
        }
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            Value::Number(n) if n.is_i64() => Ok(Self::from_i64(n.as_i64().unwrap_or(0))),
            Value::Array(a) if a.len() == 2 => match (&a[0], &a[1]) {
                (Value::String(r), Value::String(i)) => Ok(GaussRat { re: parse_rational(r)?, im: parse_rational(i)? }),
                _ => Err(YrkError::BackendMismatch),
            },
            Value::Number(_) => Err(YrkError::BackendMismatch),
            _ => Err(YrkError::Schema(format!("expected an exact scalar, found {v}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// Complex doubles

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Field for Complex64 {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        Complex64::new(p as f64 / q as f64, 0.0)
    }
    fn from_gauss(g: &GaussRat) -> Self {
        g.to_c64()
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        Some(z)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn negligible(&self, scale: f64) -> bool {
        self.norm() <= FLOAT_EPS * scale.max(f64::MIN_POSITIVE)
    }
    fn re(&self) -> Self {
        Complex64::new(self.re, 0.0)
    }
    fn parse(s: &str) -> Result<Self> {
        let (re, im) = split_complex(s);
        let p = |t: &str| -> Result<f64> {
            t.parse::<f64>().or_else(|_| parse_rational(t).map(|r| r.to_f64().unwrap_or(f64::NAN)))
        };
        Ok(Complex64::new(p(&re)?, match im {
            Some(im) => p(&im)?,
            None => 0.0,
        }))
    }
    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
            Value::Array(a) if a.len() == 2 => match (a[0].as_f64(), a[1].as_f64()) {
                (Some(r), Some(i)) => Ok(Complex64::new(r, i)),
                _ => Err(YrkError::BackendMismatch),
            },
            Value::String(_) => Err(YrkError::BackendMismatch),
            _ => Err(YrkError::Schema(format!("expected a float scalar, found {v}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// Runtime-tagged scalars for the serialization boundary

/// A scalar whose backend is only known at runtime. Arithmetic across
/// backends is rejected with [`YrkError::BackendMismatch`].
#[derive(Debug, Clone, PartialEq)]
pub enum DynScalar {
    Exact(GaussRat),
    Float(Complex64),
}

macro_rules! dyn_binop {
    ($name:ident, $op:ident) => {
        pub fn $name(&self, o: &DynScalar) -> Result<DynScalar> {
            match (self, o) {
                (DynScalar::Exact(a), DynScalar::Exact(b)) => Ok(DynScalar::Exact(a.$op(b))),
                (DynScalar::Float(a), DynScalar::Float(b)) => Ok(DynScalar::Float(a.$op(b))),
                _ => Err(YrkError::BackendMismatch),
            }
        }
    };
}

impl DynScalar {
    dyn_binop!(checked_add, add_ref);
    dyn_binop!(checked_sub, sub_ref);
    dyn_binop!(checked_mul, mul_ref);

    pub fn checked_div(&self, o: &DynScalar) -> Result<DynScalar> {
        match (self, o) {
            (DynScalar::Exact(a), DynScalar::Exact(b)) => a.div_ref(b).map(DynScalar::Exact).ok_or(YrkError::DivisionByZero),
            (DynScalar::Float(a), DynScalar::Float(b)) => a.div_ref(b).map(DynScalar::Float).ok_or(YrkError::DivisionByZero),
            _ => Err(YrkError::BackendMismatch),
        }
    }

    pub fn backend(&self) -> Backend {
        match self {
            DynScalar::Exact(_) => Backend::Exact,
            DynScalar::Float(_) => Backend::Float,
        }
    }

    pub fn parse(s: &str, backend: Backend) -> Result<DynScalar> {
        Ok(match backend {
            Backend::Exact => DynScalar::Exact(s.parse()?),
            Backend::Float => DynScalar::Float(<Complex64 as Scalar>::parse(s)?),
        })
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            DynScalar::Exact(g) => g.to_c64(),
            DynScalar::Float(z) => *z,
        }
    }

    /// Extract a statically typed scalar, refusing a backend change.
    pub fn get<F: Scalar>(&self) -> Result<F> {
        match self {
            DynScalar::Exact(g) if F::EXACT => Ok(F::from_gauss(g)),
            DynScalar::Float(z) if !F::EXACT => F::from_c64(*z).ok_or(YrkError::BackendMismatch),
            _ => Err(YrkError::BackendMismatch),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parses_exactly() {
        let g: GaussRat = "1.3".parse().unwrap();
        assert_eq!(g, GaussRat::from_ratio(13, 10));
        let g: GaussRat = "-2+i".parse().unwrap();
        assert_eq!(g, GaussRat::from_parts((-2, 1), (1, 1)));
        let g: GaussRat = "0.5-1.25j".parse().unwrap();
        assert_eq!(g, GaussRat::from_parts((1, 2), (-5, 4)));
        let g: GaussRat = "-i".parse().unwrap();
        assert_eq!(g, GaussRat::from_parts((0, 1), (-1, 1)));
        let g: GaussRat = "3/7".parse().unwrap();
        assert_eq!(g, GaussRat::from_ratio(3, 7));
        let g: GaussRat = "2.5e-1".parse().unwrap();
        assert_eq!(g, GaussRat::from_ratio(1, 4));
    }

    #[test]
    fn gauss_division_roundtrip() {
        let a = GaussRat::from_parts((3, 2), (-7, 5));
        let b = GaussRat::from_parts((-1, 3), (2, 1));
        let q = a.div_ref(&b).unwrap();
        assert_eq!(q.mul_ref(&b), a);
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn json_roundtrip() {
        let a = GaussRat::from_parts((3, 2), (-7, 5));
        assert_eq!(GaussRat::from_json(&a.to_json()).unwrap(), a);
        let z = Complex64::new(0.25, -3.0);
        assert_eq!(Complex64::from_json(&z.to_json()).unwrap(), z);
        assert_eq!(GaussRat::from_json(&z.to_json()), Err(YrkError::BackendMismatch));
    }

    #[test]
    fn dyn_scalars_refuse_mixing() {
        let a = DynScalar::parse("1.5", Backend::Exact).unwrap();
        let b = DynScalar::parse("1.5", Backend::Float).unwrap();
        assert_eq!(a.checked_add(&b), Err(YrkError::BackendMismatch));
        let c = a.checked_mul(&a).unwrap();
        assert_eq!(c, DynScalar::Exact(GaussRat::from_ratio(9, 4)));
        assert_eq!(b.checked_div(&b).unwrap(), DynScalar::Float(Complex64::new(1.0, 0.0)));
        assert_eq!(a.get::<Complex64>(), Err(YrkError::BackendMismatch));
        assert_eq!(b.get::<Complex64>().unwrap(), Complex64::new(1.5, 0.0));
    }

    #[test]
    fn rational_recognition() {
        let cands = GaussRat::candidates(Complex64::new(-2.1, 1.0 / 3.0), 1e-12);
        assert!(cands.contains(&GaussRat::from_parts((-21, 10), (1, 3))));
    }
}
