//! The abelian factor `R⁰_{V₁,V₂}(s)`.
//!
//! `A(s)` is computed on a joint eigenbasis of the commuting fields `ξ_i(u)`,
//! where it acts diagonally by rational functions. The regularized products
//! `R^{0,↑}(s) = Π_{n≥0} A(s + nℓħ)^{-1}` and `R^{0,↓}(s) = Π_{n≥1} A(s - nℓħ)`
//! are evaluated numerically with an Euler-Maclaurin tail, and the formal
//! solution of `R⁰(s + ℓħ) = A(s) R⁰(s)` is available as a series in `s^{-1}`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::cartan::CartanData;
use crate::drinfeld::drinfeld_tensor_at;
use crate::eigen::joint_eigenbasis;
use crate::error::{Result, YrkError};
use crate::matrix::{embed_pair, flip_conj, flip_matrix, Mat, RatMat};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::repn::Representation;
use crate::roots::{roots, same_point, POLE_CLUSTER_TOL};
use crate::scalar::{Ring, Scalar};
use crate::series::PowerSeries;
use crate::tensor::check_compatible;

/// Hard cap on the number of factors taken directly.
pub const MAX_FACTORS: usize = 100_000;

/// `B_2, B_4, ..., B_10`.
const BERNOULLI: [f64; 5] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0];

/// Zeros and poles of a rational function `Π (x - z)^m / Π (x - p)^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Divisor<F: Scalar> {
    pub zeros: Vec<(F, usize)>,
    pub poles: Vec<(F, usize)>,
}

impl<F: Scalar> Divisor<F> {
    fn from_points(points: Vec<(F, i64)>) -> Self {
        let mut net: Vec<(F, i64)> = Vec::new();
        for (p, m) in points {
            match net.iter_mut().find(|(q, _)| same_point(q, &p)) {
                Some(e) => e.1 += m,
                None => net.push((p, m)),
            }
        }
        let zeros = net.iter().filter(|e| e.1 > 0).map(|(p, m)| (p.clone(), *m as usize)).collect();
        let poles = net.iter().filter(|e| e.1 < 0).map(|(p, m)| (p.clone(), (-m) as usize)).collect();
        Divisor { zeros, poles }
    }

    fn flat(pts: &[(F, usize)]) -> Vec<F> {
        pts.iter().flat_map(|(p, m)| std::iter::repeat_n(p.clone(), *m)).collect()
    }

    pub fn ratfun(&self) -> RatFun<F> {
        RatFun::new(Poly::from_roots(&Self::flat(&self.zeros)), Poly::from_roots(&Self::flat(&self.poles)))
            .expect("nonzero denominator")
    }

    fn to_c64(&self) -> (Vec<(Complex64, f64)>, Vec<(Complex64, f64)>) {
        let f = |v: &[(F, usize)]| v.iter().map(|(p, m)| (p.to_c64(), *m as f64)).collect();
        (f(&self.zeros), f(&self.poles))
    }
}

/// Joint eigenbasis of the `ξ_i(u)` and, per column and node, the divisor
/// of the eigenvalue of `ξ_i(u)` in `u`.
#[derive(Debug, Clone)]
pub struct XiSpectrum<F: Scalar> {
    pub basis: Mat<F>,
    pub divisors: Vec<Vec<Divisor<F>>>,
}

/// Diagonalize all `ξ_i(u)` simultaneously.
pub fn xi_spectrum<F: Scalar>(v: &Representation<F>) -> Result<XiSpectrum<F>> {
    let n = v.dim();
    let mut mats = Vec::new();
    for i in 0..v.rank() {
        mats.extend(v.modes(i, 2 * n + 1).xi);
    }
    let hints = v.pole_hints();
    let je = joint_eigenbasis(&mats, &hints)?;
    let p = je.basis;
    let pts = crate::rminus::residual_points(17, 10.0 * v.hbar().abs() + 1.0);
    let mut divisors = Vec::with_capacity(n);
    for k in 0..n {
        let col: Vec<F> = (0..n).map(|r| p[(r, k)].clone()).collect();
        let lead = (0..n).max_by(|&a, &b| col[a].abs().total_cmp(&col[b].abs())).expect("nonempty");
        let mut per_node = Vec::with_capacity(v.rank());
        for i in 0..v.rank() {
            let xi = &v.currents(i)?.xi;
            let image: Vec<RatFun<F>> = (0..n)
                .map(|r| {
                    (0..n).fold(RatFun::zero(), |acc, j| {
                        if col[j].is_zero() {
                            acc
                        } else {
                            acc.add_ref(&xi[(r, j)].scale(&col[j]))
                        }
                    })
                })
                .collect();
            let inv = col[lead].inv().ok_or(YrkError::DivisionByZero)?;
            let f = image[lead].scale(&inv);
            for r in 0..n {
                let d = image[r].sub_ref(&RatFun::constant(col[r].clone()).mul_ref(&f));
                let bad = if F::EXACT { !d.is_zero() } else { d.max_abs_at(&pts) > 1e-7 };
                if bad {
                    return Err(YrkError::NotDiagonalizable(format!("ξ_{i}(u) is not diagonal on eigenvector {k}")));
                }
            }
            let mut zeros = if f.num().is_constant() { Vec::new() } else { roots(f.num(), &hints)? };
            let mut poles = f.poles(&hints)?;
            if !F::EXACT {
                let ev = XiEvaluator::new(v, i);
                let eig = |u: Complex64| -> Result<Complex64> {
                    let x = ev.eval(u)?;
                    let y = (0..n).fold(Complex64::new(0.0, 0.0), |acc, j| acc + x[(lead, j)] * col[j].to_c64());
                    Ok(y / col[lead].to_c64())
                };
                for (z, m) in zeros.iter_mut() {
                    *z = polish_root(|u| eig(u), z, *m)?;
                }
                for (p, m) in poles.iter_mut() {
                    *p = polish_root(|u| eig(u).map(|w| 1.0 / w), p, *m)?;
                }
                if cancel_near(&mut zeros, &mut poles) {
                    for (z, m) in zeros.iter_mut() {
                        *z = polish_root(|u| eig(u), z, *m)?;
                    }
                    for (p, m) in poles.iter_mut() {
                        *p = polish_root(|u| eig(u).map(|w| 1.0 / w), p, *m)?;
                    }
                }
            }
            per_node.push(Divisor { zeros, poles });
        }
        divisors.push(per_node);
    }
    Ok(XiSpectrum { basis: p, divisors })
}

/// Net float zero and pole clusters closer than [`CANCEL_TOL`]; returns
/// whether anything changed. The surviving cluster keeps its position.
fn cancel_near<F: Scalar>(zeros: &mut Vec<(F, usize)>, poles: &mut Vec<(F, usize)>) -> bool {
    let mut changed = false;
    for z in zeros.iter_mut() {
        for p in poles.iter_mut() {
            if z.1 == 0 || p.1 == 0 || z.0.sub_ref(&p.0).abs() > CANCEL_TOL * (1.0 + z.0.abs()) {
                continue;
            }
            let k = z.1.min(p.1);
            z.1 -= k;
            p.1 -= k;
            changed = true;
        }
    }
    zeros.retain(|e| e.1 > 0);
    poles.retain(|e| e.1 > 0);
    changed
}

/// Distance below which a float zero and pole of a `ξ` eigenvalue are treated as cancelling.
pub const CANCEL_TOL: f64 = 1e-3;

/// `ξ_i(u)` at complex points, via `x^+_i(u) = ħ (u - L)^{-1} x^+_{i,0}` with
/// `L = ad(t_{i,1})/2d_i` restricted to an orthonormal Krylov basis of `x^+_{i,0}`.
pub struct XiEvaluator {
    n: usize,
    q: Vec<Vec<Complex64>>,
    h: Mat<Complex64>,
    x0: Vec<Complex64>,
    xm0: Mat<Complex64>,
    hbar: Complex64,
}

impl XiEvaluator {
    pub fn new<F: Scalar>(v: &Representation<F>, i: usize) -> Self {
        let n = v.dim();
        let t = v.t1()[i].to_c64();
        let c = Complex64::new(1.0 / (2 * v.cartan().d(i)) as f64, 0.0);
        let apply = |x: &[Complex64]| -> Vec<Complex64> {
            let m = Mat::new(n, n, x.to_vec());
            t.commutator(&m).scale(&c).data().to_vec()
        };
        let dot = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>();
        let norm = |a: &[Complex64]| dot(a, a).re.sqrt();
        let x0: Vec<Complex64> = v.xp0()[i].to_c64().data().to_vec();
        let mut q: Vec<Vec<Complex64>> = Vec::new();
        let scale = norm(&x0);
        if scale > 0.0 {
            q.push(x0.iter().map(|z| z / scale).collect());
            loop {
                let mut w = apply(q.last().expect("nonempty"));
                let wn = norm(&w);
                for _ in 0..2 {
                    for b in &q {
                        let p = dot(b, &w);
                        w.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
                    }
                }
                let r = norm(&w);
                if r <= 1e-10 * wn.max(1.0) || q.len() == n * n {
                    break;
                }
                q.push(w.iter().map(|z| z / r).collect());
            }
        }
        let k = q.len();
        let lq: Vec<Vec<Complex64>> = q.iter().map(|b| apply(b)).collect();
        let h = Mat::from_fn(k, k, |a, b| dot(&q[a], &lq[b]));
        XiEvaluator { n, q, h, x0, xm0: v.xm0()[i].to_c64(), hbar: v.hbar().to_c64() }
    }

    pub fn eval(&self, u: Complex64) -> Result<Mat<Complex64>> {
        let (n, k) = (self.n, self.q.len());
        let id = Mat::<Complex64>::identity(n);
        if k == 0 {
            return Ok(id);
        }
        let rhs = Mat::from_fn(k, 1, |a, _| self.q[a].iter().zip(&self.x0).map(|(x, y)| x.conj() * y).sum());
        let y = Mat::<Complex64>::identity(k)
            .scale(&u)
            .sub(&self.h)
            .solve(&rhs)
            .map_err(|_| YrkError::Pole(format!("ξ(u) has a pole at u = {u}")))?;
        let xp = Mat::from_fn(n, n, |r, c| (0..k).map(|a| self.q[a][r * n + c] * y[(a, 0)]).sum::<Complex64>() * self.hbar);
        Ok(id.add(&xp.commutator(&self.xm0)))
    }
}

/// Newton refinement of a root of multiplicity `m` of `f`.
fn polish_root<F: Scalar>(f: impl Fn(Complex64) -> Result<Complex64>, z0: &F, m: usize) -> Result<F> {
    let mut z = z0.to_c64();
    for _ in 0..30 {
        let h = 1e-5 * (1.0 + z.norm());
        let fz = match f(z) {
            Ok(w) => w,
            Err(_) => {
                // Exactly singular at `z`: step just off it.
                z += 1e-9 * (1.0 + z.norm());
                match f(z) {
                    Ok(w) => w,
                    Err(_) => break,
                }
            }
        };
        let (Ok(fa), Ok(fb)) = (f(z + h), f(z - h)) else { break };
        let d = (fa - fb) / (2.0 * h);
        if d.norm() == 0.0 || !fz.is_finite() {
            break;
        }
        let step = fz / d * m as f64;
        if !step.is_finite() || step.norm() > 1e-4 * (1.0 + z.norm()) {
            break;
        }
        z -= step;
        if step.norm() < 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    Ok(F::from_c64(z).unwrap_or_else(|| z0.clone()))
}

/// `A(s)` in diagonal form: `A = P diag(a_k) P^{-1}` on `V₁ ⊗ V₂`.
#[derive(Debug, Clone)]
pub struct AbelianA<F: Scalar> {
    pub basis: Mat<F>,
    pub basis_inv: Mat<F>,
    pub eigen: Vec<Divisor<F>>,
    /// `ℓħ`, the step of the difference equation.
    pub step: F,
    pub dims: (usize, usize),
}

/// Which regularized product to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "up" => Ok(Direction::Up),
            "down" => Ok(Direction::Down),
            _ => Err(YrkError::Parse(format!("direction must be up or down, found {s}"))),
        }
    }
}

/// A numerically evaluated product with its truncation data.
#[derive(Debug, Clone)]
pub struct ProductValue {
    pub matrix: Mat<Complex64>,
    /// Factors taken directly before the tail correction.
    pub factors: usize,
    /// Estimated size of the neglected Euler-Maclaurin remainder.
    pub tail_estimate: f64,
}

/// Build `A(s)` for `V₁ ⊗ V₂`.
pub fn abelian_a<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>) -> Result<AbelianA<F>> {
    check_compatible(v1, v2)?;
    let c = v1.cartan().clone();
    let ell = c.ell();
    let hbar = v1.hbar().clone();
    let coupling = c.q_coupling()?;
    let sp1 = xi_spectrum(v1)?;
    let sp2 = xi_spectrum(v2)?;
    let mut eigen = Vec::with_capacity(v1.dim() * v2.dim());
    for e1 in &sp1.divisors {
        for e2 in &sp2.divisors {
            let mut pts: Vec<(F, i64)> = Vec::new();
            for (i, f) in e1.iter().enumerate() {
                for (j, g) in e2.iter().enumerate() {
                    for (r, cf) in coupling[i][j].terms() {
                        let cr = F::from_ratio(ell + r, 2).mul_ref(&hbar);
                        // Poles b of f contribute g(s + b + c_r), zeros a contribute 1/g(s + a + c_r).
                        for (b, mb) in &f.poles {
                            let off = b.add_ref(&cr);
                            for (z, mz) in &g.zeros {
                                pts.push((z.sub_ref(&off), cf * (mb * mz) as i64));
                            }
                            for (p, mp) in &g.poles {
                                pts.push((p.sub_ref(&off), -cf * (mb * mp) as i64));
                            }
                        }
                        for (a, ma) in &f.zeros {
                            let off = a.add_ref(&cr);
                            for (z, mz) in &g.zeros {
                                pts.push((z.sub_ref(&off), -cf * (ma * mz) as i64));
                            }
                            for (p, mp) in &g.poles {
                                pts.push((p.sub_ref(&off), cf * (ma * mp) as i64));
                            }
                        }
                    }
                }
            }
            eigen.push(Divisor::from_points(pts));
        }
    }
    let basis = sp1.basis.kron(&sp2.basis);
    let basis_inv = sp1.basis.inverse()?.kron(&sp2.basis.inverse()?);
    Ok(AbelianA { basis, basis_inv, eigen, step: F::from_i64(ell).mul_ref(&hbar), dims: (v1.dim(), v2.dim()) })
}

fn conjugate_diag<T: Ring>(p: &Mat<T>, d: &[T], pinv: &Mat<T>) -> Mat<T> {
    let n = d.len();
    Mat::from_fn(n, n, |i, j| {
        (0..n).fold(T::zero(), |acc, k| {
            if p[(i, k)].is_zero() || pinv[(k, j)].is_zero() {
                acc
            } else {
                acc.add_ref(&p[(i, k)].mul_ref(&d[k]).mul_ref(&pinv[(k, j)]))
            }
        })
    })
}

fn eval_divisor(zeros: &[(Complex64, f64)], poles: &[(Complex64, f64)], x: Complex64) -> Result<Complex64> {
    let mut v = Complex64::new(1.0, 0.0);
    for &(z, m) in zeros {
        if (x - z).norm() <= POLE_CLUSTER_TOL * (1.0 + z.norm()) {
            return Err(YrkError::Pole(format!("A has a zero at {z}")));
        }
        v *= (x - z).powf(m);
    }
    for &(p, m) in poles {
        if (x - p).norm() <= POLE_CLUSTER_TOL * (1.0 + p.norm()) {
            return Err(YrkError::Pole(format!("A has a pole at {p}")));
        }
        v /= (x - p).powf(m);
    }
    Ok(v)
}

/// `Σ_{n≥N} [Σ m_z log(n + y_z) - Σ m_p log(n + y_p)]` by Euler-Maclaurin,
/// with the size of the first omitted correction.
fn log_tail(yz: &[(Complex64, f64)], yp: &[(Complex64, f64)], n0: usize) -> (Complex64, f64) {
    let n = n0 as f64;
    let fsum = |f: &dyn Fn(Complex64) -> Complex64| -> Complex64 {
        yz.iter().map(|&(y, m)| f(n + y) * m).sum::<Complex64>() - yp.iter().map(|&(y, m)| f(n + y) * m).sum::<Complex64>()
    };
    let integral = -fsum(&|x| x * x.ln() - x);
    let phi = fsum(&|x| x.ln());
    let deriv = |j: i32| {
        let fact: f64 = (1..j).map(f64::from).product();
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        fsum(&|x| x.powi(-j)) * (sign * fact)
    };
    let mut total = integral + phi * 0.5;
    let mut fact = 1.0;
    for (k, b) in BERNOULLI.iter().enumerate().take(4) {
        let two_k = 2 * (k + 1);
        fact *= ((two_k - 1) * two_k) as f64;
        total -= deriv(two_k as i32 - 1) * (b / fact);
    }
    let last = BERNOULLI[4] / (1..=10).map(f64::from).product::<f64>();
    (total, (deriv(9) * last).norm())
}

impl<F: Scalar> AbelianA<F> {
    pub fn dim(&self) -> usize {
        self.eigen.len()
    }

    /// Eigenvalue `a_k(s)` on the `k`-th joint eigenvector.
    pub fn eigenvalue(&self, k: usize) -> RatFun<F> {
        self.eigen[k].ratfun()
    }

    /// `A(s)` as a rational matrix in the original basis.
    pub fn matrix(&self) -> RatMat<F> {
        let p = self.basis.map(|x| RatFun::constant(x.clone()));
        let pinv = self.basis_inv.map(|x| RatFun::constant(x.clone()));
        let d: Vec<RatFun<F>> = (0..self.dim()).map(|k| self.eigenvalue(k)).collect();
        conjugate_diag(&p, &d, &pinv)
    }

    fn assemble(&self, d: &[Complex64]) -> Mat<Complex64> {
        conjugate_diag(&self.basis.to_c64(), d, &self.basis_inv.to_c64())
    }

    /// `A(s)` at a complex point.
    pub fn eval_c64(&self, s: Complex64) -> Result<Mat<Complex64>> {
        let d = self
            .eigen
            .iter()
            .map(|e| {
                let (z, p) = e.to_c64();
                eval_divisor(&z, &p, s)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.assemble(&d))
    }

    /// Eigenvalues of the regularized product in `direction` at `s`.
    pub fn product_eigenvalues(&self, s: Complex64, direction: Direction, tol: f64) -> Result<(Vec<Complex64>, usize, f64)> {
        let step = self.step.to_c64();
        let mut vals = Vec::with_capacity(self.dim());
        let mut used = 0;
        let mut worst: f64 = 0.0;
        for e in &self.eigen {
            let (z, p) = e.to_c64();
            let mz: f64 = z.iter().map(|e| e.1).sum();
            let mp: f64 = p.iter().map(|e| e.1).sum();
            let fz: Complex64 = z.iter().map(|e| e.0 * e.1).sum();
            let fp: Complex64 = p.iter().map(|e| e.0 * e.1).sum();
            if (mz - mp).abs() > 0.5 || (fz - fp).norm() > 1e-9 * (1.0 + fz.norm()) {
                return Err(YrkError::Domain("A(s) is not 1 + O(s^-2) on an eigenvector".into()));
            }
            // n-th factor argument is s + nL (up) or s - nL (down); n + y is the scaled distance.
            let sign = if direction == Direction::Up { 1.0 } else { -1.0 };
            let y = |pts: &[(Complex64, f64)]| -> Vec<(Complex64, f64)> {
                pts.iter().map(|&(q, m)| (sign * (s - q) / step, m)).collect()
            };
            let (yz, yp) = (y(&z), y(&p));
            let ymax = yz.iter().chain(&yp).map(|e| e.0.norm()).fold(0.0, f64::max);
            let mut n0 = (4.0 * ymax).ceil() as usize + 16;
            let (tail, err) = loop {
                let (t, err) = log_tail(&yz, &yp, n0);
                if err <= 0.01 * tol || 2 * n0 > MAX_FACTORS {
                    break (t, err);
                }
                n0 *= 2;
            };
            let start = if direction == Direction::Up { 0 } else { 1 };
            let mut direct = Complex64::new(1.0, 0.0);
            for n in start..n0 {
                let x = s + step * (sign * n as f64);
                direct *= eval_divisor(&z, &p, x)?;
            }
            let v = match direction {
                Direction::Up => (-tail).exp() / direct,
                Direction::Down => tail.exp() * direct,
            };
            vals.push(v);
            used = used.max(n0);
            worst = worst.max(err);
        }
        Ok((vals, used, worst))
    }

    /// `R^{0,↑}(s)` or `R^{0,↓}(s)` at a complex point.
    pub fn product(&self, s: Complex64, direction: Direction, tol: f64) -> Result<ProductValue> {
        let (vals, factors, tail_estimate) = self.product_eigenvalues(s, direction, tol)?;
        Ok(ProductValue { matrix: self.assemble(&vals), factors, tail_estimate })
    }

    /// Monodromy `η⁰(s) = R^{0,↑}(s)^{-1} R^{0,↓}(s)`.
    pub fn eta(&self, s: Complex64, tol: f64) -> Result<Mat<Complex64>> {
        let (up, _, _) = self.product_eigenvalues(s, Direction::Up, tol)?;
        let (down, _, _) = self.product_eigenvalues(s, Direction::Down, tol)?;
        let d: Vec<Complex64> = down.iter().zip(&up).map(|(d, u)| d / u).collect();
        Ok(self.assemble(&d))
    }
}

/// Coefficients `g_k` of the asymptotic solution `g(x) = Σ_k g_k x^{-k-1}`
/// of `g(x + 1) - g(x) = -x^{-2}`, for `k < count`.
pub fn g_series<F: Scalar>(count: usize) -> Vec<F> {
    let mut g: Vec<F> = Vec::with_capacity(count);
    for p in 1..=count {
        let mut acc = if p == 1 { F::one() } else { F::zero() };
        for (k, gk) in g.iter().enumerate().take(p - 1) {
            acc = acc.add_ref(&gk.mul_ref(&F::from_i64(gen_binom(-(k as i64) - 1, p - k))));
        }
        g.push(acc.div_ref(&F::from_i64(p as i64)).expect("p > 0"));
    }
    g
}

fn gen_binom(n: i64, k: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 0..k as i64 {
        num *= (n - j) as i128;
        den *= (j + 1) as i128;
    }
    (num / den) as i64
}

fn factorial<F: Scalar>(k: usize) -> F {
    (1..=k as i64).fold(F::one(), |acc, j| acc.mul_ref(&F::from_i64(j)))
}

/// `G(s) = g(s / ℓħ)` as a scalar series through `s^{-order}`.
fn g_scaled<F: Scalar>(c: &CartanData, hbar: &F, order: usize) -> PowerSeries<F> {
    let lh = F::from_i64(c.ell()).mul_ref(hbar);
    let g = g_series::<F>(order);
    let mut coeffs = vec![F::zero(); order + 1];
    for (k, gk) in g.iter().enumerate() {
        if k < order {
            coeffs[k + 1] = gk.mul_ref(&lh.pow(k as u32 + 1));
        }
    }
    PowerSeries::scalar(coeffs)
}

/// The formal solution `R⁰(s)` through `s^{-order}`, from
/// `log R⁰ = ℓ^{-2} Σ_{ij,r} c_ij^{(r)} Σ_{n,m} (-1)^m/(n! m!) t_{i,n} ⊗ t_{j,m} · (∂^{n+m} G)(s + (ℓ+r)ħ/2)`.
pub fn rzero_series<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>, order: usize) -> Result<PowerSeries<F>> {
    check_compatible(v1, v2)?;
    let c = v1.cartan().clone();
    let hbar = v1.hbar().clone();
    let ell = c.ell();
    let coupling = c.q_coupling()?;
    let dim = v1.dim() * v2.dim();
    let t1: Vec<Vec<Mat<F>>> = (0..c.rank()).map(|i| v1.t_modes(i, order.max(1))).collect::<Result<_>>()?;
    let t2: Vec<Vec<Mat<F>>> = (0..c.rank()).map(|i| v2.t_modes(i, order.max(1))).collect::<Result<_>>()?;
    let g = g_scaled(&c, &hbar, order);
    let mut derivs = vec![g];
    for _ in 1..order {
        let next = derivs.last().expect("nonempty").derivative();
        derivs.push(next);
    }
    let mut shifted: BTreeMap<(i64, usize), PowerSeries<F>> = BTreeMap::new();
    let inv_l2 = F::from_ratio(1, ell * ell);
    let mut log = PowerSeries::zero(dim, dim, order);
    let mut coeffs: Vec<Mat<F>> = log.coeffs().to_vec();
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            for (r, cf) in coupling[i][j].terms() {
                for p in 0..order {
                    let sp = shifted
                        .entry((r, p))
                        .or_insert_with(|| derivs[p].shift(&F::from_ratio(ell + r, 2).mul_ref(&hbar)))
                        .clone();
                    for n in 0..=p {
                        let m = p - n;
                        let sign = if m % 2 == 0 { 1 } else { -1 };
                        let w = F::from_i64(sign * cf).mul_ref(&inv_l2).div_ref(&factorial::<F>(n).mul_ref(&factorial::<F>(m))).expect("nonzero");
                        let op = t1[i][n].kron(&t2[j][m]);
                        if op.is_zero() {
                            continue;
                        }
                        for (k, ck) in coeffs.iter_mut().enumerate() {
                            let s = &sp.coeff(k)[(0, 0)];
                            if !s.is_zero() {
                                *ck = ck.add(&op.scale(&s.mul_ref(&w)));
                            }
                        }
                    }
                }
            }
        }
    }
    log = PowerSeries::new(coeffs);
    log.exp()
}

/// `R^{0,ε}_{V₁,V₂}(s)` in one call.
pub fn rzero_updown<F: Scalar>(
    v1: &Representation<F>,
    v2: &Representation<F>,
    s: Complex64,
    direction: Direction,
    tol: f64,
) -> Result<Mat<Complex64>> {
    Ok(abelian_a(v1, v2)?.product(s, direction, tol)?.matrix)
}

pub(crate) fn sup_diff(a: &Mat<Complex64>, b: &Mat<Complex64>) -> f64 {
    a.sub(b).max_abs()
}

/// `‖R(s + ℓħ) - A(s) R(s)‖`.
pub fn difference_residual<F: Scalar>(a: &AbelianA<F>, s: Complex64, direction: Direction, tol: f64) -> Result<f64> {
    let r0 = a.product(s, direction, tol)?.matrix;
    let r1 = a.product(s + a.step.to_c64(), direction, tol)?.matrix;
    Ok(sup_diff(&r1, &a.eval_c64(s)?.mul(&r0)))
}

/// `‖flip ∘ R^{0,↑}_{V₁,V₂}(-s) ∘ flip - R^{0,↓}_{V₂,V₁}(s)^{-1}‖`.
pub fn unitarity_residual<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>, s: Complex64, tol: f64) -> Result<f64> {
    let up = rzero_updown(v1, v2, -s, Direction::Up, tol)?;
    let down = rzero_updown(v2, v1, s, Direction::Down, tol)?;
    Ok(sup_diff(&flip_conj(&up, v1.dim(), v2.dim()), &down.inverse()?))
}

/// Residuals of `R_{V₁⊗ᴰ_{s₁}V₂,V₃}(s₂) = R_{13}(s₁+s₂) R_{23}(s₂)` and
/// `R_{V₁,V₂⊗ᴰ_{s₂}V₃}(s₁+s₂) = R_{13}(s₁+s₂) R_{12}(s₁)` for the abelian factor.
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
    let r = |a: &Representation<F>, b: &Representation<F>, s: &F| rzero_updown(a, b, s.to_c64(), direction, tol);
    let r13 = embed_pair(&r(v1, v3, &s12)?, &dims, 0, 2);
    let r23 = embed_pair(&r(v2, v3, s2)?, &dims, 1, 2);
    let r12 = embed_pair(&r(v1, v2, s1)?, &dims, 0, 1);
    let lhs1 = r(&drinfeld_tensor_at(v1, v2, s1)?, v3, s2)?;
    let lhs2 = r(v1, &drinfeld_tensor_at(v2, v3, s2)?, &s12)?;
    Ok((sup_diff(&lhs1, &r13.mul(&r23)), sup_diff(&lhs2, &r13.mul(&r12))))
}

/// Zero-mode generators `ξ_{i,0}, x^±_{i,0}, t_{i,1}` of a module as complex matrices.
pub(crate) fn generators_c64<F: Scalar>(v: &Representation<F>) -> Vec<(String, Mat<Complex64>)> {
    let mut out = Vec::new();
    for i in 0..v.rank() {
        out.push((format!("xi0[{i}]"), v.xi0()[i].to_c64()));
        out.push((format!("xp0[{i}]"), v.xp0()[i].to_c64()));
        out.push((format!("xm0[{i}]"), v.xm0()[i].to_c64()));
        out.push((format!("t1[{i}]"), v.t1()[i].to_c64()));
    }
    out
}

/// Largest residual of `X π_a(x) - π_b(x) X` over the zero-mode generators.
pub(crate) fn morphism_residual<F: Scalar>(x: &Mat<Complex64>, a: &Representation<F>, b: &Representation<F>) -> f64 {
    generators_c64(a)
        .iter()
        .zip(generators_c64(b))
        .map(|((_, ga), (_, gb))| sup_diff(&x.mul(ga), &gb.mul(x)))
        .fold(0.0, f64::max)
}

/// `flip ∘ R^{0,ε}(s)` as a map `V₁(s) ⊗ᴰ₀ V₂ → V₂ ⊗ᴰ₀ V₁(s)`: residual of the
/// morphism property on zero-mode generators.
pub fn intertwine_residual<F: Scalar>(v1: &Representation<F>, v2: &Representation<F>, s: &F, direction: Direction, tol: f64) -> Result<f64> {
    let r = rzero_updown(v1, v2, s.to_c64(), direction, tol)?;
    let x = flip_matrix::<Complex64>(v1.dim(), v2.dim()).mul(&r);
    let src = drinfeld_tensor_at(v1, v2, s)?;
    let dst = drinfeld_tensor_at(v2, &v1.shift(s), &F::zero())?;
    Ok(morphism_residual(&x, &src, &dst))
}

/// `|R^{0,ε}(s) - Σ_{j≤k} R⁰_j s^{-j}|` for `k = 0..=kmax`.
pub fn asymptotic_errors<F: Scalar>(
    v1: &Representation<F>,
    v2: &Representation<F>,
    s: Complex64,
    direction: Direction,
    kmax: usize,
    tol: f64,
) -> Result<Vec<f64>> {
    let value = rzero_updown(v1, v2, s, direction, tol)?;
    let series = rzero_series(v1, v2, kmax)?;
    Ok((0..=kmax).map(|k| sup_diff(&value, &series.partial_sum_c64(s, k))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::omega_h;
    use crate::scalar::{Field, GaussRat};

    fn q(p: i64, d: i64) -> GaussRat {
        GaussRat::from_ratio(p, d)
    }

    fn c2(a: GaussRat, h: GaussRat) -> Representation<GaussRat> {
        Representation::sl2_evaluation(a, h)
    }

    #[test]
    fn eigenvalue_on_highest_weight() {
        let v = c2(q(0, 1), q(1, 1));
        let a = abelian_a(&v, &v).unwrap();
        let s = RatFun::var();
        let expected = s.mul_ref(&s.add_ref(&RatFun::from_i64(2))).div_ref(&s.add_ref(&RatFun::one()).pow(2)).unwrap();
        let m = a.matrix();
        assert_eq!(m[(0, 0)], expected);
    }

    #[test]
    fn two_jet() {
        let h = q(1, 2);
        let v = c2(q(1, 3), h.clone());
        let w = c2(q(-2, 5), h.clone());
        let a = abelian_a(&v, &w).unwrap().matrix();
        let s = PowerSeries::from_ratmat(&a, 2).unwrap();
        assert!(s.coeff(1).is_zero());
        let om = omega_h(v.cartan(), v.xi0(), w.xi0());
        assert_eq!(s.coeff(2), &om.scale(&h.mul_ref(&h).mul_ref(&q(-2, 1))));
    }

    #[test]
    fn g_coefficients() {
        let g = g_series::<GaussRat>(5);
        assert_eq!(g, vec![q(1, 1), q(1, 2), q(1, 6), q(0, 1), q(-1, 30)]);
    }

    #[test]
    fn formal_difference_equation() {
        let v = c2(q(0, 1), q(1, 1));
        let w = c2(q(1, 2), q(1, 1));
        let order = 6;
        let r = rzero_series(&v, &w, order).unwrap();
        let a = PowerSeries::from_ratmat(&abelian_a(&v, &w).unwrap().matrix(), order).unwrap();
        assert_eq!(r.shift(&q(2, 1)), a.mul(&r));
        let om = omega_h(v.cartan(), v.xi0(), w.xi0());
        assert_eq!(r.coeff(1), &om);
    }

    #[test]
    fn up_product_difference_equation() {
        let v: Representation<Complex64> = Representation::sl2_evaluation(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        let a = abelian_a(&v, &v).unwrap();
        let s = Complex64::new(0.37, 0.21);
        let r0 = a.product(s, Direction::Up, 1e-12).unwrap().matrix;
        let r1 = a.product(s + 2.0, Direction::Up, 1e-12).unwrap().matrix;
        let d = r1.sub(&a.eval_c64(s).unwrap().mul(&r0));
        assert!(d.max_abs() < 1e-10, "{}", d.max_abs());
    }

    fn fc2(a: f64) -> Representation<Complex64> {
        Representation::sl2_evaluation(Complex64::new(a, 0.0), Complex64::new(1.0, 0.0))
    }

    #[test]
    fn unitarity_and_cabling() {
        let (v1, v2, v3) = (fc2(0.0), fc2(0.4), fc2(-0.9));
        let s = Complex64::new(1.7, 0.3);
        assert!(unitarity_residual(&v1, &v2, s, 1e-12).unwrap() < 1e-9);
        let (s1, s2) = (Complex64::new(3.1, 0.2), Complex64::new(2.7, -0.1));
        for dir in [Direction::Up, Direction::Down] {
            let (a, b) = cabling_residuals(&v1, &v2, &v3, &s1, &s2, dir, 1e-12).unwrap();
            assert!(a < 1e-8 && b < 1e-8, "{a} {b}");
            assert!(intertwine_residual(&v1, &v2, &s1, dir, 1e-12).unwrap() < 1e-8);
        }
    }

    #[test]
    fn asymptotic_profile() {
        let v = fc2(0.0);
        let e = asymptotic_errors(&v, &v, Complex64::new(50.0, 0.0), Direction::Up, 4, 1e-13).unwrap();
        assert!(e.windows(2).all(|w| w[1] <= w[0]), "{e:?}");
        assert!(e[4] < 1e-6, "{e:?}");
    }
}
