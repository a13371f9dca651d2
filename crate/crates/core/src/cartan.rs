//! Cartan data, positive roots, the q-coupling matrix and the zero-mode
//! realization used to normalize root vectors.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Result, YrkError};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::scalar::{Field, GaussRat, Ring, Scalar};

/// Root lattice vector in the basis of simple roots.
pub type RootVec = Vec<i64>;

/// Symmetrizable Cartan matrix of finite type with its derived data.
#[derive(Clone)]
pub struct CartanData {
    name: String,
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
    positive_roots: Vec<RootVec>,
    index: HashMap<RootVec, usize>,
    hdual: i64,
    lacing: i64,
}

impl fmt::Debug for CartanData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CartanData({}, a={:?}, d={:?})", self.name, self.a, self.d)
    }
}

impl PartialEq for CartanData {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.d == o.d
    }
}

/// Serialized form: either `{"type": "A2"}` or explicit matrices.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CartanSpec {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<i64>>,
}

impl CartanData {
    /// Built-in types: `A<n>` (n ≥ 1), `B2` (first node long) and `C2`
    /// (first node short).
    pub fn builtin(name: &str) -> Result<Arc<CartanData>> {
        let name = name.trim().to_ascii_uppercase();
        let (a, d) = match name.as_str() {
            "B2" => (vec![vec![2, -1], vec![-2, 2]], vec![2, 1]),
            "C2" => (vec![vec![2, -2], vec![-1, 2]], vec![1, 2]),
            n if n.starts_with('A') => {
                let r: usize = n[1..].parse().map_err(|_| YrkError::UnsupportedCartan(name.clone()))?;
                if r == 0 {
                    return Err(YrkError::UnsupportedCartan(name));
                }
                let a = (0..r)
                    .map(|i| (0..r).map(|j| if i == j { 2 } else if i.abs_diff(j) == 1 { -1 } else { 0 }).collect())
                    .collect();
                (a, vec![1; r])
            }
            _ => return Err(YrkError::UnsupportedCartan(name)),
        };
        Self::with_name(&name, a, d)
    }

    pub fn sl2() -> Arc<CartanData> {
        Self::builtin("A1").expect("A1 is built in")
    }

    pub fn from_spec(spec: &CartanSpec) -> Result<Arc<CartanData>> {
        match (&spec.kind, &spec.cartan) {
            (Some(k), None) => Self::builtin(k),
            (_, Some(a)) => {
                let d = spec.d.clone().ok_or_else(|| YrkError::Schema("explicit Cartan matrix needs `d`".into()))?;
                Self::new(a.clone(), d)
            }
            (None, None) => Err(YrkError::Schema("cartan needs `type` or `cartan`".into())),
        }
    }

    pub fn spec(&self) -> CartanSpec {
        if Self::builtin(&self.name).is_ok_and(|c| *c == *self) {
            CartanSpec { kind: Some(self.name.clone()), cartan: None, d: None }
        } else {
            CartanSpec { kind: None, cartan: Some(self.a.clone()), d: Some(self.d.clone()) }
        }
    }

    /// Validate an explicit Cartan matrix and symmetrizer.
    pub fn new(a: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Arc<CartanData>> {
        Self::with_name("custom", a, d)
    }

    fn with_name(name: &str, a: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Arc<CartanData>> {
        let n = a.len();
        let bad = |m: &str| Err(YrkError::UnsupportedCartan(m.to_string()));
        if n == 0 || d.len() != n || a.iter().any(|r| r.len() != n) {
            return bad("Cartan matrix must be square and match the symmetrizer");
        }
        for i in 0..n {
            if a[i][i] != 2 || d[i] <= 0 {
                return bad("diagonal entries must be 2 and d positive");
            }
            for j in 0..n {
                if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                    return bad("off-diagonal entries must be non-positive with matching zeros");
                }
                if d[i] * a[i][j] != d[j] * a[j][i] {
                    return bad("d_i a_ij must be symmetric");
                }
            }
        }
        let positive_roots = generate_roots(&a).ok_or_else(|| YrkError::UnsupportedCartan("not of finite type".into()))?;
        let index = positive_roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        let mut c = CartanData { name: name.to_string(), a, d, positive_roots, index, hdual: 0, lacing: 0 };
        let theta = c.positive_roots.last().cloned().expect("nonempty root system");
        let tt = c.form(&theta, &theta);
        // h∨ = (θ, θ + 2ρ) / (θ, θ), with 2ρ the sum of positive roots.
        let two_rho: RootVec = (0..n).map(|i| c.positive_roots.iter().map(|r| r[i]).sum()).collect();
        let th2rho = c.form(&theta, &two_rho);
        if tt <= 0 || (tt + th2rho) % tt != 0 || tt % 2 != 0 {
            return bad("inconsistent normalization of the invariant form");
        }
        c.hdual = (tt + th2rho) / tt;
        c.lacing = tt / 2;
        if c.d.iter().min() != Some(&1) {
            return bad("symmetrizer must be normalized with min d_i = 1");
        }
        Ok(Arc::new(c))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    /// Symmetrized matrix `B_ij = d_i a_ij = (α_i, α_j)`.
    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.a[i][j]
    }

    pub fn hdual(&self) -> i64 {
        self.hdual
    }

    /// `m = (θ, θ)/2` for the highest root θ.
    pub fn lacing(&self) -> i64 {
        self.lacing
    }

    /// `ℓ = m h∨`.
    pub fn ell(&self) -> i64 {
        self.lacing * self.hdual
    }

    /// Invariant form `(β, γ)` on the root lattice.
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| x[i] * self.b(i, j) * y[j]).sum::<i64>()).sum()
    }

    /// `⟨β, α_i^∨⟩ = β(h_i)`.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| beta[j] * self.a[i][j]).sum()
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        let mut r = vec![0; self.rank()];
        r[i] = 1;
        r
    }

    /// Positive roots ordered by height, then lexicographically.
    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive_roots
    }

    pub fn root_index(&self, beta: &[i64]) -> Option<usize> {
        self.index.get(beta).copied()
    }

    pub fn is_positive_root(&self, beta: &[i64]) -> bool {
        self.index.contains_key(beta)
    }

    /// For a non-simple positive root, the smallest `i` with `β - α_i` a root.
    pub fn decomposition(&self, beta: &[i64]) -> Option<usize> {
        if height(beta) <= 1 {
            return None;
        }
        (0..self.rank()).find(|&i| {
            let mut r = beta.to_vec();
            r[i] -= 1;
            self.is_positive_root(&r)
        })
    }

    /// `ν(β)`: minimal number of positive roots summing to `β ∈ Q₊`.
    pub fn nu(&self, beta: &[i64]) -> Result<usize> {
        if beta.len() != self.rank() || beta.iter().any(|&x| x < 0) {
            return Err(YrkError::Domain(format!("{beta:?} is not in Q+")));
        }
        let mut memo = HashMap::new();
        Ok(self.nu_memo(beta, &mut memo))
    }

    fn nu_memo(&self, beta: &[i64], memo: &mut HashMap<RootVec, usize>) -> usize {
        if beta.iter().all(|&x| x == 0) {
            return 0;
        }
        if let Some(&v) = memo.get(beta) {
            return v;
        }
        let mut best = usize::MAX;
        for g in &self.positive_roots {
            if g.iter().zip(beta).all(|(a, b)| a <= b) {
                let rest: RootVec = beta.iter().zip(g).map(|(b, a)| b - a).collect();
                best = best.min(1 + self.nu_memo(&rest, memo));
            }
        }
        memo.insert(beta.to_vec(), best);
        best
    }

    /// Inverse of `B = (d_i a_ij)` over ℚ.
    pub fn b_inverse(&self) -> Mat<GaussRat> {
        let n = self.rank();
        let b = Mat::from_fn(n, n, |i, j| GaussRat::from_i64(self.b(i, j)));
        b.inverse().expect("finite type Cartan matrices are invertible")
    }

    /// Convert a vector of `ξ_{i,0}` eigenvalue shifts into root coordinates.
    pub fn shift_to_root<F: Scalar>(&self, delta: &[F]) -> Option<RootVec> {
        let n = self.rank();
        let binv = self.b_inverse();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = F::zero();
            for j in 0..n {
                acc = acc.add_ref(&F::from_gauss(&binv[(i, j)]).mul_ref(&delta[j]));
            }
            let z = acc.to_c64();
            let r = z.re.round();
            if !F::EXACT {
                if (z - num_complex::Complex64::new(r, 0.0)).norm() > 1e-6 {
                    return None;
                }
            } else if acc != F::from_i64(r as i64) {
                return None;
            }
            out.push(r as i64);
        }
        Some(out)
    }

    /// The matrix `c_ij(q) = [ℓ]_q ([d_i a_ij]_q)^{-1}` of Laurent polynomials.
    pub fn q_coupling(&self) -> Result<Vec<Vec<LaurentPoly>>> {
        let n = self.rank();
        let b = Mat::from_fn(n, n, |i, j| q_number_rat(self.b(i, j)));
        let rhs = Mat::<RatFun<GaussRat>>::identity(n).scale(&q_number_rat(self.ell()));
        // Solve C B = [ℓ] I as Bᵀ Cᵀ = [ℓ] I.
        let ct = b.transpose().solve(&rhs)?;
        let c = ct.transpose();
        (0..n)
            .map(|i| (0..n).map(|j| LaurentPoly::from_ratfun(&c[(i, j)])).collect())
            .collect()
    }

    /// Zero-mode realization (faithful for the built-in types).
    pub fn realization(&self) -> Result<Realization> {
        Realization::new(self)
    }
}

fn height(beta: &[i64]) -> i64 {
    beta.iter().sum()
}

fn generate_roots(a: &[Vec<i64>]) -> Option<Vec<RootVec>> {
    let n = a.len();
    let mut roots: Vec<RootVec> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut k = 0;
    while k < roots.len() {
        if roots.len() > 1000 {
            return None;
        }
        let beta = roots[k].clone();
        for i in 0..n {
            let mut p = 0;
            loop {
                let mut r = beta.clone();
                r[i] -= p + 1;
                if roots.contains(&r) {
                    p += 1;
                } else {
                    break;
                }
            }
            let pairing: i64 = (0..n).map(|j| beta[j] * a[i][j]).sum();
            if p - pairing > 0 {
                let mut r = beta.clone();
                r[i] += 1;
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        k += 1;
    }
    roots.sort_by(|x, y| height(x).cmp(&height(y)).then_with(|| y.cmp(x)));
    Some(roots)
}

/// `[n]_q = (q^n - q^{-n}) / (q - q^{-1})` as a rational function of q.
pub fn q_number_rat(n: i64) -> RatFun<GaussRat> {
    let lp = LaurentPoly::q_number(n);
    lp.to_ratfun()
}

// ---------------------------------------------------------------------------
// Laurent polynomials

/// Integer Laurent polynomial `sum_k coeffs[k] q^{low + k}`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentPoly {
    pub low: i64,
    pub coeffs: Vec<i64>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                _ => format!("{c}q^{e}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl LaurentPoly {
    pub fn new(low: i64, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn monomial(e: i64, c: i64) -> Self {
        LaurentPoly::new(e, vec![c])
    }

    /// Symmetric q-integer `[n]_q`.
    pub fn q_number(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let m = n.abs();
        let sign = n.signum();
        let mut c = vec![0; (2 * m - 1) as usize];
        for k in 0..m {
            c[(2 * k) as usize] = sign;
        }
        LaurentPoly::new(-(m - 1), c)
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(move |(k, &c)| (self.low + k as i64, c))
    }

    pub fn coeff(&self, e: i64) -> i64 {
        let k = e - self.low;
        if k < 0 {
            0
        } else {
            self.coeffs.get(k as usize).copied().unwrap_or(0)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() {
            return o.clone();
        }
        if o.coeffs.is_empty() {
            return self.clone();
        }
        let lo = self.low.min(o.low);
        let hi = (self.low + self.coeffs.len() as i64).max(o.low + o.coeffs.len() as i64);
        LaurentPoly::new(lo, (lo..hi).map(|e| self.coeff(e) + o.coeff(e)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::zero();
        }
        let mut c = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.low + o.low, c)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Invariance under `q ↦ q^{-1}`.
    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(e, c)| self.coeff(-e) == c)
    }

    pub fn to_ratfun(&self) -> RatFun<GaussRat> {
        let num = Poly::new(self.coeffs.iter().map(|&c| GaussRat::from_i64(c)).collect());
        if self.low >= 0 {
            let shift = Poly::new(vec![GaussRat::zero(), GaussRat::one()]).pow(self.low as u32);
            RatFun::from_poly(num.mul(&shift))
        } else {
            let den = Poly::new(vec![GaussRat::zero(), GaussRat::one()]).pow((-self.low) as u32);
            RatFun::new(num, den).expect("monomial denominator")
        }
    }

    /// Convert a rational function of q whose denominator is a monomial.
    pub fn from_ratfun(f: &RatFun<GaussRat>) -> Result<Self> {
        let den = f.den();
        let k = den.degree().unwrap_or(0);
        let monomial = den.coeffs().iter().take(k).all(|c| c.is_zero());
        if !monomial {
            return Err(YrkError::NotLaurent(format!("{f}")));
        }
        let coeffs = f
            .num()
            .coeffs()
            .iter()
            .map(|c| {
                if !c.is_real() || !c.re.is_integer() {
                    return Err(YrkError::NotLaurent(format!("non-integer coefficient {c}")));
                }
                c.re.to_integer().to_i64().ok_or_else(|| YrkError::NotLaurent("coefficient overflow".into()))
            })
            .collect::<Result<Vec<i64>>>()?;
        Ok(LaurentPoly::new(-(k as i64), coeffs))
    }
}

// ---------------------------------------------------------------------------
// Zero-mode realization

/// Faithful matrix realization of `g` with Chevalley generators normalized
/// so that `[x_i^+, x_i^-] = ξ_{i,0} = d_i h_i`, together with the root
/// vector construction shared by every representation.
#[derive(Debug, Clone)]
pub struct Realization {
    pub dim: usize,
    pub xi0: Vec<Mat<GaussRat>>,
    pub xp0: Vec<Mat<GaussRat>>,
    pub xm0: Vec<Mat<GaussRat>>,
    /// Trace-form factor: `(X, Y) = kappa tr(XY)`.
    pub kappa: GaussRat,
    /// Scale applied to the bracket word defining `x^-_β`, per positive root.
    pub minus_scale: Vec<GaussRat>,
}

impl Realization {
    fn new(c: &CartanData) -> Result<Self> {
        let n = c.rank();
        let (dim, xp0, xm0): (usize, Vec<Mat<GaussRat>>, Vec<Mat<GaussRat>>) = match c.name() {
            "B2" | "C2" => {
                // sp(4) on weights (ε1, ε2, -ε2, -ε1); short root ε1-ε2, long root 2ε2.
                let e = |i, j| Mat::<GaussRat>::unit(4, i, j);
                let short_p = e(0, 1).sub(&e(2, 3));
                let short_m = e(1, 0).sub(&e(3, 2));
                let long_p = e(1, 2);
                let long_m = e(2, 1).scale(&GaussRat::from_i64(2));
                if c.name() == "C2" {
                    (4, vec![short_p, long_p], vec![short_m, long_m])
                } else {
                    (4, vec![long_p, short_p], vec![long_m, short_m])
                }
            }
            name if name.starts_with('A') && name != "custom" => {
                let dim = n + 1;
                (
                    dim,
                    (0..n).map(|i| Mat::unit(dim, i, i + 1)).collect(),
                    (0..n).map(|i| Mat::unit(dim, i + 1, i)).collect(),
                )
            }
            _ => return Err(YrkError::UnsupportedCartan(format!("no built-in realization for {}", c.name()))),
        };
        let xi0: Vec<Mat<GaussRat>> = (0..n).map(|i| xp0[i].commutator(&xm0[i])).collect();
        // (ξ_{0,0}, ξ_{0,0}) = d_0^2 (h_0, h_0) = 2 d_0.
        let tr = xi0[0].mul(&xi0[0]).trace();
        let kappa = GaussRat::from_i64(2 * c.d(0)).div_ref(&tr).ok_or(YrkError::Singular)?;
        let mut r = Realization { dim, xi0, xp0, xm0, kappa, minus_scale: Vec::new() };
        let mut plus: Vec<Mat<GaussRat>> = Vec::new();
        let mut minus: Vec<Mat<GaussRat>> = Vec::new();
        for beta in c.positive_roots() {
            let (p, m) = r.bracket_word(c, beta, &r.xp0, &r.xm0, &plus, &minus);
            let pairing = r.kappa.mul_ref(&m.mul(&p).trace());
            let scale = pairing.inv().ok_or_else(|| YrkError::UnsupportedCartan("degenerate root vector".into()))?;
            r.minus_scale.push(scale.clone());
            plus.push(p);
            minus.push(m.scale(&scale));
        }
        Ok(r)
    }

    /// Unnormalized bracket word for `x^±_β`, given normalized vectors for
    /// all lower roots.
    fn bracket_word<F: Scalar>(
        &self,
        c: &CartanData,
        beta: &[i64],
        xp0: &[Mat<F>],
        xm0: &[Mat<F>],
        plus: &[Mat<F>],
        minus: &[Mat<F>],
    ) -> (Mat<F>, Mat<F>) {
        match c.decomposition(beta) {
            None => {
                let i = beta.iter().position(|&x| x == 1).expect("simple root");
                (xp0[i].clone(), xm0[i].clone())
            }
            Some(i) => {
                let mut rest = beta.to_vec();
                rest[i] -= 1;
                let k = c.root_index(&rest).expect("lower root");
                (xp0[i].commutator(&plus[k]), minus[k].commutator(&xm0[i]))
            }
        }
    }

    /// Root vectors `(x^+_β, x^-_β)` for every positive root, built from the
    /// simple generators of a representation with the realization's scales.
    pub fn root_vectors<F: Scalar>(&self, c: &CartanData, xp0: &[Mat<F>], xm0: &[Mat<F>]) -> Vec<(Mat<F>, Mat<F>)> {
        let mut plus: Vec<Mat<F>> = Vec::new();
        let mut minus: Vec<Mat<F>> = Vec::new();
        for (k, beta) in c.positive_roots().iter().enumerate() {
            let (p, m) = self.bracket_word(c, beta, xp0, xm0, &plus, &minus);
            plus.push(p);
            minus.push(m.scale(&F::from_gauss(&self.minus_scale[k])));
        }
        plus.into_iter().zip(minus).collect()
    }
}

/// `r = sum_β x^-_β ⊗ x^+_β` on `V1 ⊗ V2`.
pub fn r_tensor<F: Scalar>(roots1: &[(Mat<F>, Mat<F>)], roots2: &[(Mat<F>, Mat<F>)]) -> Mat<F> {
    let n = roots1[0].0.rows() * roots2[0].0.rows();
    roots1
        .iter()
        .zip(roots2)
        .fold(Mat::zeros(n, n), |acc, ((_, m1), (p2, _))| acc.add(&m1.kron(p2)))
}

/// `Ω_h = sum_ij (B^{-1})_ij ξ_{i,0} ⊗ ξ_{j,0}`.
pub fn omega_h<F: Scalar>(c: &CartanData, xi1: &[Mat<F>], xi2: &[Mat<F>]) -> Mat<F> {
    let binv = c.b_inverse();
    let n = xi1[0].rows() * xi2[0].rows();
    let mut acc = Mat::zeros(n, n);
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            let b = F::from_gauss(&binv[(i, j)]);
            if !b.is_zero() {
                acc = acc.add(&xi1[i].kron(&xi2[j]).scale(&b));
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_systems() {
        assert_eq!(CartanData::builtin("A1").unwrap().positive_roots().len(), 1);
        let a2 = CartanData::builtin("A2").unwrap();
        assert_eq!(a2.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(a2.ell(), 3);
        let c2 = CartanData::builtin("C2").unwrap();
        assert_eq!(c2.positive_roots().len(), 4);
        assert_eq!((c2.hdual(), c2.lacing(), c2.ell()), (3, 2, 6));
        let a3 = CartanData::builtin("A3").unwrap();
        assert_eq!(a3.positive_roots().len(), 6);
        assert_eq!(a3.hdual(), 4);
    }

    #[test]
    fn rejects_bad_cartan() {
        assert!(CartanData::new(vec![vec![2, -3], vec![-1, 2]], vec![1, 1]).is_err());
        assert!(CartanData::new(vec![vec![2, -2], vec![-2, 2]], vec![1, 1]).is_err());
        assert!(CartanData::builtin("E9").is_err());
    }

    #[test]
    fn nu_counts() {
        let a2 = CartanData::builtin("A2").unwrap();
        assert_eq!(a2.nu(&[1, 1]).unwrap(), 1);
        assert_eq!(a2.nu(&[2, 1]).unwrap(), 2);
        assert_eq!(a2.nu(&[0, 0]).unwrap(), 0);
        assert!(a2.nu(&[-1, 0]).is_err());
    }

    #[test]
    fn realizations_are_normalized() {
        for name in ["A1", "A2", "A3", "B2", "C2"] {
            let c = CartanData::builtin(name).unwrap();
            let r = c.realization().unwrap();
            let n = c.rank();
            for i in 0..n {
                for j in 0..n {
                    let br = r.xp0[i].commutator(&r.xm0[j]);
                    let expect = if i == j { r.xi0[i].clone() } else { Mat::zeros(r.dim, r.dim) };
                    assert_eq!(br, expect, "{name}");
                    let hx = r.xi0[i].commutator(&r.xp0[j]);
                    assert_eq!(hx, r.xp0[j].scale(&GaussRat::from_i64(c.b(i, j))), "{name}");
                    let form = r.kappa.mul_ref(&r.xi0[i].mul(&r.xi0[j]).trace());
                    assert_eq!(form, GaussRat::from_i64(c.b(i, j)), "{name}");
                }
            }
        }
    }
}
