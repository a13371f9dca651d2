//! Dense matrices over a [`Ring`], with field algorithms for [`Field`]
//! entries (scalars or rational functions).

use std::fmt;

use num_complex::Complex64;

use crate::error::{Result, YrkError};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::roots::same_point;
use crate::scalar::{Field, Ring, Scalar};

#[derive(Clone, PartialEq)]
pub struct Mat<T: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix of rational functions in one variable.
pub type RatMat<F> = Mat<RatFun<F>>;

impl<T: Ring> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Ring> Mat<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Mat::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Matrix unit `E_{ij}` (zero-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = T::one();
        m
    }

    pub fn diag(d: Vec<T>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (k, x) in d.into_iter().enumerate() {
            m[(k, k)] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Mat<U>> {
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.neg_ref())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, k| acc.add_ref(&self[(k, k)]))
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = &o[(k, l)];
                        if !b.is_zero() {
                            out[(i * o.rows + k, j * o.cols + l)] = a.mul_ref(b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Conjugate by a basis permutation: `out[p(i), p(j)] = self[i, j]`.
    pub fn permute(&self, p: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(p[i], p[j])] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Columns `cols` as a new matrix.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn hstack(blocks: &[Self]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.cols;
        }
        out
    }
}

impl<T: Ring> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Ring> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Permutation of `V_1 ⊗ ... ⊗ V_k` basis indices sending factor order
/// `0..k` to `order`: the returned map sends the index of `e_{a_0} ⊗ ... ⊗
/// e_{a_{k-1}}` to the index of `e_{a_{order[0]}} ⊗ ... ⊗ e_{a_{order[k-1]}}`
/// in the permuted product.
pub fn tensor_permutation(dims: &[usize], order: &[usize]) -> Vec<usize> {
    let total: usize = dims.iter().product();
    let new_dims: Vec<usize> = order.iter().map(|&k| dims[k]).collect();
    (0..total)
        .map(|idx| {
            let mut digits = vec![0; dims.len()];
            let mut rest = idx;
            for k in (0..dims.len()).rev() {
                digits[k] = rest % dims[k];
                rest /= dims[k];
            }
            order.iter().zip(&new_dims).fold(0, |acc, (&k, &d)| acc * d + digits[k])
        })
        .collect()
}

/// Flip operator `V1 ⊗ V2 → V2 ⊗ V1` as a matrix.
pub fn flip_matrix<T: Ring>(d1: usize, d2: usize) -> Mat<T> {
    let p = tensor_permutation(&[d1, d2], &[1, 0]);
    let mut m = Mat::zeros(d1 * d2, d1 * d2);
    for (i, &j) in p.iter().enumerate() {
        m[(j, i)] = T::one();
    }
    m
}

/// Conjugate an operator on `V1 ⊗ V2` to the corresponding operator on
/// `V2 ⊗ V1`.
pub fn flip_conj<T: Ring>(m: &Mat<T>, d1: usize, d2: usize) -> Mat<T> {
    m.permute(&tensor_permutation(&[d1, d2], &[1, 0]))
}

/// Place an operator acting on factors `(a, b)` (`a < b` not required) of a
/// tensor product with dimensions `dims` into the full space.
pub fn embed_pair<T: Ring>(op: &Mat<T>, dims: &[usize], a: usize, b: usize) -> Mat<T> {
    let k = dims.len();
    let mut order = vec![a, b];
    order.extend((0..k).filter(|&x| x != a && x != b));
    let rest: usize = order[2..].iter().map(|&x| dims[x]).product();
    let big = op.kron(&Mat::identity(rest));
    // `big` acts on the product in `order`; bring it back to natural order.
    let new_dims: Vec<usize> = order.iter().map(|&x| dims[x]).collect();
    let mut inverse = vec![0; k];
    for (pos, &f) in order.iter().enumerate() {
        inverse[f] = pos;
    }
    big.permute(&tensor_permutation(&new_dims, &inverse))
}

/// Place an operator on factor `a`.
pub fn embed_one<T: Ring>(op: &Mat<T>, dims: &[usize], a: usize) -> Mat<T> {
    let left: usize = dims[..a].iter().product();
    let right: usize = dims[a + 1..].iter().product();
    Mat::identity(left).kron(op).kron(&Mat::identity(right))
}

/// Merge `new` into `acc`, keeping the larger multiplicity for points
/// already present.
pub fn merge_poles<F: Scalar>(acc: &mut Vec<(F, usize)>, new: Vec<(F, usize)>) {
    for (p, m) in new {
        match acc.iter_mut().find(|(q, _)| same_point(q, &p)) {
            Some(e) => e.1 = e.1.max(m),
            None => acc.push((p, m)),
        }
    }
}

// ---------------------------------------------------------------------------
// Field algorithms

impl<T: Field> Mat<T> {
    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let best = (row..self.rows)
                .map(|r| (r, self[(r, col)].pivot_weight()))
                .filter(|(_, w)| *w > 0.0)
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
            let Some((p, w)) = best else { continue };
            if w < self.pivot_floor() {
                continue;
            }
            self.swap_rows(p, row);
            let inv = self[(row, col)].inv().expect("pivot is nonzero");
            for j in 0..self.cols {
                self[(row, j)] = self[(row, j)].mul_ref(&inv);
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let f = self[(r, col)].clone();
                for j in 0..self.cols {
                    if !self[(row, j)].is_zero() {
                        self[(r, j)] = self[(r, j)].sub_ref(&f.mul_ref(&self[(row, j)]));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Absolute pivot threshold: zero for exact entries, a small multiple of
    /// the largest entry weight for floats.
    fn pivot_floor(&self) -> f64 {
        let ws: Vec<f64> = self.data.iter().map(|x| x.pivot_weight()).collect();
        if ws.iter().all(|&w| w == 0.0 || w == 1.0) {
            return 0.0;
        }
        ws.iter().cloned().fold(0.0, f64::max) * 1e-11
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Solve `self * X = b`.
    pub fn solve(&self, b: &Self) -> Result<Self> {
        if !self.is_square() || self.rows != b.rows {
            return Err(YrkError::Domain("solve: shape mismatch".into()));
        }
        let n = self.rows;
        let mut aug = Mat::hstack(&[self.clone(), b.clone()]);
        let piv = aug.rref();
        if piv.len() < n || piv.iter().any(|&c| c >= n) {
            return Err(YrkError::Singular);
        }
        Ok(Mat::from_fn(n, b.cols, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.solve(&Mat::identity(self.rows))
    }

    /// Basis of the right kernel, as columns.
    pub fn kernel(&self) -> Self {
        let mut m = self.clone();
        let piv = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = Mat::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out[(f, k)] = T::one();
            for (r, &pc) in piv.iter().enumerate() {
                out[(pc, k)] = m[(r, f)].neg_ref();
            }
        }
        out
    }

    pub fn det(&self) -> T {
        let mut m = self.clone();
        let n = self.rows;
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else { return T::zero() };
            if p != col {
                m.swap_rows(p, col);
                det = det.neg_ref();
            }
            let piv = m[(col, col)].clone();
            det = det.mul_ref(&piv);
            let inv = piv.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].mul_ref(&inv);
                for j in col..n {
                    m[(r, j)] = m[(r, j)].sub_ref(&f.mul_ref(&m[(col, j)]));
                }
            }
        }
        det
    }
}

impl<F: Scalar> Mat<F> {
    pub fn to_c64(&self) -> Mat<Complex64> {
        self.map(|x| x.to_c64())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// Characteristic polynomial `det(x I - A)` (Faddeev–LeVerrier).
    pub fn char_poly(&self) -> Poly<F> {
        let n = self.rows;
        let mut c = vec![F::zero(); n + 1];
        c[n] = F::one();
        let mut m = Mat::<F>::zeros(n, n);
        for k in 1..=n {
            m = self.mul(&m);
            for i in 0..n {
                m[(i, i)] = m[(i, i)].add_ref(&c[n - k + 1]);
            }
            let tr = self.mul(&m).trace();
            c[n - k] = tr.neg_ref().mul_ref(&F::from_ratio(1, k as i64));
        }
        Poly::new(c)
    }

    /// `(p, R)` with `(z I - A)^{-1} = (Σ_j R_j z^j) / p(z)` and `p` the
    /// characteristic polynomial (Faddeev–LeVerrier adjugate recursion).
    pub fn resolvent(&self) -> (Poly<F>, Vec<Mat<F>>) {
        let n = self.rows;
        let mut c = vec![F::zero(); n + 1];
        c[n] = F::one();
        let mut adj = vec![Mat::<F>::zeros(n, n); n];
        let mut m = Mat::<F>::zeros(n, n);
        for k in 1..=n {
            m = self.mul(&m);
            for i in 0..n {
                m[(i, i)] = m[(i, i)].add_ref(&c[n - k + 1]);
            }
            adj[n - k] = m.clone();
            let tr = self.mul(&m).trace();
            c[n - k] = tr.neg_ref().mul_ref(&F::from_ratio(1, k as i64));
        }
        (Poly::new(c), adj)
    }

    /// Promote to constant rational functions.
    pub fn to_ratmat(&self) -> RatMat<F> {
        self.map(|x| RatFun::constant(x.clone()))
    }
}

impl<F: Scalar> RatMat<F> {
    pub fn eval(&self, x: &F) -> Result<Mat<F>> {
        self.try_map(|f| f.eval(x))
    }

    pub fn eval_c64(&self, x: Complex64) -> Result<Mat<Complex64>> {
        self.try_map(|f| f.eval_c64(x))
    }

    pub fn compose_affine(&self, a: &F, b: &F) -> Self {
        self.map(|f| f.compose_affine(a, b))
    }

    pub fn shift(&self, c: &F) -> Self {
        self.map(|f| f.shift(c))
    }

    pub fn derivative(&self) -> Self {
        self.map(|f| f.derivative())
    }

    pub fn scale_scalar(&self, c: &F) -> Self {
        self.map(|f| f.scale(c))
    }

    /// Product of a rational matrix with a constant matrix on the right.
    pub fn mul_const(&self, m: &Mat<F>) -> Self {
        self.mul(&m.to_ratmat())
    }

    /// Poles of all entries, each with its largest multiplicity.
    pub fn poles(&self, hints: &[F]) -> Result<Vec<(F, usize)>> {
        let mut out = Vec::new();
        let mut seen: Vec<&Poly<F>> = Vec::new();
        for f in self.data.iter() {
            if f.den().is_constant() || seen.contains(&f.den()) {
                continue;
            }
            seen.push(f.den());
            merge_poles(&mut out, f.poles(hints)?);
        }
        Ok(out)
    }

    /// Principal parts at every pole: `(p, c)` with `c[k-1]` the matrix
    /// coefficient of `(x - p)^{-k}`.
    pub fn principal_parts(&self, hints: &[F]) -> Result<Vec<(F, Vec<Mat<F>>)>> {
        let poles = self.poles(hints)?;
        let mut out = Vec::new();
        for (p, m) in poles {
            let mut c = vec![Mat::zeros(self.rows, self.cols); m];
            for (idx, f) in self.data.iter().enumerate() {
                let mf = f.den().root_multiplicity(&p);
                if mf == 0 {
                    continue;
                }
                for (k, v) in f.principal_part(&p, mf)?.into_iter().enumerate() {
                    c[k].data[idx] = v;
                }
            }
            out.push((p, c));
        }
        Ok(out)
    }

    /// Least common multiple of all entry denominators.
    pub fn common_denominator(&self) -> Poly<F> {
        self.data.iter().fold(Poly::one(), |acc, f| {
            let g = acc.gcd(f.den());
            acc.mul(f.den()).div_rem(&g).map(|x| x.0).unwrap_or(acc)
        })
    }

    /// Evaluate each entry at a few sample points and report the largest
    /// magnitude; zero when every entry is identically zero.
    pub fn residual(&self, pts: &[Complex64]) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.data.iter().map(|f| f.max_abs_at(pts)).fold(0.0, f64::max);
        if F::EXACT && r == 0.0 {
            // Nonzero entries must register even if they vanish at the samples.
            f64::MIN_POSITIVE
        } else {
            r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn m(rows: &[&[i64]]) -> Mat<GaussRat> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| GaussRat::from_i64(x)).collect()).collect())
    }

    #[test]
    fn resolvent_inverts() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let (p, r) = a.resolvent();
        assert_eq!(p, a.char_poly());
        let z = GaussRat::from_ratio(7, 3);
        let num = r.iter().enumerate().fold(Mat::zeros(3, 3), |acc, (j, rj)| acc.add(&rj.scale(&z.pow(j as u32))));
        let lhs = Mat::identity(3).scale(&z).sub(&a).mul(&num);
        assert_eq!(lhs, Mat::identity(3).scale(&p.eval(&z)));
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(a.det(), GaussRat::from_i64(18));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(YrkError::Singular));
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn char_poly_of_companion() {
        let a = m(&[&[0, -6], &[1, 5]]);
        let p = a.char_poly();
        assert_eq!(p, Poly::new(vec![GaussRat::from_i64(6), GaussRat::from_i64(-5), GaussRat::one()]));
    }

    #[test]
    fn flip_swaps_kron() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1, 0], &[5, 0, 0], &[0, 0, 7]]);
        let ab = a.kron(&b);
        let ba = b.kron(&a);
        assert_eq!(flip_conj(&ab, 2, 3), ba);
        let p: Mat<GaussRat> = flip_matrix(2, 3);
        assert_eq!(p.mul(&ab), ba.mul(&p));
    }

    #[test]
    fn embedding_pairs() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[5, 0]]);
        let c = m(&[&[2, 0], &[1, 1]]);
        let ac = a.kron(&c);
        let full = a.kron(&Mat::identity(2)).kron(&c);
        assert_eq!(embed_pair(&ac, &[2, 2, 2], 0, 2), full);
        let bc = b.kron(&c);
        assert_eq!(embed_pair(&bc, &[2, 2, 2], 1, 2), Mat::identity(2).kron(&bc));
        let ca = c.kron(&a);
        assert_eq!(embed_pair(&ca, &[2, 2, 2], 2, 0), full);
        assert_eq!(embed_one(&b, &[2, 2, 2], 1), Mat::identity(2).kron(&b).kron(&Mat::identity(2)));
    }
}
