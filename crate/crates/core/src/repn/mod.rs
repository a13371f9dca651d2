//! Finite-dimensional representations of the Yangian given by zero modes.
//!
//! A representation stores, for each node `i`, the matrices of `ξ_{i,0}`,
//! `x^±_{i,0}` and `t_{i,1}`. Everything else (fields, higher modes, pole
//! sets) is derived from these.

mod currents;
mod json;
pub mod relations;

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

pub use currents::{krylov_resolvent, Currents, Modes};
pub use relations::{RelationEntry, RelationReport};

use crate::cartan::CartanData;
use crate::eigen::joint_eigenbasis;
use crate::error::{Result, YrkError};
use crate::matrix::Mat;
use crate::matrix::merge_poles;
use crate::scalar::Scalar;
use crate::series::PowerSeries;

/// How a tensor product was formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorKind {
    Standard,
    Drinfeld,
}

impl TensorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TensorKind::Standard => "standard",
            TensorKind::Drinfeld => "drinfeld",
        }
    }
}

/// Construction history, used for pole candidates and for display.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance<F: Scalar> {
    Trivial,
    /// Vector evaluation module at the point `a`.
    Evaluation { a: F },
    Shift { a: F, inner: Box<Provenance<F>> },
    Tensor { kind: TensorKind, s: F, left: Box<Provenance<F>>, right: Box<Provenance<F>> },
    Custom,
}

impl<F: Scalar> Provenance<F> {
    fn to_float(&self) -> Provenance<Complex64> {
        match self {
            Provenance::Trivial => Provenance::Trivial,
            Provenance::Custom => Provenance::Custom,
            Provenance::Evaluation { a } => Provenance::Evaluation { a: a.to_c64() },
            Provenance::Shift { a, inner } => Provenance::Shift { a: a.to_c64(), inner: Box::new(inner.to_float()) },
            Provenance::Tensor { kind, s, left, right } => {
                Provenance::Tensor { kind: *kind, s: s.to_c64(), left: Box::new(left.to_float()), right: Box::new(right.to_float()) }
            }
        }
    }
}

impl<F: Scalar> Provenance<F> {
    /// Candidate poles of the fields, tried before numeric recognition.
    pub fn pole_hints(&self, hbar: &F, rank: usize) -> Vec<F> {
        match self {
            Provenance::Trivial | Provenance::Custom => Vec::new(),
            Provenance::Evaluation { a } => {
                let r = 2 * rank as i64 + 2;
                let half = hbar.mul_ref(&F::from_ratio(1, 2));
                (-r..=r).map(|k| a.add_ref(&half.mul_ref(&F::from_i64(k)))).collect()
            }
            Provenance::Shift { a, inner } => inner.pole_hints(hbar, rank).iter().map(|p| p.add_ref(a)).collect(),
            Provenance::Tensor { s, left, right, .. } => {
                let mut h: Vec<F> = left.pole_hints(hbar, rank).iter().map(|p| p.add_ref(s)).collect();
                for p in right.pole_hints(hbar, rank) {
                    if !h.contains(&p) {
                        h.push(p);
                    }
                }
                h
            }
        }
    }
}

/// A representation of `Y_ħ(g)` on `ℂ^dim`.
#[derive(Debug)]
pub struct Representation<F: Scalar> {
    cartan: Arc<CartanData>,
    hbar: F,
    dim: usize,
    xi0: Vec<Mat<F>>,
    xp0: Vec<Mat<F>>,
    xm0: Vec<Mat<F>>,
    t1: Vec<Mat<F>>,
    provenance: Provenance<F>,
    declared_poles: Vec<F>,
    currents: OnceLock<Vec<Currents<F>>>,
}

impl<F: Scalar> Clone for Representation<F> {
    fn clone(&self) -> Self {
        let r = Representation {
            cartan: self.cartan.clone(),
            hbar: self.hbar.clone(),
            dim: self.dim,
            xi0: self.xi0.clone(),
            xp0: self.xp0.clone(),
            xm0: self.xm0.clone(),
            t1: self.t1.clone(),
            provenance: self.provenance.clone(),
            declared_poles: self.declared_poles.clone(),
            currents: OnceLock::new(),
        };
        if let Some(c) = self.currents.get() {
            let _ = r.currents.set(c.clone());
        }
        r
    }
}

impl<F: Scalar> PartialEq for Representation<F> {
    fn eq(&self, o: &Self) -> bool {
        self.cartan == o.cartan
            && self.hbar == o.hbar
            && self.xi0 == o.xi0
            && self.xp0 == o.xp0
            && self.xm0 == o.xm0
            && self.t1 == o.t1
    }
}

impl<F: Scalar> Representation<F> {
    /// Build from zero modes; shapes are validated, relations are not.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        cartan: Arc<CartanData>,
        hbar: F,
        xi0: Vec<Mat<F>>,
        xp0: Vec<Mat<F>>,
        xm0: Vec<Mat<F>>,
        t1: Vec<Mat<F>>,
        provenance: Provenance<F>,
    ) -> Result<Self> {
        let n = cartan.rank();
        if hbar.is_zero() {
            return Err(YrkError::InvalidRepresentation("ħ must be nonzero".into()));
        }
        let dim = xi0.first().map_or(0, |m| m.rows());
        for (name, v) in [("xi0", &xi0), ("xp0", &xp0), ("xm0", &xm0), ("t1", &t1)] {
            if v.len() != n {
                return Err(YrkError::InvalidRepresentation(format!("{name} needs {n} matrices, found {}", v.len())));
            }
            if v.iter().any(|m| m.rows() != dim || m.cols() != dim) {
                return Err(YrkError::InvalidRepresentation(format!("{name} matrices must be {dim}x{dim}")));
            }
        }
        if dim == 0 {
            return Err(YrkError::InvalidRepresentation("dimension must be positive".into()));
        }
        Ok(Representation {
            cartan,
            hbar,
            dim,
            xi0,
            xp0,
            xm0,
            t1,
            provenance,
            declared_poles: Vec::new(),
            currents: OnceLock::new(),
        })
    }

    /// The one-dimensional trivial representation.
    pub fn trivial(cartan: Arc<CartanData>, hbar: F) -> Result<Self> {
        let z = vec![Mat::zeros(1, 1); cartan.rank()];
        Self::new(cartan, hbar, z.clone(), z.clone(), z.clone(), z, Provenance::Trivial)
    }

    /// Vector evaluation representation `ℂ^{n+1}(a)` of `Y(sl_{n+1})`; for
    /// `sl_2` this is `ℂ²(a)` with `ξ(u) = 1 + ħ diag(1,-1)/(u-a)`.
    pub fn evaluation(cartan: Arc<CartanData>, a: F, hbar: F) -> Result<Self> {
        let n = cartan.rank();
        let is_type_a = (0..n).all(|i| (0..n).all(|j| cartan.a(i, j) == if i == j { 2 } else if i.abs_diff(j) == 1 { -1 } else { 0 }));
        if !is_type_a || cartan.d(0) != 1 {
            return Err(YrkError::UnsupportedCartan("evaluation modules are built in for type A only".into()));
        }
        let dim = n + 1;
        let e = |i, j| Mat::<F>::unit(dim, i, j);
        let half = hbar.mul_ref(&F::from_ratio(1, 2));
        let mut xi0 = Vec::new();
        let mut xp0 = Vec::new();
        let mut xm0 = Vec::new();
        let mut t1 = Vec::new();
        for i in 0..n {
            let h = e(i, i).sub(&e(i + 1, i + 1));
            let h2 = e(i, i).add(&e(i + 1, i + 1));
            let p = a.add_ref(&half.mul_ref(&F::from_i64(i as i64)));
            t1.push(h.scale(&p).sub(&h2.scale(&half)));
            xi0.push(h);
            xp0.push(e(i, i + 1));
            xm0.push(e(i + 1, i));
        }
        Self::new(cartan, hbar, xi0, xp0, xm0, t1, Provenance::Evaluation { a })
    }

    /// `ℂ²(a)` for `Y(sl_2)`.
    pub fn sl2_evaluation(a: F, hbar: F) -> Self {
        Self::evaluation(CartanData::sl2(), a, hbar).expect("sl2 evaluation module")
    }

    /// Pullback along the shift automorphism `τ_a`: `t_{i,1} ↦ t_{i,1} + a ξ_{i,0}`.
    pub fn shift(&self, a: &F) -> Self {
        let t1 = self.t1.iter().zip(&self.xi0).map(|(t, x)| t.add(&x.scale(a))).collect();
        let mut r = Self::new(
            self.cartan.clone(),
            self.hbar.clone(),
            self.xi0.clone(),
            self.xp0.clone(),
            self.xm0.clone(),
            t1,
            Provenance::Shift { a: a.clone(), inner: Box::new(self.provenance.clone()) },
        )
        .expect("shapes unchanged");
        r.declared_poles = self.declared_poles.iter().map(|p| p.add_ref(a)).collect();
        r
    }

    /// The same module over the float backend.
    pub fn to_float(&self) -> Representation<Complex64> {
        let m = |v: &[Mat<F>]| v.iter().map(Mat::to_c64).collect::<Vec<_>>();
        Representation::new(
            self.cartan.clone(),
            self.hbar.to_c64(),
            m(&self.xi0),
            m(&self.xp0),
            m(&self.xm0),
            m(&self.t1),
            self.provenance.to_float(),
        )
        .expect("shape already validated")
        .with_declared_poles(self.declared_poles.iter().map(Scalar::to_c64).collect())
    }

    pub fn with_declared_poles(mut self, poles: Vec<F>) -> Self {
        self.declared_poles = poles;
        self
    }

    /// Copy with `x^-_{i,0}` multiplied by `c` on every node; used to build
    /// deliberately inconsistent data.
    pub fn with_scaled_xm0(&self, c: &F) -> Self {
        let xm0 = self.xm0.iter().map(|m| m.scale(c)).collect();
        Self::new(
            self.cartan.clone(),
            self.hbar.clone(),
            self.xi0.clone(),
            self.xp0.clone(),
            xm0,
            self.t1.clone(),
            Provenance::Custom,
        )
        .expect("shapes unchanged")
    }

    pub fn cartan(&self) -> &Arc<CartanData> {
        &self.cartan
    }

    pub fn hbar(&self) -> &F {
        &self.hbar
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn xi0(&self) -> &[Mat<F>] {
        &self.xi0
    }

    pub fn xp0(&self) -> &[Mat<F>] {
        &self.xp0
    }

    pub fn xm0(&self) -> &[Mat<F>] {
        &self.xm0
    }

    pub fn t1(&self) -> &[Mat<F>] {
        &self.t1
    }

    pub fn provenance(&self) -> &Provenance<F> {
        &self.provenance
    }

    pub fn declared_poles(&self) -> &[F] {
        &self.declared_poles
    }

    /// Candidate poles: declared ones first, then those implied by provenance.
    pub fn pole_hints(&self) -> Vec<F> {
        let mut h = self.declared_poles.clone();
        for p in self.provenance.pole_hints(&self.hbar, self.rank()) {
            if !h.contains(&p) {
                h.push(p);
            }
        }
        h
    }

    /// Fields of node `i`.
    pub fn currents(&self, i: usize) -> Result<&Currents<F>> {
        if self.currents.get().is_none() {
            let all = (0..self.rank()).map(|k| Currents::compute(self, k)).collect::<Result<Vec<_>>>()?;
            let _ = self.currents.set(all);
        }
        Ok(&self.currents.get().expect("initialized")[i])
    }

    /// Modes `x^±_{i,r}`, `ξ_{i,r}` for `r < count`.
    pub fn modes(&self, i: usize, count: usize) -> Modes<F> {
        Modes::compute(self, i, count)
    }

    /// `t_{i,r}` for `r < count`, from `t_i(u) = log ξ_i(u)`.
    pub fn t_modes(&self, i: usize, count: usize) -> Result<Vec<Mat<F>>> {
        let m = self.modes(i, count);
        let mut coeffs = vec![Mat::identity(self.dim)];
        coeffs.extend(m.xi.iter().map(|x| x.scale(&self.hbar)));
        let log = PowerSeries::new(coeffs).log()?;
        let inv = self.hbar.inv().expect("ħ nonzero");
        Ok((0..count).map(|r| log.coeff(r + 1).scale(&inv)).collect())
    }

    /// Poles of all fields, with multiplicity in the common denominator.
    pub fn pole_set(&self) -> Result<Vec<(F, usize)>> {
        let hints = self.pole_hints();
        let mut out: Vec<(F, usize)> = Vec::new();
        for i in 0..self.rank() {
            let c = self.currents(i)?;
            for m in [&c.xp, &c.xm, &c.xi] {
                merge_poles(&mut out, m.poles(&hints)?);
            }
        }
        Ok(out)
    }

    /// `ξ_{i,0}` eigenvalues on the basis vectors, when all `ξ_{i,0}` are diagonal.
    pub fn weights(&self) -> Option<Vec<Vec<F>>> {
        if !self.xi0.iter().all(|m| m.is_diagonal()) {
            return None;
        }
        Some((0..self.dim).map(|k| self.xi0.iter().map(|m| m[(k, k)].clone()).collect()).collect())
    }

    /// Conjugate by `p`: the new basis is given by the columns of `p`.
    pub fn change_basis(&self, p: &Mat<F>) -> Result<Self> {
        let pinv = p.inverse()?;
        let conj = |v: &[Mat<F>]| v.iter().map(|m| pinv.mul(m).mul(p)).collect::<Vec<_>>();
        let mut r = Self::new(
            self.cartan.clone(),
            self.hbar.clone(),
            conj(&self.xi0),
            conj(&self.xp0),
            conj(&self.xm0),
            conj(&self.t1),
            self.provenance.clone(),
        )?;
        r.declared_poles = self.declared_poles.clone();
        Ok(r)
    }

    /// A basis in which every `ξ_{i,0}` is diagonal, with the conjugated
    /// representation. Returns the identity if already diagonal.
    pub fn weight_basis(&self) -> Result<(Mat<F>, Self)> {
        if self.weights().is_some() {
            return Ok((Mat::identity(self.dim), self.clone()));
        }
        let je = joint_eigenbasis(&self.xi0, &[])?;
        let r = self.change_basis(&je.basis)?;
        Ok((je.basis, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::RatFun;
    use crate::scalar::GaussRat;

    fn q(p: i64, d: i64) -> GaussRat {
        GaussRat::from_ratio(p, d)
    }

    #[test]
    fn sl2_evaluation_fields() {
        let a = q(13, 10);
        let hbar = q(1, 1);
        let v = Representation::sl2_evaluation(a.clone(), hbar.clone());
        let c = v.currents(0).unwrap();
        let pole = RatFun::pole(&a, 1);
        assert_eq!(c.xp, Mat::unit(2, 0, 1).to_ratmat().scale(&pole));
        assert_eq!(c.xm, Mat::unit(2, 1, 0).to_ratmat().scale(&pole));
        let xi = Mat::identity(2).to_ratmat().add(&Mat::diag(vec![q(1, 1), q(-1, 1)]).to_ratmat().scale(&pole));
        assert_eq!(c.xi, xi);
        assert_eq!(v.pole_set().unwrap(), vec![(a, 1)]);
    }

    #[test]
    fn trivial_has_trivial_fields() {
        let v = Representation::<GaussRat>::trivial(CartanData::sl2(), q(1, 1)).unwrap();
        let c = v.currents(0).unwrap();
        assert!(c.xp.is_zero() && c.xm.is_zero());
        assert!(c.xi.is_identity());
        assert!(v.pole_set().unwrap().is_empty());
    }

    #[test]
    fn t_modes_start_with_zero_modes() {
        let v = Representation::sl2_evaluation(q(-2, 1), q(1, 2));
        let t = v.t_modes(0, 2).unwrap();
        assert_eq!(t[0], v.xi0()[0]);
        assert_eq!(t[1], v.t1()[0]);
    }

    #[test]
    fn shift_moves_poles() {
        let v = Representation::sl2_evaluation(q(1, 3), q(1, 1));
        let w = v.shift(&q(2, 1));
        assert_eq!(w.pole_set().unwrap(), vec![(q(7, 3), 1)]);
    }

    #[test]
    fn weight_basis_diagonalizes() {
        let v = Representation::sl2_evaluation(q(0, 1), q(1, 1));
        let p = Mat::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(-1, 1)]]);
        let w = v.change_basis(&p).unwrap();
        assert!(w.weights().is_none());
        let (_, d) = w.weight_basis().unwrap();
        assert!(d.weights().is_some());
    }
}
