//! Verification of the defining relations of `Y_ħ(g)` on a representation.
//!
//! Field relations are checked as identities of rational matrices in `u`
//! with the second spectral variable fixed at seeded sample points. Zero
//! mode identities and the consistency of `ξ_{i,0}`, `t_{i,1}` with the
//! fields are checked alongside.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::matrix::{Mat, RatMat};
use crate::ratfun::RatFun;
use crate::sampling::Sampler;
use crate::scalar::{Ring, Scalar};

use super::Representation;

/// Outcome of one relation family.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RelationEntry {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub samples: Vec<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RelationReport {
    pub entries: Vec<RelationEntry>,
}

impl RelationReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<&RelationEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

struct Acc {
    residual: f64,
    exact_zero: bool,
}

impl Acc {
    fn new() -> Self {
        Acc { residual: 0.0, exact_zero: true }
    }

    fn ratmat<F: Scalar>(&mut self, m: &RatMat<F>, pts: &[Complex64], scale: f64) {
        if m.is_zero() {
            return;
        }
        self.exact_zero = false;
        self.residual = self.residual.max(m.residual(pts) / scale);
    }

    fn mat<F: Scalar>(&mut self, m: &Mat<F>, scale: f64) {
        if m.is_zero() {
            return;
        }
        self.exact_zero = false;
        self.residual = self.residual.max(m.max_abs() / scale);
    }
}

fn lin<F: Scalar>(c: &F) -> RatFun<F> {
    RatFun::var().sub_ref(&RatFun::constant(c.clone()))
}

fn scal<F: Scalar>(m: &RatMat<F>, f: &RatFun<F>) -> RatMat<F> {
    m.scale(f)
}

/// Nested commutator `[a_0, [a_1, ... [a_{k-1}, b]]]`.
fn nested<F: Scalar>(outer: &[RatMat<F>], inner: &RatMat<F>) -> RatMat<F> {
    outer.iter().rev().fold(inner.clone(), |acc, a| a.commutator(&acc))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Check relations on `v` using `samples` seeded points for the second
/// variable. `tol` applies to the float backend; exact checks require
/// identically vanishing differences.
pub fn verify_relations<F: Scalar>(v: &Representation<F>, seed: u64, samples: usize, tol: f64) -> Result<RelationReport> {
    let n = v.rank();
    let c = v.cartan().clone();
    let hbar = v.hbar().clone();
    let poles: Vec<F> = v.pole_set()?.into_iter().map(|(p, _)| p).collect();
    let radius = 10.0 * hbar.abs();
    let mut sampler = Sampler::new(seed, radius);
    let vs: Vec<F> = (0..samples).map(|_| sampler.point(&poles, 0.05 * hbar.abs())).collect();
    let pole_c: Vec<Complex64> = poles.iter().map(|p| p.to_c64()).collect();
    let upts: Vec<Complex64> = (0..3).map(|_| sampler.point_c64(&pole_c, 0.05 * hbar.abs())).collect();
    let sample_strs: Vec<String> = vs.iter().map(|x| x.to_string()).collect();
    let scale = 1.0_f64.max(
        (0..n)
            .flat_map(|i| [v.xi0()[i].max_abs(), v.xp0()[i].max_abs(), v.xm0()[i].max_abs(), v.t1()[i].max_abs()])
            .fold(0.0, f64::max),
    );
    let cur = (0..n).map(|i| v.currents(i).cloned()).collect::<Result<Vec<_>>>()?;
    let dim = v.dim();

    let mut y = [Acc::new(), Acc::new(), Acc::new(), Acc::new(), Acc::new(), Acc::new()];

    for i in 0..n {
        // Consistency of the zero modes with the fields.
        let t = v.t_modes(i, 2)?;
        y[0].mat(&t[1].sub(&v.t1()[i]), scale);
        y[4].mat(&v.xp0()[i].commutator(&v.xm0()[i]).sub(&v.xi0()[i]), scale);
        for j in 0..n {
            let b = F::from_i64(c.b(i, j));
            y[0].mat(&v.xi0()[i].commutator(&v.xi0()[j]), scale);
            y[0].mat(&v.t1()[i].commutator(&v.t1()[j]), scale);
            y[0].mat(&v.xi0()[i].commutator(&v.t1()[j]), scale);
            if i != j {
                y[4].mat(&v.xp0()[i].commutator(&v.xm0()[j]), scale);
            }
            // Y2, symbolic in u.
            let xi0 = v.xi0()[i].to_ratmat();
            y[1].ratmat(&xi0.commutator(&cur[j].xp).sub(&cur[j].xp.scale_scalar(&b)), &upts, scale);
            y[1].ratmat(&xi0.commutator(&cur[j].xm).add(&cur[j].xm.scale_scalar(&b)), &upts, scale);
            y[1].mat(&v.xi0()[i].commutator(&v.xp0()[j]).sub(&v.xp0()[j].scale(&b)), scale);
            y[1].mat(&v.xi0()[i].commutator(&v.xm0()[j]).add(&v.xm0()[j].scale(&b)), scale);

            let a = hbar.mul_ref(&b).mul_ref(&F::from_ratio(1, 2));
            for vv in &vs {
                let xi_j_v = cur[j].xi.eval(vv)?.to_ratmat();
                let xi_i_v = cur[i].xi.eval(vv)?.to_ratmat();
                // Y1
                y[0].ratmat(&cur[i].xi.commutator(&xi_j_v), &upts, scale);
                for sign in [1i64, -1] {
                    let sg = F::from_i64(sign);
                    let sa = a.mul_ref(&sg);
                    let (xj, xi_cur) = if sign == 1 { (&cur[j].xp, &cur[i].xp) } else { (&cur[j].xm, &cur[i].xm) };
                    let xj0 = if sign == 1 { &v.xp0()[j] } else { &v.xm0()[j] };
                    let xi0m = if sign == 1 { &v.xp0()[i] } else { &v.xm0()[i] };
                    let xj_v = xj.eval(vv)?.to_ratmat();
                    // Y3: (u-v∓a) ξ_i(u) x_j(v) = (u-v±a) x_j(v) ξ_i(u) ∓ 2a x_j(u∓a) ξ_i(u)
                    let lhs = scal(&cur[i].xi.mul(&xj_v), &lin(&vv.add_ref(&sa)));
                    let rhs = scal(&xj_v.mul(&cur[i].xi), &lin(&vv.sub_ref(&sa)))
                        .sub(&xj.shift(&sa.neg_ref()).mul(&cur[i].xi).scale_scalar(&sa.mul_ref(&F::from_i64(2))));
                    y[2].ratmat(&lhs.sub(&rhs), &upts, scale);
                    // Y4: (u-v∓a) x_i(u) x_j(v) = (u-v±a) x_j(v) x_i(u) + ħ([x_{i,0}, x_j(v)] - [x_i(u), x_{j,0}])
                    let lhs = scal(&xi_cur.mul(&xj_v), &lin(&vv.add_ref(&sa)));
                    let corr = xi0m.to_ratmat().commutator(&xj_v).sub(&xi_cur.commutator(&xj0.to_ratmat()));
                    let rhs = scal(&xj_v.mul(xi_cur), &lin(&vv.sub_ref(&sa))).add(&corr.scale_scalar(&hbar));
                    y[3].ratmat(&lhs.sub(&rhs), &upts, scale);
                }
                // Y5: (u-v)[x_i^+(u), x_j^-(v)] = -δ_ij ħ (ξ_i(u) - ξ_i(v))
                let xm_j_v = cur[j].xm.eval(vv)?.to_ratmat();
                let mut d5 = scal(&cur[i].xp.commutator(&xm_j_v), &lin(vv));
                if i == j {
                    d5 = d5.add(&cur[i].xi.sub(&xi_i_v).scale_scalar(&hbar));
                }
                y[4].ratmat(&d5, &upts, scale);
            }
            // Y6: Serre relations.
            if i != j {
                let m = (1 - c.a(i, j)) as usize;
                for sign in [1i64, -1] {
                    let (xi_f, xj_f) = if sign == 1 { (&cur[i].xp, &cur[j].xp) } else { (&cur[i].xm, &cur[j].xm) };
                    let pts: Vec<F> = (0..m).map(|_| sampler.point(&poles, 0.05 * hbar.abs())).collect();
                    let mut args: Vec<RatMat<F>> = vec![xi_f.clone()];
                    for p in pts.iter().skip(1) {
                        args.push(xi_f.eval(p)?.to_ratmat());
                    }
                    let xj_v = xj_f.eval(&pts[0])?.to_ratmat();
                    let mut sum = RatMat::<F>::zeros(dim, dim);
                    for perm in permutations(m) {
                        let outer: Vec<RatMat<F>> = perm.iter().map(|&k| args[k].clone()).collect();
                        sum = sum.add(&nested(&outer, &xj_v));
                    }
                    y[5].ratmat(&sum, &upts, scale);
                }
            }
        }
    }
    let names = ["Y1", "Y2", "Y3", "Y4", "Y5", "Y6"];
    let entries = y
        .iter()
        .zip(names)
        .map(|(acc, name)| {
            let (residual, pass, tolerance) = if F::EXACT {
                (if acc.exact_zero { 0.0 } else { acc.residual.max(f64::MIN_POSITIVE) }, acc.exact_zero, 0.0)
            } else {
                (acc.residual, acc.residual <= tol, tol)
            };
            RelationEntry { name: name.to_string(), residual, tolerance, pass, samples: sample_strs.clone() }
        })
        .collect();
    Ok(RelationReport { entries })
}

impl<F: Scalar> Representation<F> {
    /// See [`verify_relations`].
    pub fn verify_relations(&self, seed: u64, samples: usize, tol: f64) -> Result<RelationReport> {
        verify_relations(self, seed, samples, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanData;
    use crate::scalar::GaussRat;

    #[test]
    fn evaluation_modules_satisfy_relations() {
        let v = Representation::sl2_evaluation(GaussRat::from_parts((-2, 1), (1, 1)), GaussRat::from_i64(1));
        let r = v.verify_relations(1, 3, 0.0).unwrap();
        assert!(r.ok(), "{r:?}");
        for name in ["A2", "A3"] {
            let v = Representation::evaluation(CartanData::builtin(name).unwrap(), GaussRat::from_ratio(3, 10), GaussRat::from_ratio(1, 2)).unwrap();
            let r = v.verify_relations(2, 2, 0.0).unwrap();
            assert!(r.ok(), "{name}: {r:?}");
        }
    }

    #[test]
    fn scaled_lowering_operator_fails() {
        let v = Representation::sl2_evaluation(GaussRat::from_i64(0), GaussRat::from_i64(1)).with_scaled_xm0(&GaussRat::from_i64(2));
        let r = v.verify_relations(1, 2, 0.0).unwrap();
        assert!(!r.ok());
        assert!(r.get("Y5").unwrap().residual > 1e-2);
    }
}
