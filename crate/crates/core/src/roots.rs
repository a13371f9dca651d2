//! Polynomial roots: Aberth–Ehrlich iteration, exact recognition of
//! Gaussian-rational roots, and clustering on the float backend.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, YrkError};
use crate::poly::Poly;
use crate::scalar::{GaussRat, Scalar};

/// Relative distance under which float roots are merged into one cluster.
pub const POLE_CLUSTER_TOL: f64 = 1e-6;

fn horner_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots of the polynomial with ascending coefficients `c`,
/// repeated according to multiplicity.
pub fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = c.to_vec();
    while c.last().is_some_and(|a| a.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    for a in c.iter_mut() {
        *a /= lead;
    }
    // Zero roots are split off exactly.
    let mut zeros = 0;
    while zeros < n && c[zeros].norm() == 0.0 {
        zeros += 1;
    }
    let c = &c[zeros..];
    let m = c.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    if m == 0 {
        return out;
    }
    if m == 1 {
        out.push(-c[0]);
        return out;
    }
    let center = -c[m - 1] / m as f64;
    let radius = (1..=m).map(|k| c[m - k].norm().powf(1.0 / k as f64)).fold(0.0, f64::max) * 2.0;
    let radius = radius.max(1e-3);
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| center + Complex64::from_polar(radius, 2.0 * PI * k as f64 / m as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut moved: f64 = 0.0;
        for k in 0..m {
            let (p, dp) = horner_with_derivative(c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..m).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let offset = ratio / (1.0 - ratio * s);
            if offset.is_finite() {
                z[k] -= offset;
                moved = moved.max(offset.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    out.extend(z);
    out
}

/// Roots with multiplicities. On the exact backend every root must be a
/// Gaussian rational: roots are seeded from `hints`, recognized from
/// numeric approximations, and accepted only after exact verification.
/// On the float backend numeric roots are clustered.
pub fn roots<F: Scalar>(p: &Poly<F>, hints: &[F]) -> Result<Vec<(F, usize)>> {
    if p.is_zero() {
        return Err(YrkError::RootFinding("zero polynomial".into()));
    }
    if F::EXACT {
        exact_roots(p, hints)
    } else {
        Ok(float_roots(p))
    }
}

fn exact_roots<F: Scalar>(p: &Poly<F>, hints: &[F]) -> Result<Vec<(F, usize)>> {
    let mut rest = p.monic();
    let mut out: Vec<(F, usize)> = Vec::new();
    let take = |rest: &mut Poly<F>, r: F, out: &mut Vec<(F, usize)>| {
        let m = rest.root_multiplicity(&r);
        if m > 0 {
            let f = Poly::linear_root(&r).pow(m as u32);
            *rest = rest.div_rem(&f).map(|(q, _)| q).unwrap_or_else(|_| rest.clone());
            out.push((r, m));
        }
    };
    for h in hints {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        take(&mut rest, h.clone(), &mut out);
    }
    if rest.degree().unwrap_or(0) > 0 {
        let sqf = rest.square_free();
        let mut approx = aberth(&sqf.to_c64().coeffs().to_vec());
        polish(&sqf.to_c64(), &mut approx);
        for z in approx {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            for cand in GaussRat::candidates(z, 1e-10) {
                let r = F::from_gauss(&cand);
                if rest.eval(&r).is_zero() {
                    take(&mut rest, r, &mut out);
                    break;
                }
            }
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let sqf = rest.square_free().monic();
        if sqf.degree() == Some(1) {
            take(&mut rest, sqf.coeff(0).neg_ref(), &mut out);
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        log::warn!("polynomial has roots outside Q(i): {rest}");
        return Err(YrkError::RootFinding(format!("roots of {rest} are not Gaussian rationals")));
    }
    Ok(out)
}

fn polish(p: &Poly<Complex64>, z: &mut [Complex64]) {
    let c = p.coeffs();
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = horner_with_derivative(c, *r);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
}

fn float_roots<F: Scalar>(p: &Poly<F>) -> Vec<(F, usize)> {
    let z = aberth(&p.to_c64().coeffs().to_vec());
    cluster(&z)
        .into_iter()
        .filter_map(|(c, m)| F::from_c64(c).map(|f| (f, m)))
        .collect()
}

/// Equality of points: exact on the exact backend, within the cluster
/// tolerance on the float backend.
pub fn same_point<F: Scalar>(a: &F, b: &F) -> bool {
    if F::EXACT {
        a == b
    } else {
        a.sub_ref(b).abs() <= POLE_CLUSTER_TOL * (1.0 + a.abs())
    }
}

/// Group nearby complex numbers; returns centroids with counts.
pub fn cluster(z: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &w in z {
        match groups.iter_mut().find(|g| {
            let c: Complex64 = g.iter().sum::<Complex64>() / g.len() as f64;
            (c - w).norm() <= POLE_CLUSTER_TOL * (1.0 + w.norm()) * 1e2
        }) {
            Some(g) => g.push(w),
            None => groups.push(vec![w]),
        }
    }
    groups
        .into_iter()
        .map(|g| (g.iter().sum::<Complex64>() / g.len() as f64, g.len()))
        .collect()
}

/// Zeros of `p` counted with multiplicity, as a flat list.
pub fn flat_roots<F: Scalar>(p: &Poly<F>, hints: &[F]) -> Result<Vec<F>> {
    Ok(roots(p, hints)?
        .into_iter()
        .flat_map(|(r, m)| std::iter::repeat_n(r, m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;

    #[test]
    fn exact_roots_with_multiplicity() {
        let r1 = GaussRat::from_parts((13, 10), (0, 1));
        let r2 = GaussRat::from_parts((-2, 1), (1, 1));
        let r3 = GaussRat::from_parts((1, 3), (-1, 7));
        let p = Poly::from_roots(&[r1.clone(), r1.clone(), r2.clone(), r3.clone(), r3.clone(), r3.clone()]);
        let mut rs = roots(&p, &[]).unwrap();
        rs.sort_by_key(|(_, m)| *m);
        assert_eq!(rs.len(), 3);
        assert!(rs.contains(&(r2, 1)));
        assert!(rs.contains(&(r1, 2)));
        assert!(rs.contains(&(r3, 3)));
    }

    #[test]
    fn irrational_roots_are_reported() {
        let p: Poly<GaussRat> = Poly::new(vec![GaussRat::from_i64(-2), GaussRat::zero(), GaussRat::one()]);
        assert!(matches!(roots(&p, &[]), Err(YrkError::RootFinding(_))));
    }

    #[test]
    fn float_roots_cluster() {
        let p: Poly<Complex64> = Poly::from_roots(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-0.5, 2.0),
        ]);
        let rs = roots(&p, &[]).unwrap();
        assert_eq!(rs.len(), 2);
        let double = rs.iter().find(|(_, m)| *m == 2).unwrap();
        assert!((double.0 - Complex64::new(1.0, 0.0)).norm() < 1e-6);
    }
}
