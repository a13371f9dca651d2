//! Seeded sample points for identity checks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{GaussRat, Scalar};

/// Draws points from a disc, rejecting those close to excluded points. On
/// the exact backend points lie on the grid `(ℤ + iℤ)/100`.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    radius: f64,
}

impl Sampler {
    pub fn new(seed: u64, radius: f64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), radius: radius.max(1e-3) }
    }

    /// A point of the disc at distance at least `min_dist` from `avoid`.
    pub fn point<F: Scalar>(&mut self, avoid: &[F], min_dist: f64) -> F {
        let avoid: Vec<Complex64> = avoid.iter().map(|a| a.to_c64()).collect();
        self.point_c64_avoiding(&avoid, min_dist, |z| {
            let re = (z.re * 100.0).round() as i64;
            let im = (z.im * 100.0).round() as i64;
            let g = GaussRat::from_parts((re, 100), (im, 100));
            if F::EXACT {
                F::from_gauss(&g)
            } else {
                F::from_c64(z).expect("float backend")
            }
        })
    }

    /// A real point (exact backend: on the grid `ℤ/100`).
    pub fn real_point<F: Scalar>(&mut self, avoid: &[F], min_dist: f64) -> F {
        for _ in 0..10_000 {
            let x: f64 = self.rng.gen_range(-self.radius..self.radius);
            let p = if F::EXACT {
                F::from_ratio((x * 100.0).round() as i64, 100)
            } else {
                F::from_c64(Complex64::new(x, 0.0)).expect("float backend")
            };
            if avoid.iter().all(|a| (a.to_c64() - p.to_c64()).norm() >= min_dist) {
                return p;
            }
        }
        F::from_i64(0)
    }

    pub fn point_c64(&mut self, avoid: &[Complex64], min_dist: f64) -> Complex64 {
        self.point_c64_avoiding(avoid, min_dist, |z| z).to_c64()
    }

    fn point_c64_avoiding<T: Scalar>(&mut self, avoid: &[Complex64], min_dist: f64, make: impl Fn(Complex64) -> T) -> T {
        let mut last = make(Complex64::new(0.0, 0.0));
        for _ in 0..10_000 {
            let x: f64 = self.rng.gen_range(-self.radius..self.radius);
            let y: f64 = self.rng.gen_range(-self.radius..self.radius);
            if x * x + y * y > self.radius * self.radius {
                continue;
            }
            last = make(Complex64::new(x, y));
            let z = last.to_c64();
            if avoid.iter().all(|a| (a - z).norm() >= min_dist) {
                return last;
            }
        }
        last
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_avoiding() {
        let avoid = vec![GaussRat::from_i64(0), GaussRat::from_i64(1)];
        let mut a = Sampler::new(7, 2.0);
        let mut b = Sampler::new(7, 2.0);
        for _ in 0..20 {
            let p: GaussRat = a.point(&avoid, 0.1);
            assert_eq!(p, b.point(&avoid, 0.1));
            assert!(avoid.iter().all(|q| (q.to_c64() - p.to_c64()).norm() >= 0.1));
            assert!(p.to_c64().norm() <= 2.01);
        }
    }
}
