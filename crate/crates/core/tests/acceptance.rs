//! Acceptance battery: every criterion from the suite, cross-checked against
//! independent oracles, reported as one line per criterion.

use std::collections::BTreeMap;

use num_complex::Complex64;
use statrs::function::gamma::gamma;
use yrk::cartan::{CartanData, LaurentPoly};
use yrk::matrix::Mat;
use yrk::repn::Representation;
use yrk::rfull::rfull;
use yrk::rminus::rminus_recursive;
use yrk::rzero::{abelian_a, g_series, Direction};
use yrk::scalar::{GaussRat, Ring, Scalar};
use yrk::suite::{full_suite, PRODUCT_TOL};

const SEED: u64 = 20_240_601;

type Q = GaussRat;

fn c2(a: Q) -> Representation<Q> {
    Representation::sl2_evaluation(a, Q::one())
}

/// `R⁻` on `ℂ²(0) ⊗ ℂ²(0)` at `s = 3` is `1 + E₂₁/3` in the basis `e_i ⊗ e_j`.
fn oracle_rminus_literal() -> (bool, String) {
    let v = c2(Q::zero());
    let r = rminus_recursive(&v, &v, None).unwrap().matrix.eval(&GaussRat::from_ratio(3, 1)).unwrap();
    let mut expect = Mat::<Q>::identity(4);
    expect[(2, 1)] = GaussRat::from_ratio(1, 3);
    (r == expect, "R⁻(3) = 1 + E₂₁/3".into())
}

/// The `s^{-1}` coefficient on `ℂ² ⊗ ℂ²` at `ħ = 1` is the Casimir `P - 1/2`.
fn oracle_casimir_literal() -> (bool, String) {
    let v = c2(Q::zero());
    let series = rfull(&v, &v, Direction::Up).unwrap().series(1).unwrap();
    let half = GaussRat::from_ratio(1, 2);
    let mut p = Mat::<Q>::zeros(4, 4);
    for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        p[(r, c)] = Q::one();
    }
    let expect = p.sub(&Mat::identity(4).scale(&half));
    (series.coeff(1) == &expect, "Ω = P - 1/2".into())
}

/// `R^{0,↑}(5)` on the top vector against `Γ(5/2) Γ(7/2) / Γ(3)²`.
fn oracle_gamma() -> (bool, String) {
    let v = Representation::sl2_evaluation(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let r = abelian_a(&v, &v).unwrap().product(Complex64::new(5.0, 0.0), Direction::Up, PRODUCT_TOL).unwrap();
    let expect = gamma(2.5) * gamma(3.5) / (gamma(3.0) * gamma(3.0));
    let err = (r.matrix[(0, 0)] - expect).norm();
    (err <= 1e-8, format!("|R^(0,up)(5) - Γ quotient| = {err:.2e}"))
}

fn oracle_q_coupling() -> (bool, String) {
    let a1 = CartanData::builtin("A1").unwrap().q_coupling().unwrap();
    let a2 = CartanData::builtin("A2").unwrap().q_coupling().unwrap();
    let qq = LaurentPoly::new(-1, vec![1, 0, 1]);
    let one = LaurentPoly::new(0, vec![1]);
    let ok = a1[0][0] == one && a2[0][0] == qq && a2[1][1] == qq && a2[0][1] == one && a2[1][0] == one;
    (ok, "c(q) literal for A1, A2".into())
}

/// Bernoulli numbers with `B₁ = +1/2`, through `B₈`.
fn oracle_bernoulli() -> (bool, String) {
    let lit = [(1, 1), (1, 2), (1, 6), (0, 1), (-1, 30), (0, 1), (1, 42), (0, 1), (-1, 30)];
    let g = g_series::<Q>(lit.len());
    let ok = g.iter().zip(lit).all(|(x, (p, d))| *x == GaussRat::from_ratio(p, d));
    (ok, "g_k = B_k through k = 8".into())
}

fn oracle_determinism() -> (bool, String) {
    let a = full_suite(SEED).canonical_json();
    let b = full_suite(SEED).canonical_json();
    (a == b, "identical canonical reports for equal seeds".into())
}

#[test]
fn acceptance() {
    let report = full_suite(SEED);
    let mut by_criterion: BTreeMap<String, (usize, usize, f64)> = BTreeMap::new();
    for c in &report.checks {
        let key = c.id.split('.').next().unwrap_or(&c.id).to_string();
        let e = by_criterion.entry(key).or_insert((0, 0, 0.0));
        e.0 += 1;
        if c.pass {
            e.1 += 1;
        } else {
            eprintln!("  failed check {}: residual {:e}, tol {:e}, {:?}", c.id, c.residual, c.tol, c.note);
        }
        if c.residual.is_finite() && c.tol > 0.0 {
            e.2 = e.2.max(c.residual);
        }
    }

    let mut oracles: BTreeMap<&str, Vec<(bool, String)>> = BTreeMap::new();
    oracles.entry("C03").or_default().push(oracle_rminus_literal());
    oracles.entry("C04").or_default().push(oracle_casimir_literal());
    oracles.entry("C07").or_default().push(oracle_gamma());
    oracles.entry("C13").or_default().push(oracle_q_coupling());
    oracles.entry("C14").or_default().push(oracle_bernoulli());

    println!();
    let mut all = true;
    for k in 1..=15 {
        let id = format!("C{k:02}");
        let (total, passed, worst) = by_criterion.get(&id).copied().unwrap_or((0, 0, 0.0));
        let extra = oracles.get(id.as_str()).cloned().unwrap_or_default();
        let ok = total > 0 && passed == total && extra.iter().all(|o| o.0);
        all &= ok;
        let notes: Vec<String> = extra.iter().map(|o| format!("{} [{}]", o.1, if o.0 { "ok" } else { "FAIL" })).collect();
        println!(
            "{id} {}  checks {passed}/{total}  max residual {worst:.2e}{}",
            if ok { "PASS" } else { "FAIL" },
            if notes.is_empty() { String::new() } else { format!("  oracle: {}", notes.join("; ")) }
        );
    }
    let (det, msg) = oracle_determinism();
    all &= det;
    println!("determinism {}  {msg}", if det { "PASS" } else { "FAIL" });
    println!("suite wall time {:.1}s", report.wall_time_s);
    assert!(all, "acceptance criteria failed");
}
