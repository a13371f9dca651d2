use proptest::prelude::*;
use yrk::cartan::LaurentPoly;
use yrk::matrix::RatMat;
use yrk::ratfun::RatFun;
use yrk::report::{CheckRecord, Report};
use yrk::repn::relations::verify_relations;
use yrk::repn::Representation;
use yrk::rminus::rminus_recursive;
use yrk::scalar::{GaussRat, Ring, Scalar};

fn rat() -> impl Strategy<Value = GaussRat> {
    (-40i64..40, 1i64..12).prop_map(|(p, d)| GaussRat::from_ratio(p, d))
}

fn c2(a: GaussRat) -> Representation<GaussRat> {
    Representation::sl2_evaluation(a, GaussRat::one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn q_numbers_are_palindromic(n in 1i64..12) {
        let q = LaurentPoly::q_number(n);
        prop_assert!(q.is_symmetric());
        prop_assert_eq!(q.eval_at_one(), n);
    }

    #[test]
    fn evaluation_modules_satisfy_relations(a in rat(), seed in 0u64..1000) {
        let rep = verify_relations(&c2(a), seed, 3, 0.0).unwrap();
        prop_assert!(rep.ok(), "{:?}", rep);
    }

    #[test]
    fn rminus_on_c2_is_one_plus_rank_one(b in rat()) {
        let v = c2(GaussRat::zero());
        let w = c2(b);
        let r = rminus_recursive(&v, &w, None).unwrap().matrix;
        let xm = v.xm0()[0].map(|x| RatFun::constant(x.clone()));
        let expected = RatMat::identity(4).add(&xm.kron(&w.currents(0).unwrap().xp));
        prop_assert_eq!(r, expected);
    }

    #[test]
    fn rminus_shift_covariance(a in rat(), b in rat()) {
        let (v, w) = (c2(GaussRat::from_ratio(1, 3)), c2(GaussRat::from_ratio(-2, 5)));
        let lhs = rminus_recursive(&v.shift(&a), &w.shift(&b), None).unwrap().matrix;
        let rhs = rminus_recursive(&v, &w, None).unwrap().matrix.compose_affine(&GaussRat::one(), &a.sub_ref(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn report_rows_match_checks(res in proptest::collection::vec(0.0f64..1.0, 0..12)) {
        let mut r = Report::new("p", 1, "exact", "h".into());
        for (k, x) in res.iter().enumerate() {
            r.push(CheckRecord::new(&format!("c{k:02}"), "x = y", vec![], *x, 0.5));
        }
        r.finish(0.0);
        prop_assert_eq!(r.to_csv().lines().count(), res.len() + 1);
        prop_assert_eq!(r.all_pass(), res.iter().all(|&x| x <= 0.5));
    }
}
