use proptest::prelude::*;

use padic_sigma::pipeline::{default_digits, run_sigma, specialized_curve, universal_curve, with_retry, Ratio};
use padic_sigma::scalar::{PadicCtx, PadicScalar, Scalar, UnivScalar};
use padic_sigma::series::TruncSeries;
use padic_sigma::sigma::beta_closed_form;
use padic_sigma::verify::check_ode;
use padic_sigma::SigmaError;

/// Below the machine-word digit cap for every prime used here.
const DIGITS: i64 = 14;

fn ctx(p: u64) -> PadicCtx {
    PadicCtx::new(p, DIGITS)
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(5u64), Just(7), Just(11), Just(13)]
}

fn series(c: &PadicCtx, cs: &[i64], start: i64) -> TruncSeries<PadicScalar> {
    TruncSeries::new(c, start, cs.iter().map(|&n| PadicScalar::from_int(c, n)).collect())
}

/// Coefficientwise agreement wherever both sides are known to at least `floor` digits.
fn agree(a: &TruncSeries<PadicScalar>, b: &TruncSeries<PadicScalar>, upto: i64, floor: i64) -> std::result::Result<(), String> {
    for n in 0..upto {
        let (x, y) = (a.coeff(n), b.coeff(n));
        let e = x.abs_prec().min(y.abs_prec());
        if e < floor || !x.congruent(&y, e) {
            return Err(format!("t^{n}: {x:?} vs {y:?}"));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn padic_ring_axioms(p in prime(), a in -10_000i64..10_000, b in -10_000i64..10_000, c in -10_000i64..10_000) {
        let k = ctx(p);
        let (x, y, z) = (PadicScalar::from_int(&k, a), PadicScalar::from_int(&k, b), PadicScalar::from_int(&k, c));
        prop_assert!(x.add(&y).add(&z).congruent(&x.add(&y.add(&z)), DIGITS));
        prop_assert!(x.mul(&y).congruent(&y.mul(&x), DIGITS));
        prop_assert!(x.mul(&y.add(&z)).congruent(&x.mul(&y).add(&x.mul(&z)), DIGITS));
        prop_assert!(x.sub(&x).is_zero());
        prop_assert!(x.mul(&y).congruent(&PadicScalar::from_int(&k, a * b), DIGITS));
    }

    #[test]
    fn padic_units_invert(p in prime(), a in 1i64..1_000_000, s in 0i64..4) {
        let k = ctx(p);
        prop_assume!(a % p as i64 != 0);
        let x = PadicScalar::from_int(&k, a).mul_p_pow(s);
        let y = x.inv().unwrap();
        prop_assert_eq!(y.valuation(), -s);
        prop_assert!(x.mul(&y).congruent(&PadicScalar::one(&k), DIGITS - s));
        let r = PadicScalar::from_ratio(&k, 1, a).unwrap();
        prop_assert!(r.mul_int(a).congruent(&PadicScalar::one(&k), DIGITS));
    }

    #[test]
    fn non_units_do_not_invert(p in prime(), a in -1000i64..1000) {
        let x = PadicScalar::from_int(&ctx(p), a * p as i64).truncate_prec(0);
        prop_assert!(matches!(x.inv(), Err(SigmaError::NotAUnit(_))));
    }

    #[test]
    fn specialization_is_a_ring_homomorphism(
        p in prime(), c in prop::collection::vec(-50i64..50, 4), a4 in -30i64..30, a6 in -30i64..30,
    ) {
        let u = universal_curve(p, 8).unwrap();
        let k = PadicCtx::new(p, 8);
        let (s4, s6) = (PadicScalar::from_int(&k, a4), PadicScalar::from_int(&k, a6));
        prop_assume!(u.h.evaluate(&s4, &s6).is_ok());
        // two weight-12 elements
        let x = u.a4.pow(3).mul_int(c[0]).add(&u.a6.pow(2).mul_int(c[1]));
        let y = u.a4.pow(3).mul_int(c[2]).add(&u.a6.pow(2).mul_int(c[3]));
        let ev = |v: &UnivScalar| v.evaluate(&s4, &s6).unwrap();
        prop_assert!(ev(&x.add(&y)).congruent(&ev(&x).add(&ev(&y)), 8));
        prop_assert!(ev(&x.mul(&y)).congruent(&ev(&x).mul(&ev(&y)), 8));
        let hinv = u.h.inv().unwrap();
        prop_assert!(ev(&x.mul(&hinv)).congruent(&ev(&x).mul(&ev(&u.h).inv().unwrap()), 8));
    }

    #[test]
    fn weights_scale(p in prime(), lam in 1i64..40, a4 in -30i64..30, a6 in -30i64..30) {
        prop_assume!(lam % p as i64 != 0);
        let u = universal_curve(p, 6).unwrap();
        let k = PadicCtx::new(p, 6);
        let l = PadicScalar::from_int(&k, lam);
        let (s4, s6) = (PadicScalar::from_int(&k, a4), PadicScalar::from_int(&k, a6));
        prop_assume!(u.h.evaluate(&s4, &s6).is_ok());
        let beta = beta_closed_form(&u, 2).unwrap();
        let w = beta.weight().unwrap();
        prop_assert_eq!(w, 2);
        let scaled = beta.evaluate(&s4.mul(&l.pow(4)), &s6.mul(&l.pow(6))).unwrap();
        let plain = beta.evaluate(&s4, &s6).unwrap();
        prop_assert!(scaled.congruent(&plain.mul(&l.pow(w as u64)), 2));
    }

    #[test]
    fn series_products_associate(p in prime(), a in prop::collection::vec(-99i64..99, 10), b in prop::collection::vec(-99i64..99, 10), c in prop::collection::vec(-99i64..99, 10)) {
        let k = ctx(p);
        let (x, y, z) = (series(&k, &a, 0), series(&k, &b, 0), series(&k, &c, 0));
        agree(&x.mul(&y).mul(&z), &x.mul(&y.mul(&z)), 10, DIGITS).map_err(TestCaseError::fail)?;
        agree(&x.mul(&y.add(&z)), &x.mul(&y).add(&x.mul(&z)), 10, DIGITS).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn composition_associates(p in prime(), a in prop::collection::vec(-9i64..9, 8), b in prop::collection::vec(-9i64..9, 7), c in prop::collection::vec(-9i64..9, 7)) {
        let k = ctx(p);
        let outer = series(&k, &a, 0);
        // inner series with order exactly 1
        let mut bi = b.clone();
        bi[0] = 1;
        let mut ci = c.clone();
        ci[0] = 1;
        let y = series(&k, &bi, 1);
        let z = series(&k, &ci, 1);
        let left = outer.compose(&y).unwrap().compose(&z).unwrap();
        let right = outer.compose(&y.compose(&z).unwrap()).unwrap();
        agree(&left, &right, 8, DIGITS).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn exp_turns_sums_into_products(p in prime(), a in prop::collection::vec(-99i64..99, 10), b in prop::collection::vec(-99i64..99, 10)) {
        let k = ctx(p);
        // p-divisible coefficients keep exp inside the p-adic integers
        let x = series(&k, &a, 1).scale(&PadicScalar::from_int(&k, p as i64)).truncate(11);
        let y = series(&k, &b, 1).scale(&PadicScalar::from_int(&k, p as i64)).truncate(11);
        let lhs = x.add(&y).exp().unwrap();
        let rhs = x.exp().unwrap().mul(&y.exp().unwrap());
        agree(&lhs, &rhs, 11, DIGITS - 6).map_err(TestCaseError::fail)?;
        agree(&lhs.log().unwrap(), &x.add(&y), 11, DIGITS - 6).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn derivative_obeys_leibniz(p in prime(), a in prop::collection::vec(-99i64..99, 10), b in prop::collection::vec(-99i64..99, 10)) {
        let k = ctx(p);
        let (x, y) = (series(&k, &a, 0), series(&k, &b, 0));
        let lhs = x.mul(&y).diff();
        let rhs = x.diff().mul(&y).add(&x.mul(&y.diff()));
        agree(&lhs, &rhs, 9, DIGITS).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_ordinary_curves_satisfy_the_ode(p in prop_oneof![Just(5u64), Just(7)], a4 in -40i64..40, a6 in -40i64..40) {
        let (e, m) = (1, 20);
        let run = with_retry(default_digits(p, e, m), |d| {
            run_sigma(&specialized_curve(p, Ratio::int(a4), Ratio::int(a6), d)?, e, m)
        });
        match run {
            Err(SigmaError::NotAUnit(_)) => return Err(TestCaseError::reject("supersingular")),
            Err(err) => return Err(TestCaseError::fail(err.to_string())),
            Ok(r) => {
                let rep = check_ode(&r.sigma.sigma, &r.exp, &r.zeta.beta(), e, m - 2);
                prop_assert!(rep.passed(), "{}", rep);
                prop_assert!(r.sigma.min_cert(m - 1) >= e);
            }
        }
    }
}
