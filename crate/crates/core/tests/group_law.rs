//! Formal group law of the curve: identity, inverse, commutativity and associativity.
//! Associativity is tested along lines `t_i = c_i s`, which turns every side into a
//! univariate series in `s`.

use padic_sigma::pipeline::{specialized_curve, Ratio};
use padic_sigma::scalar::{PadicScalar, Scalar};
use padic_sigma::series::{BivarSeries, TruncSeries};

const DIGITS: i64 = 10;
const DEG: i64 = 12;

fn law(p: u64, a4: i64, a6: i64) -> BivarSeries<PadicScalar> {
    let cv = specialized_curve(p, Ratio::int(a4), Ratio::int(a6), DIGITS).unwrap();
    cv.expansions(DEG + 4).unwrap().formal_group_law(DEG).unwrap()
}

/// `F(u(s), v(s))` for series `u, v` without constant term.
fn eval(f: &BivarSeries<PadicScalar>, u: &TruncSeries<PadicScalar>, v: &TruncSeries<PadicScalar>) -> TruncSeries<PadicScalar> {
    let ctx = *f.ctx();
    let n = f.prec();
    let mut acc = TruncSeries::zero(&ctx, n);
    for (i, j, c) in f.iter() {
        if c.is_exact_zero() {
            continue;
        }
        let term = u.pow(i as u32).mul(&v.pow(j as u32)).truncate(n).scale(c);
        acc = acc.add(&term);
    }
    acc
}

fn line(ctx: &padic_sigma::scalar::PadicCtx, c: i64) -> TruncSeries<PadicScalar> {
    TruncSeries::monomial(ctx, PadicScalar::from_int(ctx, c), 1, DEG)
}

#[test]
fn identity_and_inverse() {
    for (p, a4, a6) in [(5, 1, 1), (7, 2, 3)] {
        let f = law(p, a4, a6);
        let ctx = *f.ctx();
        let t = line(&ctx, 1);
        let zero = TruncSeries::zero(&ctx, DEG);
        assert!(eval(&f, &t, &zero).first_mismatch(&t, DIGITS - 2, DEG).is_none());
        assert!(eval(&f, &zero, &t).first_mismatch(&t, DIGITS - 2, DEG).is_none());
        // the inverse of (x, y) is (x, -y), so [-1](t) = -t
        let sum = eval(&f, &t, &t.neg());
        assert!(sum.first_nonzero_mod(DIGITS - 2, DEG).is_none(), "F(t, -t) = {sum:?}");
    }
}

#[test]
fn commutative() {
    let f = law(11, 1, 2);
    assert!(f.first_mismatch(&f.swap(), DIGITS - 2, DEG).is_none());
}

#[test]
fn associative_along_lines() {
    for (p, a4, a6) in [(5, 1, 1), (7, 2, 3), (5, -3, 2)] {
        let f = law(p, a4, a6);
        let ctx = *f.ctx();
        for (a, b, c) in [(1, 2, 3), (2, -1, 5), (3, 3, -7)] {
            let (x, y, z) = (line(&ctx, a), line(&ctx, b), line(&ctx, c));
            let left = eval(&f, &eval(&f, &x, &y), &z);
            let right = eval(&f, &x, &eval(&f, &y, &z));
            assert!(left.first_mismatch(&right, DIGITS - 2, DEG).is_none(), "({p},{a4},{a6}) along ({a},{b},{c})");
        }
    }
}

#[test]
fn first_correction_term() {
    // integrating W(F) dF/dt1 = W(t1) with W = 1 + 2 a4 t^4 gives the degree 5 part
    // -2 a4 (t1^4 t2 + 2 t1^3 t2^2 + 2 t1^2 t2^3 + t1 t2^4)
    let f = law(7, 2, 3);
    let v = |i, j| f.coeff(i, j).balanced(DIGITS - 2).unwrap();
    assert_eq!([v(4, 1), v(1, 4), v(3, 2), v(2, 3)], [-4, -4, -8, -8]);
}
