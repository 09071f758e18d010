use crate::poly::Poly;
use crate::scalar::Scalar;

use super::Curve;

/// Division polynomials `P_n` with `psi_n = P_n` for odd `n` and `psi_n = 2y P_n` for even `n`,
/// for `0 <= n <= upto`, with `y^2` replaced by `f(x)`.
pub fn division_polynomials<S: Scalar>(curve: &Curve<S>, upto: usize) -> Vec<Poly<S>> {
    let c = curve.ctx();
    let (a4, a6) = (&curve.a4, &curve.a6);
    let s = |v: S| v;
    let i = |n: i64| S::from_int(&c, n);
    let mut ps: Vec<Poly<S>> = Vec::with_capacity(upto + 1);
    ps.push(Poly::zero(&c));
    ps.push(Poly::constant(&c, i(1)));
    ps.push(Poly::constant(&c, i(1)));
    // 3x^4 + 6 a4 x^2 + 12 a6 x - a4^2
    ps.push(Poly::new(&c, vec![s(a4.mul(a4).neg()), a6.mul_int(12), a4.mul_int(6), i(0), i(3)]));
    // 2(x^6 + 5 a4 x^4 + 20 a6 x^3 - 5 a4^2 x^2 - 4 a4 a6 x - 8 a6^2 - a4^3)
    ps.push(
        Poly::new(
            &c,
            vec![
                a6.mul(a6).mul_int(-8).sub(&a4.pow(3)),
                a4.mul(a6).mul_int(-4),
                a4.mul(a4).mul_int(-5),
                a6.mul_int(20),
                a4.mul_int(5),
                i(0),
                i(1),
            ],
        )
        .scale(&i(2)),
    );
    let f = curve.f_poly();
    let f2_16 = f.square().scale(&i(16));
    for n in 5..=upto {
        let m = n / 2;
        let next = if n % 2 == 1 {
            let a = ps[m + 2].mul(&ps[m].square().mul(&ps[m]));
            let b = ps[m - 1].mul(&ps[m + 1].square().mul(&ps[m + 1]));
            if m % 2 == 0 {
                f2_16.mul(&a).sub(&b)
            } else {
                a.sub(&f2_16.mul(&b))
            }
        } else {
            let inner = ps[m + 2].mul(&ps[m - 1].square()).sub(&ps[m - 2].mul(&ps[m + 1].square()));
            ps[m].mul(&inner)
        };
        ps.push(next);
    }
    ps.truncate(upto + 1);
    ps
}

/// `psi_p` for the odd prime `p` of the scalar ring.
pub fn psi_p<S: Scalar>(curve: &Curve<S>) -> Poly<S> {
    let p = curve.p() as usize;
    division_polynomials(curve, p).pop().expect("nonempty")
}
