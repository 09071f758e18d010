use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::scalar::modular::{digit_cap, inv_mod, pow_u128};
use crate::scalar::Scalar;

fn binomial(n: u64, r: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A nonnegative integer as a scalar, reduced to the widest modulus the ring can carry.
pub fn scalar_from_biguint<S: Scalar>(ctx: &S::Ctx, n: &BigUint) -> S {
    let p = S::prime_of(ctx);
    let cap = digit_cap(p);
    let m = BigUint::from(pow_u128(p, cap));
    let r = (n % &m).to_i64().expect("residue fits");
    let exact = n < &m;
    let s = S::from_int(ctx, r);
    if exact {
        s
    } else {
        s.truncate_prec(cap)
    }
}

/// `[x^n] (x^3 + a4 x + a6)^k`.
///
/// Small exponents use exact multinomials, so the result is exact over exact rings.
/// Large exponents use unit parts of factorials modulo `p^cap`.
pub fn f_power_coefficient<S: Scalar>(a4: &S, a6: &S, k: u64, n: u64) -> S {
    let ctx = a4.ctx();
    let p = a4.prime();
    let terms: Vec<(u64, u64, u64)> = (0..=k.min(n / 3))
        .filter_map(|i| {
            let b = n.checked_sub(3 * i)?;
            (i + b <= k).then(|| (i, b, k - i - b))
        })
        .collect();
    if terms.is_empty() {
        return S::zero(&ctx);
    }
    let maxb = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let maxc = terms.iter().map(|t| t.2).max().unwrap_or(0);
    let pw4 = powers(a4, maxb);
    let pw6 = powers(a6, maxc);
    let mult: Box<dyn Fn(u64, u64, u64) -> S> = if k <= 200 {
        Box::new(|i, b, _c| scalar_from_biguint::<S>(&ctx, &(binomial(k, i) * binomial(k - i, b))))
    } else {
        let cap = digit_cap(p);
        let m = pow_u128(p, cap);
        let mut unit = vec![1u128; k as usize + 1];
        let mut val = vec![0i64; k as usize + 1];
        for j in 1..=k as usize {
            let (mut x, mut v) = (j as u128, 0);
            while x % p as u128 == 0 {
                x /= p as u128;
                v += 1;
            }
            unit[j] = unit[j - 1] * (x % m) % m;
            val[j] = val[j - 1] + v;
        }
        let inv = move |x: u128| inv_mod(x, m).expect("unit");
        let ctx = ctx.clone();
        Box::new(move |i, b, c| {
            let (i, b, c, kk) = (i as usize, b as usize, c as usize, k as usize);
            let v = val[kk] - val[i] - val[b] - val[c];
            let u = unit[kk] * inv(unit[i]) % m * inv(unit[b]) % m * inv(unit[c]) % m;
            S::from_int(&ctx, u as i64).truncate_prec(cap).mul_p_pow(v)
        })
    };
    let mut acc = S::zero(&a4.ctx());
    for (i, b, c) in terms {
        acc = acc.add(&mult(i, b, c).mul(&pw4[b as usize]).mul(&pw6[c as usize]));
    }
    acc
}

fn powers<S: Scalar>(a: &S, n: u64) -> Vec<S> {
    let mut out = vec![S::one(&a.ctx())];
    for i in 1..=n as usize {
        out.push(out[i - 1].mul(a));
    }
    out
}

/// The Hasse lift: coefficient of `x^(p-1)` in `f(x)^((p-1)/2)`.
pub fn hasse_lift<S: Scalar>(a4: &S, a6: &S) -> S {
    let p = a4.prime();
    f_power_coefficient(a4, a6, (p - 1) / 2, p - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ExactCtx, ExactPoly};
    use num_rational::BigRational;

    fn exact_h(p: u64) -> ExactPoly {
        let c = ExactCtx { p };
        hasse_lift(&ExactPoly::var_a4(&c), &ExactPoly::var_a6(&c))
    }

    #[test]
    fn residue_path_matches_exact_path() {
        use crate::scalar::{PadicCtx, PadicScalar};
        let c = PadicCtx::new(5, 20);
        let (a4, a6) = (PadicScalar::from_int(&c, 3), PadicScalar::from_int(&c, -7));
        let exact = f_power_coefficient(&a4, &a6, 150, 290);
        // same coefficient through the factorial-unit route: compare against k = 201 shifted by f
        let big = f_power_coefficient(&a4, &a6, 201, 400);
        let f = [(0u64, a6), (1, a4), (3, PadicScalar::from_int(&c, 1))];
        let small: PadicScalar = f.iter().fold(PadicScalar::zero(&c), |acc, (d, coef)| {
            acc.add(&coef.mul(&f_power_coefficient(&a4, &a6, 200, 400 - d)))
        });
        assert!(big.congruent(&small, 15));
        assert!(exact.abs_prec() >= 15);
    }

    #[test]
    fn universal_hasse_lifts() {
        let r = |n: i64| BigRational::from_integer(n.into());
        let h5 = exact_h(5);
        assert_eq!(h5.coeff(1, 0), r(2));
        assert_eq!(h5.terms().count(), 1);
        let h7 = exact_h(7);
        assert_eq!(h7.coeff(0, 1), r(3));
        assert_eq!(h7.terms().count(), 1);
        let h11 = exact_h(11);
        assert_eq!(h11.coeff(1, 1), r(20));
        assert_eq!(h11.terms().count(), 1);
        assert_eq!(h11.weight(), Some(10));
    }
}
