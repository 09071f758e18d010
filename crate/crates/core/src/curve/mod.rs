//! Short Weierstrass curves `y^2 = x^3 + a4 x + a6` and their expansions at
//! the origin in the parameter `t = -x/y`.

pub mod divpoly;
pub mod hasse;

use crate::error::{Result, SigmaError};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::{BivarSeries, Parity, TruncSeries};

pub use hasse::{f_power_coefficient, hasse_lift};

/// Weierstrass model with its Hasse lift and discriminant.
#[derive(Clone, Debug)]
pub struct Curve<S: Scalar> {
    pub a4: S,
    pub a6: S,
    pub h: S,
    pub disc: S,
}

impl<S: Scalar> Curve<S> {
    /// Accepts any coefficients; `require_ordinary` checks that `H` is a unit.
    pub fn new(a4: S, a6: S) -> Self {
        let h = hasse_lift(&a4, &a6);
        let disc = a4.pow(3).mul_int(4).add(&a6.pow(2).mul_int(27)).mul_int(-16);
        Curve { a4, a6, h, disc }
    }

    pub fn ctx(&self) -> S::Ctx {
        self.a4.ctx()
    }

    pub fn p(&self) -> u64 {
        self.a4.prime()
    }

    /// Fails with `NotAUnit` when the reduction is supersingular.
    pub fn require_ordinary(&self) -> Result<S> {
        let err = || SigmaError::NotAUnit(format!("Hasse invariant {:?} is not a unit: the curve is not ordinary", self.h));
        // inv() would happily shift a non-unit into the fraction field
        if self.h.is_zero() || self.h.valuation() != 0 {
            return Err(err());
        }
        self.h.inv().map_err(|_| err())
    }

    /// `f(x) = x^3 + a4 x + a6`.
    pub fn f_poly(&self) -> Poly<S> {
        let c = self.ctx();
        Poly::new(&c, vec![self.a6.clone(), self.a4.clone(), S::zero(&c), S::one(&c)])
    }

    pub fn expansions(&self, m: i64) -> Result<CurveExpansions<S>> {
        CurveExpansions::new(self, m)
    }
}

/// `x(t), y(t), W(t)` and friends, all known modulo `t^m`.
#[derive(Clone, Debug)]
pub struct CurveExpansions<S: Scalar> {
    pub m: i64,
    pub a4: S,
    pub a6: S,
    /// `w(t)/t^3` as a power series with constant term 1.
    pub w_hat: TruncSeries<S>,
    /// `t^2 x(t) = 1 / w_hat`.
    pub x_hat: TruncSeries<S>,
    pub w: TruncSeries<S>,
    pub x: TruncSeries<S>,
    pub y: TruncSeries<S>,
    /// Invariant differential `omega = W(t) dt`.
    pub big_w: TruncSeries<S>,
    pub big_w_inv: TruncSeries<S>,
}

impl<S: Scalar> CurveExpansions<S> {
    pub fn new(curve: &Curve<S>, m: i64) -> Result<Self> {
        let ctx = curve.ctx();
        let l = m + 3;
        let (a4, a6) = (&curve.a4, &curve.a6);
        // w_hat = 1 + a4 t^4 w_hat^2 + a6 t^6 w_hat^3, solved degree by degree
        let n = l as usize;
        let zero = S::zero(&ctx);
        let mut wh = vec![zero.clone(); n];
        let mut sq = vec![zero.clone(); n];
        let mut cu = vec![zero.clone(); n];
        for k in (0..n).step_by(2) {
            let mut c = if k == 0 { S::one(&ctx) } else { zero.clone() };
            if k >= 4 {
                c = c.add(&a4.mul(&sq[k - 4]));
            }
            if k >= 6 {
                c = c.add(&a6.mul(&cu[k - 6]));
            }
            wh[k] = c;
            let mut s = zero.clone();
            for i in (0..=k).step_by(2) {
                s = s.add(&wh[i].mul(&wh[k - i]));
            }
            sq[k] = s;
            let mut s = zero.clone();
            for i in (0..=k).step_by(2) {
                s = s.add(&wh[i].mul(&sq[k - i]));
            }
            cu[k] = s;
        }
        let w_hat = TruncSeries::new(&ctx, 0, wh).set_parity_tag(Parity::Even);
        // the defining cubic must hold identically
        let t4 = TruncSeries::monomial(&ctx, S::one(&ctx), 4, l);
        let t6 = TruncSeries::monomial(&ctx, S::one(&ctx), 6, l);
        let w2 = w_hat.square();
        let rhs = TruncSeries::one(&ctx, l).add(&t4.mul(&w2).scale(a4)).add(&t6.mul(&w2.mul(&w_hat)).scale(a6));
        if let Some((deg, _, _)) = rhs.first_mismatch(&w_hat, i64::MAX / 16, l) {
            if !rhs.coeff(deg).sub(&w_hat.coeff(deg)).is_zero() {
                return Err(SigmaError::ConsistencyFailure(format!("w(t) recurrence fails at t^{deg}")));
            }
        }
        let x_hat = w_hat.reciprocal()?.set_parity_tag(Parity::Even);
        let w = w_hat.shift(3).truncate(m + 3);
        let x = x_hat.shift(-2).truncate(m).set_parity_tag(Parity::Even);
        let y = x_hat.shift(-3).neg().truncate(m).set_parity_tag(Parity::Odd);
        // W = 1 + t w_hat' / (2 w_hat)
        let half = S::from_int(&ctx, 2).inv()?;
        let big_w = TruncSeries::one(&ctx, l)
            .add(&w_hat.diff().mul(&x_hat).shift(1).scale(&half))
            .truncate(m)
            .with_parity(Parity::Even)?;
        let big_w_inv = big_w.reciprocal()?.set_parity_tag(Parity::Even);
        Ok(CurveExpansions { m, a4: a4.clone(), a6: a6.clone(), w_hat, x_hat, w, x, y, big_w, big_w_inv })
    }

    pub fn ctx(&self) -> S::Ctx {
        self.a4.ctx()
    }

    /// The invariant derivation `D h = h'(t) / W(t)`.
    pub fn derive(&self, h: &TruncSeries<S>) -> TruncSeries<S> {
        let out = h.diff().mul(&self.big_w_inv);
        match h.parity() {
            Parity::Mixed => out,
            p => out.set_parity_tag(if p == Parity::Odd { Parity::Even } else { Parity::Odd }),
        }
    }

    /// Coefficient `w_n` of `W(t)`.
    pub fn w_coeff(&self, n: i64) -> S {
        self.big_w.coeff(n)
    }

    /// Formal group law `F(t1, t2)` modulo total degree `prec`, by the chord construction.
    pub fn formal_group_law(&self, prec: i64) -> Result<BivarSeries<S>> {
        let ctx = self.ctx();
        if self.w.prec() < prec + 1 {
            return Err(SigmaError::InvalidConfig(format!(
                "formal group law to degree {prec} needs expansions to t^{}",
                prec + 1
            )));
        }
        let lp = prec + 1;
        // slope of the chord: sum w_n (t1^n - t2^n)/(t1 - t2)
        let mut lambda = BivarSeries::<S>::zero(&ctx, lp);
        for n in 3..=lp {
            let wn = self.w.coeff(n);
            if wn.is_exact_zero() {
                continue;
            }
            let d = (n - 1) as usize;
            if d as i64 >= lp {
                break;
            }
            for i in 0..=d {
                let c = lambda.coeff(i, d - i).add(&wn);
                lambda.set(i, d - i, c);
            }
        }
        let w1 = BivarSeries::from_series(&self.w.truncate(lp), false)?;
        let t1 = BivarSeries::t1(&ctx, lp);
        let t2 = BivarSeries::t2(&ctx, lp);
        let nu = w1.sub(&lambda.mul(&t1));
        let l2 = lambda.mul(&lambda);
        let l3 = l2.mul(&lambda);
        let den = BivarSeries::constant(&ctx, S::one(&ctx), lp).add(&l2.scale(&self.a4)).add(&l3.scale(&self.a6));
        let num = lambda.scale(&self.a4.mul_int(2)).add(&l2.scale(&self.a6.mul_int(3))).mul(&nu);
        let f = t1.add(&t2).add(&num.mul(&den.reciprocal()?));
        Ok(f.truncate(prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PadicCtx, PadicScalar, UnivCtx, UnivScalar};

    fn curve(p: u64, a4: i64, a6: i64, d: i64) -> Curve<PadicScalar> {
        let c = PadicCtx::new(p, d);
        Curve::new(PadicScalar::from_int(&c, a4), PadicScalar::from_int(&c, a6))
    }

    #[test]
    fn low_order_terms() {
        let cv = curve(7, 2, 3, 6);
        let e = cv.expansions(10).unwrap();
        let c = cv.ctx();
        let i = |n| PadicScalar::from_int(&c, n);
        // x = t^-2 - a4 t^2 - a6 t^4 - a4^2 t^6 + ...
        assert!(e.x.coeff(-2).congruent(&i(1), 6));
        assert!(e.x.coeff(2).congruent(&i(-2), 6));
        assert!(e.x.coeff(4).congruent(&i(-3), 6));
        assert!(e.x.coeff(6).congruent(&i(-4), 6));
        // W = 1 + 2 a4 t^4 + 3 a6 t^6 + ...
        assert!(e.big_w.coeff(4).congruent(&i(4), 6));
        assert!(e.big_w.coeff(6).congruent(&i(9), 6));
    }

    #[test]
    fn weierstrass_relation_and_derivation() {
        let cv = curve(5, 1, 1, 6);
        let m = 24;
        let e = cv.expansions(m).unwrap();
        let lhs = e.y.square();
        let rhs = e.x.pow(3).add(&e.x.scale(&cv.a4)).add(&TruncSeries::constant(&cv.ctx(), cv.a6, m));
        assert!(lhs.first_mismatch(&rhs, 6, m - 6).is_none());
        let dx = e.derive(&e.x);
        assert!(dx.first_mismatch(&e.y.scale(&PadicScalar::from_int(&cv.ctx(), 2)), 6, m - 4).is_none());
        assert!(e.x.first_mismatch(&e.x.negate_var(), 6, m).is_none());
        assert!(e.y.first_mismatch(&e.y.negate_var().neg(), 6, m).is_none());
    }

    #[test]
    fn group_law_basics() {
        let cv = curve(5, 1, 1, 6);
        let e = cv.expansions(16).unwrap();
        let f = e.formal_group_law(12).unwrap();
        let c = cv.ctx();
        for (i, j, v) in f.iter() {
            let expect = if (i, j) == (1, 0) || (i, j) == (0, 1) { 1 } else { 0 };
            if j == 0 || i == 0 {
                assert!(v.congruent(&PadicScalar::from_int(&c, expect), 6), "({i},{j}) = {v:?}");
            }
            assert!(v.congruent(&f.coeff(j, i), 6));
        }
        // first nontrivial term of the group law: -2 a4 t1 t2 (t1^3 + t2^3) ... starts at degree 5
        for d in 2..5 {
            for i in 0..=d {
                assert!(f.coeff(i, d - i).is_zero());
            }
        }
    }

    #[test]
    fn universal_weights() {
        let ctx = UnivCtx::new(5, 2);
        let cv = Curve::new(UnivScalar::a4(&ctx), UnivScalar::a6(&ctx));
        let e = cv.expansions(14).unwrap();
        for (n, c) in e.x.iter() {
            if !c.is_exact_zero() {
                assert_eq!(c.weight(), Some(n + 2));
            }
        }
        for (n, c) in e.big_w.iter() {
            if !c.is_exact_zero() {
                assert_eq!(c.weight(), Some(n));
            }
        }
    }

    #[test]
    fn group_law_preserves_the_differential() {
        let cv = curve(5, 1, 1, 8);
        let e = cv.expansions(20).unwrap();
        let f = e.formal_group_law(16).unwrap();
        let lhs = f.compose_into(&e.big_w.truncate(16)).unwrap().mul(&f.d_t1());
        let rhs = BivarSeries::from_series(&e.big_w.truncate(16), false).unwrap();
        assert!(lhs.first_mismatch(&rhs, 8, 15).is_none());
    }
}
