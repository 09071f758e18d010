//! Dense polynomials in `x` over a scalar ring.

use crate::error::{Result, SigmaError};
use crate::scalar::Scalar;
use crate::series::TruncSeries;

#[derive(Clone, Debug)]
pub struct Poly<S: Scalar> {
    ctx: S::Ctx,
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(ctx: &S::Ctx, coeffs: Vec<S>) -> Self {
        let mut p = Poly { ctx: ctx.clone(), coeffs };
        p.trim();
        p
    }

    pub fn from_ints(ctx: &S::Ctx, cs: &[i64]) -> Self {
        Self::new(ctx, cs.iter().map(|&c| S::from_int(ctx, c)).collect())
    }

    pub fn zero(ctx: &S::Ctx) -> Self {
        Poly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn constant(ctx: &S::Ctx, c: S) -> Self {
        Self::new(ctx, vec![c])
    }

    pub fn x(ctx: &S::Ctx) -> Self {
        Self::new(ctx, vec![S::zero(ctx), S::one(ctx)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    /// Degree of the stored coefficient list; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, n: usize) -> S {
        self.coeffs.get(n).cloned().unwrap_or_else(|| S::zero(&self.ctx))
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn lead(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(|| S::zero(&self.ctx))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(&self.ctx, (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(f).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::zero(&self.ctx);
        }
        let mut out: Vec<Option<S>> = vec![None; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                let t = a.mul(b);
                out[i + j] = Some(match out[i + j].take() {
                    Some(s) => s.add(&t),
                    None => t,
                });
            }
        }
        Self::new(&self.ctx, out.into_iter().map(|c| c.unwrap_or_else(|| S::zero(&self.ctx))).collect())
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn deriv(&self) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul_int(i as i64)).collect())
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(&self.ctx), |acc, c| acc.mul(x).add(c))
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divrem_monic(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree();
        if dd < 0 {
            return Err(SigmaError::Internal("division by the zero polynomial".into()));
        }
        if self.degree() < dd {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let qlen = (self.degree() - dd + 1) as usize;
        let mut q = vec![S::zero(&self.ctx); qlen];
        let dd = dd as usize;
        for k in (0..qlen).rev() {
            let c = rem[k + dd].clone();
            if c.is_exact_zero() {
                continue;
            }
            for i in 0..dd {
                rem[k + i] = rem[k + i].sub(&c.mul(&d.coeffs[i]));
            }
            rem[k + dd] = S::zero(&self.ctx);
            q[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(&self.ctx, q), Self::new(&self.ctx, rem)))
    }

    /// `t^(2 deg) P(x(t))` from `xhat = t^2 x(t)`, a power series with constant term 1.
    pub fn homogenized(&self, deg: usize, xhat: &TruncSeries<S>) -> TruncSeries<S> {
        let prec = xhat.prec();
        let t2 = |k: usize| TruncSeries::monomial(&self.ctx, S::one(&self.ctx), 2 * k as i64, prec);
        let mut acc = TruncSeries::constant(&self.ctx, self.coeff(deg), prec);
        for k in (0..deg).rev() {
            acc = acc.mul(xhat).truncate(prec);
            let c = self.coeff(k);
            if !c.is_exact_zero() {
                acc = acc.add(&t2(deg - k).scale(&c));
            }
        }
        acc
    }

    /// Power series quotient `self / d` in `x` to `x^n` exclusive; `d(0)` must be a unit.
    pub fn series_div(&self, d: &Self, n: usize) -> Result<Vec<S>> {
        let c0inv = d.coeff(0).inv()?;
        let mut q: Vec<S> = Vec::with_capacity(n);
        for k in 0..n {
            let mut s = self.coeff(k);
            for i in 1..=k.min(d.coeffs.len().saturating_sub(1)) {
                s = s.sub(&d.coeffs[i].mul(&q[k - i]));
            }
            q.push(s.mul(&c0inv));
        }
        Ok(q)
    }

    /// Lowest degree whose coefficients differ mod `p^e`.
    pub fn first_mismatch(&self, o: &Self, e: i64) -> Option<usize> {
        let n = self.coeffs.len().max(o.coeffs.len());
        (0..n).find(|&i| !self.coeff(i).congruent(&o.coeff(i), e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PadicCtx, PadicScalar};

    #[test]
    fn division_roundtrip() {
        let c = PadicCtx::new(7, 5);
        let a = Poly::<PadicScalar>::from_ints(&c, &[3, 0, 2, 5, 1]);
        let d = Poly::<PadicScalar>::from_ints(&c, &[1, 4, 1]);
        let (q, r) = a.divrem_monic(&d).unwrap();
        assert!(r.degree() < 2);
        assert!(q.mul(&d).add(&r).first_mismatch(&a, 5).is_none());
    }

    #[test]
    fn x_adic_division() {
        let c = PadicCtx::new(7, 5);
        let one = Poly::<PadicScalar>::from_ints(&c, &[1]);
        let d = Poly::<PadicScalar>::from_ints(&c, &[1, -1]);
        let q = one.series_div(&d, 5).unwrap();
        assert!(q.iter().all(|x| x.congruent(&PadicScalar::from_int(&c, 1), 5)));
    }
}
