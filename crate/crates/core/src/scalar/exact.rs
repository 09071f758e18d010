use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Scalar, EXACT};
use crate::error::{Result, SigmaError};

/// The prime used for valuations of exact values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactCtx {
    pub p: u64,
}

/// Polynomial in `A4, A6` with rational coefficients, used for exact identities.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactPoly {
    ctx: ExactCtx,
    terms: BTreeMap<(u32, u32), BigRational>,
}

fn vp_int(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

fn vp_rat(q: &BigRational, p: u64) -> i64 {
    vp_int(q.numer(), p) - vp_int(q.denom(), p)
}

impl ExactPoly {
    pub fn var_a4(ctx: &ExactCtx) -> Self {
        Self::monomial(ctx, BigRational::one(), 1, 0)
    }
    pub fn var_a6(ctx: &ExactCtx) -> Self {
        Self::monomial(ctx, BigRational::one(), 0, 1)
    }
    pub fn monomial(ctx: &ExactCtx, c: BigRational, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        ExactPoly { ctx: *ctx, terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigRational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Reduce modulo `p^e`; `None` if some coefficient is not p-integral.
    pub fn reduce_mod(&self, e: i64) -> Option<BTreeMap<(u32, u32), BigInt>> {
        let m = BigInt::from(self.ctx.p).pow(e as u32);
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            if vp_int(c.denom(), self.ctx.p) > 0 {
                return None;
            }
            let dinv = c.denom().modinv(&m)?;
            let mut r = (c.numer() * dinv) % &m;
            if r < BigInt::zero() {
                r += &m;
            }
            if !r.is_zero() {
                out.insert(*k, r);
            }
        }
        Some(out)
    }

    fn is_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }
}

impl Scalar for ExactPoly {
    type Ctx = ExactCtx;

    fn ctx(&self) -> ExactCtx {
        self.ctx
    }
    fn prime_of(ctx: &ExactCtx) -> u64 {
        ctx.p
    }
    fn zero(ctx: &ExactCtx) -> Self {
        ExactPoly { ctx: *ctx, terms: BTreeMap::new() }
    }
    fn from_int(ctx: &ExactCtx, n: i64) -> Self {
        Self::monomial(ctx, BigRational::from_integer(n.into()), 0, 0)
    }
    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            let e = terms.entry(*k).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        ExactPoly { ctx: self.ctx, terms }
    }
    fn neg(&self) -> Self {
        ExactPoly { ctx: self.ctx, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                *terms.entry((a1 + a2, b1 + b2)).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ExactPoly { ctx: self.ctx, terms }
    }
    fn inv(&self) -> Result<Self> {
        match self.is_constant() {
            Some(c) if !c.is_zero() => Ok(Self::monomial(&self.ctx, c.recip(), 0, 0)),
            _ => Err(SigmaError::NotAUnit("only nonzero constants are invertible in the exact ring".into())),
        }
    }
    fn mul_p_pow(&self, k: i64) -> Self {
        let f = BigRational::from_integer(BigInt::from(self.ctx.p).pow(k.unsigned_abs() as u32));
        let f = if k < 0 { f.recip() } else { f };
        ExactPoly { ctx: self.ctx, terms: self.terms.iter().map(|(key, c)| (*key, c * &f)).collect() }
    }
    fn valuation(&self) -> i64 {
        self.terms.values().map(|c| vp_rat(c, self.ctx.p)).min().unwrap_or(EXACT)
    }
    fn abs_prec(&self) -> i64 {
        EXACT
    }
    fn truncate_prec(&self, _abs: i64) -> Self {
        self.clone()
    }
    fn weight(&self) -> Option<i64> {
        let mut ws = self.terms.keys().map(|(a, b)| 4 * *a as i64 + 6 * *b as i64);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }
    fn is_exact_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let mut s = format!("{c}");
                if *a > 0 {
                    s += &format!("*A4^{a}");
                }
                if *b > 0 {
                    s += &format!("*A6^{b}");
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic() {
        let ctx = ExactCtx { p: 5 };
        let a4 = ExactPoly::var_a4(&ctx);
        let x = a4.mul(&a4).sub(&a4.mul_int(3)).mul_p_pow(-1);
        assert_eq!(x.valuation(), -1);
        assert_eq!(x.mul_p_pow(1).coeff(1, 0), BigRational::from_integer((-3).into()));
        assert_eq!(ExactPoly::from_int(&ctx, 4).inv().unwrap().coeff(0, 0), BigRational::new(1.into(), 4.into()));
        assert!(a4.inv().is_err());
        assert_eq!(a4.weight(), Some(4));
    }
}
