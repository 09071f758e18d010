//! Truncated Laurent series in one variable and power series in two.

pub mod bivar;

use crate::error::{Result, SigmaError};
use crate::scalar::Scalar;

pub use bivar::BivarSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
    Mixed,
}

impl Parity {
    fn of_degree(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
    fn times(self, o: Parity) -> Parity {
        match (self, o) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }
    fn plus(self, o: Parity) -> Parity {
        if self == o {
            self
        } else {
            Parity::Mixed
        }
    }
    fn flip(self) -> Parity {
        match self {
            Parity::Odd => Parity::Even,
            Parity::Even => Parity::Odd,
            Parity::Mixed => Parity::Mixed,
        }
    }
}

/// `sum c_n t^n` for `start <= n < prec`, known modulo `t^prec`.
#[derive(Clone, Debug)]
pub struct TruncSeries<S: Scalar> {
    ctx: S::Ctx,
    start: i64,
    coeffs: Vec<S>,
    parity: Parity,
}

impl<S: Scalar> TruncSeries<S> {
    pub fn new(ctx: &S::Ctx, start: i64, coeffs: Vec<S>) -> Self {
        TruncSeries { ctx: ctx.clone(), start, coeffs, parity: Parity::Mixed }
    }

    /// The zero series known modulo `t^prec`.
    pub fn zero(ctx: &S::Ctx, prec: i64) -> Self {
        Self::new(ctx, prec, Vec::new())
    }

    pub fn monomial(ctx: &S::Ctx, c: S, deg: i64, prec: i64) -> Self {
        let mut s = Self::zero(ctx, prec);
        if deg < prec {
            s = Self::new(ctx, deg, std::iter::once(c).chain((deg + 1..prec).map(|_| S::zero(ctx))).collect());
            s.parity = Parity::of_degree(deg);
        }
        s
    }

    pub fn constant(ctx: &S::Ctx, c: S, prec: i64) -> Self {
        Self::monomial(ctx, c, 0, prec)
    }

    pub fn one(ctx: &S::Ctx, prec: i64) -> Self {
        Self::constant(ctx, S::one(ctx), prec)
    }

    /// The variable `t` itself.
    pub fn var(ctx: &S::Ctx, prec: i64) -> Self {
        Self::monomial(ctx, S::one(ctx), 1, prec)
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }
    pub fn start(&self) -> i64 {
        self.start
    }
    /// Exclusive truncation degree.
    pub fn prec(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }
    pub fn parity(&self) -> Parity {
        self.parity
    }
    pub fn set_parity_tag(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    /// Coefficient of `t^n`; zero below the stored range.
    pub fn coeff(&self, n: i64) -> S {
        if n < self.start {
            return S::zero(&self.ctx);
        }
        assert!(n < self.prec(), "coefficient t^{n} beyond truncation t^{}", self.prec());
        self.coeffs[(n - self.start) as usize].clone()
    }

    pub fn coeff_ref(&self, n: i64) -> Option<&S> {
        if n < self.start || n >= self.prec() {
            None
        } else {
            Some(&self.coeffs[(n - self.start) as usize])
        }
    }

    /// `(degree, coefficient)` pairs in the stored range.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &S)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Lowest degree whose coefficient is nonzero at its precision.
    pub fn order(&self) -> Option<i64> {
        self.iter().find(|(_, c)| !c.is_zero()).map(|(n, _)| n)
    }

    /// Smallest absolute precision over the coefficients in `[lo, hi)`.
    pub fn min_abs_prec(&self, lo: i64, hi: i64) -> i64 {
        self.iter().filter(|(n, _)| *n >= lo && *n < hi).map(|(_, c)| c.abs_prec()).min().unwrap_or(crate::scalar::EXACT)
    }

    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec() {
            return self.clone();
        }
        let keep = (prec - self.start).max(0) as usize;
        let start = self.start.min(prec);
        TruncSeries { ctx: self.ctx.clone(), start, coeffs: self.coeffs[..keep].to_vec(), parity: self.parity }
    }

    /// Rewrite storage to begin at `start` (padding with exact zeros or dropping zero-ish leads).
    fn rebase(&self, start: i64) -> Self {
        if start == self.start {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity((self.prec() - start).max(0) as usize);
        for n in start..self.prec() {
            coeffs.push(if n < self.start { S::zero(&self.ctx) } else { self.coeff(n) });
        }
        TruncSeries { ctx: self.ctx.clone(), start, coeffs, parity: self.parity }
    }

    /// Remove coefficients below `t^k`, which must vanish at their precision.
    pub fn drop_below(&self, k: i64) -> Result<Self> {
        if k <= self.start {
            return Ok(self.clone());
        }
        if let Some((n, c)) = self.iter().find(|(n, c)| *n < k && !c.is_zero()) {
            return Err(SigmaError::ConsistencyFailure(format!("expected no t^{n} term, found {c:?}")));
        }
        Ok(self.rebase(k.min(self.prec())))
    }

    /// Drop exactly-zero leading coefficients.
    pub fn strip_zeros(&self) -> Self {
        let k = self.coeffs.iter().take_while(|c| c.is_exact_zero()).count();
        TruncSeries {
            ctx: self.ctx.clone(),
            start: self.start + k as i64,
            coeffs: self.coeffs[k..].to_vec(),
            parity: self.parity,
        }
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        TruncSeries { ctx: self.ctx.clone(), start: self.start, coeffs: self.coeffs.iter().map(f).collect(), parity: self.parity }
    }

    pub fn try_map<T: Scalar>(&self, ctx: &T::Ctx, f: impl Fn(&S) -> Result<T>) -> Result<TruncSeries<T>> {
        Ok(TruncSeries {
            ctx: ctx.clone(),
            start: self.start,
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
            parity: self.parity,
        })
    }

    pub fn truncate_coeff_prec(&self, abs: i64) -> Self {
        self.map(|c| c.truncate_prec(abs))
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec().min(o.prec());
        let start = self.start.min(o.start).min(prec);
        let coeffs = (start..prec)
            .map(|n| match (self.coeff_ref(n), o.coeff_ref(n)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => S::zero(&self.ctx),
            })
            .collect();
        TruncSeries { ctx: self.ctx.clone(), start, coeffs, parity: self.parity.plus(o.parity) }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|c| c.mul(s))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        let parity = if k % 2 == 0 { self.parity } else { self.parity.flip() };
        TruncSeries { ctx: self.ctx.clone(), start: self.start + k, coeffs: self.coeffs.clone(), parity }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = self.strip_zeros();
        let b = o.strip_zeros();
        let prec = (a.prec() + b.start).min(b.prec() + a.start);
        let start = (a.start + b.start).min(prec);
        let len = (prec - start).max(0) as usize;
        let mut acc: Vec<Option<S>> = vec![None; len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_exact_zero() {
                continue;
            }
            let base = (a.start + i as i64 + b.start - start) as usize;
            if base >= len {
                break;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(len - base) {
                if y.is_exact_zero() {
                    continue;
                }
                let t = x.mul(y);
                let slot = &mut acc[base + j];
                *slot = Some(match slot.take() {
                    Some(s) => s.add(&t),
                    None => t,
                });
            }
        }
        let coeffs = acc.into_iter().map(|c| c.unwrap_or_else(|| S::zero(&self.ctx))).collect();
        TruncSeries { ctx: self.ctx.clone(), start, coeffs, parity: self.parity.times(o.parity) }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return TruncSeries::one(&self.ctx, self.prec() - self.start);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse series; the leading coefficient must be invertible in the scalar ring.
    pub fn reciprocal(&self) -> Result<Self> {
        let k = self.order().ok_or_else(|| SigmaError::NotAUnit("series is zero to its precision".into()))?;
        let a = self.rebase(k);
        let c_inv = a.coeffs[0].inv()?;
        let n = a.coeffs.len();
        let mut r: Vec<S> = Vec::with_capacity(n);
        r.push(c_inv.clone());
        let neg_c_inv = c_inv.neg();
        for m in 1..n {
            let mut s: Option<S> = None;
            for i in 1..=m {
                let ai = &a.coeffs[i];
                if ai.is_exact_zero() || r[m - i].is_exact_zero() {
                    continue;
                }
                let t = ai.mul(&r[m - i]);
                s = Some(match s {
                    Some(x) => x.add(&t),
                    None => t,
                });
            }
            r.push(match s {
                Some(x) => x.mul(&neg_c_inv),
                None => S::zero(&self.ctx),
            });
        }
        // a = t^k u with u known mod t^(n); 1/a = t^-k / u known mod t^(n-k)
        let parity = match self.parity {
            Parity::Mixed => Parity::Mixed,
            _ => Parity::of_degree(-k),
        };
        Ok(TruncSeries { ctx: self.ctx.clone(), start: -k, coeffs: r, parity })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.reciprocal()?))
    }

    pub fn diff(&self) -> Self {
        let coeffs = self.iter().map(|(n, c)| c.mul_int(n)).collect::<Vec<_>>();
        // d/dt (c t^n) = n c t^(n-1); the constant term drops out as zero
        TruncSeries { ctx: self.ctx.clone(), start: self.start - 1, coeffs, parity: self.parity.flip() }
    }

    /// Antiderivative with zero constant term.
    pub fn integrate(&self) -> Result<Self> {
        if let Some(r) = self.coeff_ref(-1) {
            if !r.is_zero() {
                return Err(SigmaError::ResiduePresent);
            }
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (n, c) in self.iter() {
            coeffs.push(if n == -1 { S::zero(&self.ctx) } else { c.div_int(n + 1)? });
        }
        let mut out = TruncSeries { ctx: self.ctx.clone(), start: self.start + 1, coeffs, parity: self.parity.flip() };
        if out.start > 0 {
            out = out.rebase(0);
        }
        Ok(out)
    }

    /// Substitute `inner` for `t`. `inner` must have order at least 1.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let inner = inner.strip_zeros();
        let v = match inner.order() {
            Some(v) => v,
            None => return Err(SigmaError::OrderViolation("inner series vanishes to its precision".into())),
        };
        if v < 1 {
            return Err(SigmaError::OrderViolation(format!("inner series has order {v} < 1")));
        }
        // leading coefficients that vanish at their precision are taken as zero
        let inner = inner.rebase(v);
        let outer = self.strip_zeros();
        if outer.start < 0 {
            let s = outer.start;
            let pos = outer.shift(-s);
            let head = pos.compose(&inner)?;
            let inv = inner.reciprocal()?;
            return Ok(head.mul(&inv.pow((-s) as u32)));
        }
        // error from truncating inner at t^pi shows up at order pi + v (n - 1)
        let nmin = outer.iter().find(|(n, c)| *n >= 1 && !c.is_exact_zero()).map(|(n, _)| n);
        let mut prec = outer.prec() * v;
        if let Some(nm) = nmin {
            prec = prec.min(inner.prec() + v * (nm - 1));
        }
        let top = outer.prec() - 1;
        let mut acc = TruncSeries::constant(&self.ctx, outer.coeff(top), prec);
        for n in (outer.start..top).rev() {
            acc = acc.mul(&inner).truncate(prec);
            let c = outer.coeff(n);
            if !c.is_exact_zero() {
                acc = acc.add(&TruncSeries::constant(&self.ctx, c, prec));
            }
        }
        if outer.start > 0 {
            acc = acc.mul(&inner.pow(outer.start as u32)).truncate(prec);
        }
        acc.parity = match (outer.parity, inner.parity) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (_, Parity::Even) => Parity::Even,
            (po, Parity::Odd) => po,
        };
        Ok(acc)
    }

    /// `exp(a)` for `a` of order at least 1.
    pub fn exp(&self) -> Result<Self> {
        if let Some(k) = self.order() {
            if k < 1 {
                return Err(SigmaError::OrderViolation("exp needs a series without constant term".into()));
            }
        }
        let prec = self.prec();
        let a = |k: i64| -> S { if k < self.start { S::zero(&self.ctx) } else { self.coeff(k) } };
        let mut e: Vec<S> = vec![S::one(&self.ctx)];
        for n in 1..prec {
            let mut s: Option<S> = None;
            for k in 1..=n {
                let ak = a(k);
                if ak.is_exact_zero() || e[(n - k) as usize].is_exact_zero() {
                    continue;
                }
                let t = ak.mul_int(k).mul(&e[(n - k) as usize]);
                s = Some(match s {
                    Some(x) => x.add(&t),
                    None => t,
                });
            }
            e.push(match s {
                Some(x) => x.div_int(n)?,
                None => S::zero(&self.ctx),
            });
        }
        let parity = if self.parity == Parity::Even { Parity::Even } else { Parity::Mixed };
        Ok(TruncSeries { ctx: self.ctx.clone(), start: 0, coeffs: e, parity })
    }

    /// `log(a)` for `a = 1 + (order >= 1)`.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if !c0.congruent(&S::one(&self.ctx), c0.abs_prec()) || self.start < 0 && self.order().unwrap_or(0) < 0 {
            return Err(SigmaError::OrderViolation("log needs constant term 1".into()));
        }
        let d = self.diff().div(self)?;
        let out = d.integrate()?;
        Ok(if self.parity == Parity::Even { out.set_parity_tag(Parity::Even) } else { out })
    }

    /// `a(-t)`.
    pub fn negate_var(&self) -> Self {
        let coeffs = self.iter().map(|(n, c)| if n % 2 != 0 { c.neg() } else { c.clone() }).collect();
        TruncSeries { ctx: self.ctx.clone(), start: self.start, coeffs, parity: self.parity }
    }

    /// Check that wrong-parity coefficients vanish at their precision and replace them by exact zeros.
    pub fn with_parity(&self, parity: Parity) -> Result<Self> {
        if parity == Parity::Mixed {
            return Ok(self.clone().set_parity_tag(parity));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (n, c) in self.iter() {
            if Parity::of_degree(n) == parity {
                coeffs.push(c.clone());
            } else if c.is_zero() {
                coeffs.push(S::zero(&self.ctx));
            } else {
                return Err(SigmaError::ConsistencyFailure(format!("coefficient of t^{n} breaks {parity:?} parity: {c:?}")));
            }
        }
        Ok(TruncSeries { ctx: self.ctx.clone(), start: self.start, coeffs, parity })
    }

    /// Lowest degree `< upto` where `self` and `o` differ modulo `p^e`, or where either side
    /// is known to less than `p^e`.
    pub fn first_mismatch(&self, o: &Self, e: i64, upto: i64) -> Option<(i64, S, S)> {
        let lo = self.start.min(o.start);
        let hi = upto.min(self.prec()).min(o.prec());
        (lo..hi).find_map(|n| {
            let (a, b) = (self.coeff(n), o.coeff(n));
            (!a.congruent(&b, e)).then_some((n, a, b))
        })
    }

    /// Lowest degree `< upto` whose coefficient is not `≡ 0 mod p^e`.
    pub fn first_nonzero_mod(&self, e: i64, upto: i64) -> Option<(i64, S)> {
        let hi = upto.min(self.prec());
        (self.start..hi).find_map(|n| {
            let c = self.coeff(n);
            (!(c.abs_prec() >= e && c.valuation() >= e)).then_some((n, c))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PadicCtx, PadicScalar};

    fn ctx() -> PadicCtx {
        PadicCtx::new(5, 6)
    }

    fn ser(start: i64, cs: &[i64]) -> TruncSeries<PadicScalar> {
        let c = ctx();
        TruncSeries::new(&c, start, cs.iter().map(|&x| PadicScalar::from_int(&c, x)).collect())
    }

    fn same(a: &TruncSeries<PadicScalar>, b: &TruncSeries<PadicScalar>, e: i64) -> bool {
        a.first_mismatch(b, e, i64::MAX).is_none()
    }

    #[test]
    fn order_cancellation() {
        let a = ser(-1, &[1, 0, 0, 0]);
        let b = ser(1, &[1, 0, 0, 0]);
        let c = a.mul(&b);
        assert_eq!(c.start(), 0);
        assert!(same(&c, &ser(0, &[1, 0, 0, 0]), 6));
    }

    #[test]
    fn difference_of_squares() {
        let c = ser(0, &[1, 1, 0]).mul(&ser(0, &[1, -1, 0]));
        assert!(same(&c, &ser(0, &[1, 0, -1]), 6));
        assert_eq!(c.prec(), 3);
    }

    #[test]
    fn geometric_series() {
        let r = ser(0, &[1, 1, 0, 0]).reciprocal().unwrap();
        assert!(same(&r, &ser(0, &[1, -1, 1, -1]), 6));
    }

    #[test]
    fn reciprocal_negates_order() {
        let r = ser(2, &[1, 3, 0, 0]).reciprocal().unwrap();
        assert_eq!(r.start(), -2);
        assert_eq!(r.prec(), 2);
    }

    #[test]
    fn reciprocal_of_p_times_t() {
        let r = ser(1, &[5, 1, 0]).reciprocal().unwrap();
        assert_eq!(r.coeff(-1).valuation(), -1);
    }

    #[test]
    fn compose_examples() {
        let outer = ser(0, &[0, 0, 1, 0]);
        let inner = ser(1, &[1, 1, 0]);
        let c = outer.compose(&inner).unwrap();
        assert!(same(&c, &ser(0, &[0, 0, 1, 2]), 6));
        let id = ser(0, &[0, 1, 0, 0, 0, 0]);
        let inner = ser(1, &[2, 3, 4, 5, 6]);
        assert!(same(&id.compose(&inner).unwrap(), &inner, 6));
    }

    #[test]
    fn log_of_exp_minus_one_plus_one() {
        let c = ctx();
        let t = TruncSeries::<PadicScalar>::var(&c, 12);
        let e = t.exp().unwrap();
        let em1 = e.sub(&TruncSeries::one(&c, 12));
        let log1p = TruncSeries::one(&c, 12).add(&t).log().unwrap();
        let back = log1p.compose(&em1).unwrap();
        assert!(same(&back, &t, 3));
    }

    #[test]
    fn exp_of_zero() {
        let z = TruncSeries::<PadicScalar>::zero(&ctx(), 6);
        let e = z.exp().unwrap();
        assert!(same(&e, &TruncSeries::one(&ctx(), 6), 6));
    }

    #[test]
    fn calculus() {
        let d = ser(3, &[1, 0]).diff();
        assert!(same(&d, &ser(2, &[3, 0]), 6));
        let i = ser(2, &[1, 0]).integrate().unwrap();
        let third = PadicScalar::from_ratio(&ctx(), 1, 3).unwrap();
        assert!(i.coeff(3).congruent(&third, 6));
        assert_eq!(ser(-1, &[1, 0]).integrate().unwrap_err(), SigmaError::ResiduePresent);
    }

    #[test]
    fn parity_enforcement() {
        assert!(ser(0, &[1, 0, 2]).with_parity(Parity::Even).is_ok());
        assert!(ser(0, &[1, 1, 2]).with_parity(Parity::Even).is_err());
    }
}
