use super::TruncSeries;
use crate::error::{Result, SigmaError};
use crate::scalar::Scalar;

/// Power series in `t1, t2`, known modulo total degree `prec`.
///
/// `rows[d][i]` is the coefficient of `t1^i t2^(d-i)`.
#[derive(Clone, Debug)]
pub struct BivarSeries<S: Scalar> {
    ctx: S::Ctx,
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> BivarSeries<S> {
    pub fn zero(ctx: &S::Ctx, prec: i64) -> Self {
        let rows = (0..prec.max(0) as usize).map(|d| vec![S::zero(ctx); d + 1]).collect();
        BivarSeries { ctx: ctx.clone(), rows }
    }

    pub fn constant(ctx: &S::Ctx, c: S, prec: i64) -> Self {
        let mut z = Self::zero(ctx, prec);
        if prec > 0 {
            z.rows[0][0] = c;
        }
        z
    }

    pub fn t1(ctx: &S::Ctx, prec: i64) -> Self {
        let mut z = Self::zero(ctx, prec);
        if prec > 1 {
            z.rows[1][1] = S::one(ctx);
        }
        z
    }

    pub fn t2(ctx: &S::Ctx, prec: i64) -> Self {
        let mut z = Self::zero(ctx, prec);
        if prec > 1 {
            z.rows[1][0] = S::one(ctx);
        }
        z
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn prec(&self) -> i64 {
        self.rows.len() as i64
    }

    /// Coefficient of `t1^i t2^j`.
    pub fn coeff(&self, i: usize, j: usize) -> S {
        self.rows.get(i + j).map(|r| r[i].clone()).unwrap_or_else(|| panic!("t1^{i} t2^{j} beyond truncation"))
    }

    pub fn set(&mut self, i: usize, j: usize, c: S) {
        self.rows[i + j][i] = c;
    }

    /// `(i, j, coefficient)` triples.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.rows.iter().enumerate().flat_map(|(d, r)| r.iter().enumerate().map(move |(i, c)| (i, d - i, c)))
    }

    /// Lowest total degree carrying a coefficient that is not exactly zero.
    pub fn order(&self) -> Option<i64> {
        self.rows.iter().position(|r| r.iter().any(|c| !c.is_exact_zero())).map(|d| d as i64)
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let mut out = self.clone();
        out.rows.truncate(prec.max(0) as usize);
        out
    }

    fn zip(&self, o: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        let prec = self.prec().min(o.prec()) as usize;
        let rows = (0..prec).map(|d| (0..=d).map(|i| f(&self.rows[d][i], &o.rows[d][i])).collect()).collect();
        BivarSeries { ctx: self.ctx.clone(), rows }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        BivarSeries { ctx: self.ctx.clone(), rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|c| c.mul(s))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let oa = self.order().unwrap_or(self.prec());
        let ob = o.order().unwrap_or(o.prec());
        let prec = (self.prec() + ob).min(o.prec() + oa).max(0) as usize;
        let mut acc: Vec<Vec<Option<S>>> = (0..prec).map(|d| vec![None; d + 1]).collect();
        for (da, ra) in self.rows.iter().enumerate() {
            if da >= prec {
                break;
            }
            for (ia, x) in ra.iter().enumerate() {
                if x.is_exact_zero() {
                    continue;
                }
                for (db, rb) in o.rows.iter().enumerate() {
                    if da + db >= prec {
                        break;
                    }
                    for (ib, y) in rb.iter().enumerate() {
                        if y.is_exact_zero() {
                            continue;
                        }
                        let t = x.mul(y);
                        let slot = &mut acc[da + db][ia + ib];
                        *slot = Some(match slot.take() {
                            Some(s) => s.add(&t),
                            None => t,
                        });
                    }
                }
            }
        }
        let rows = acc
            .into_iter()
            .map(|r| r.into_iter().map(|c| c.unwrap_or_else(|| S::zero(&self.ctx))).collect())
            .collect();
        BivarSeries { ctx: self.ctx.clone(), rows }
    }

    /// Embed a power series in `t1` (or `t2` when `second` is set).
    pub fn from_series(s: &TruncSeries<S>, second: bool) -> Result<Self> {
        if s.start() < 0 && s.order().is_some_and(|k| k < 0) {
            return Err(SigmaError::OrderViolation("only power series embed into two variables".into()));
        }
        let prec = s.prec();
        let mut out = Self::zero(s.ctx(), prec);
        for (n, c) in s.iter() {
            if n < 0 {
                continue;
            }
            let n = n as usize;
            if second {
                out.set(0, n, c.clone());
            } else {
                out.set(n, 0, c.clone());
            }
        }
        Ok(out)
    }

    /// Substitute `t2 -> -t2`.
    pub fn negate_t2(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(d, r)| r.iter().enumerate().map(|(i, c)| if (d - i) % 2 == 1 { c.neg() } else { c.clone() }).collect())
            .collect();
        BivarSeries { ctx: self.ctx.clone(), rows }
    }

    /// Exchange `t1` and `t2`.
    pub fn swap(&self) -> Self {
        let rows = self.rows.iter().enumerate().map(|(d, r)| (0..=d).map(|i| r[d - i].clone()).collect()).collect();
        BivarSeries { ctx: self.ctx.clone(), rows }
    }

    /// Partial derivative in `t1`.
    pub fn d_t1(&self) -> Self {
        let prec = (self.prec() - 1).max(0) as usize;
        let rows = (0..prec).map(|d| (0..=d).map(|i| self.rows[d + 1][i + 1].mul_int(i as i64 + 1)).collect()).collect();
        BivarSeries { ctx: self.ctx.clone(), rows }
    }

    /// `outer(self)`; `self` must have no constant term.
    pub fn compose_into(&self, outer: &TruncSeries<S>) -> Result<Self> {
        if self.prec() > 0 && !self.rows[0][0].is_zero() {
            return Err(SigmaError::OrderViolation("inner bivariate series has a constant term".into()));
        }
        let outer = outer.strip_zeros();
        if outer.start() < 0 {
            return Err(SigmaError::OrderViolation("outer series must be a power series".into()));
        }
        let mut inner = self.clone();
        if inner.prec() > 0 {
            inner.rows[0][0] = S::zero(&self.ctx);
        }
        let v = inner.order().unwrap_or(inner.prec()).max(1);
        let nmin = outer.iter().find(|(n, c)| *n >= 1 && !c.is_exact_zero()).map(|(n, _)| n);
        let mut prec = outer.prec() * v;
        if let Some(nm) = nmin {
            prec = prec.min(inner.prec() + v * (nm - 1));
        }
        let top = outer.prec() - 1;
        let mut acc = Self::constant(&self.ctx, outer.coeff(top), prec);
        for n in (0..top).rev() {
            acc = acc.mul(&inner).truncate(prec);
            let c = outer.coeff(n);
            if !c.is_exact_zero() {
                acc.rows[0][0] = acc.rows[0][0].add(&c);
            }
        }
        Ok(acc)
    }

    /// Inverse of a series whose constant term is a unit.
    pub fn reciprocal(&self) -> Result<Self> {
        let c = self.rows.first().map(|r| r[0].clone()).ok_or_else(|| SigmaError::NotAUnit("empty series".into()))?;
        let ci = c.inv()?;
        let mut x = self.scale(&ci);
        x.rows[0][0] = S::zero(&self.ctx);
        // 1/(1+x) = sum (-x)^k
        let prec = self.prec();
        let coeffs = (0..prec).map(|k| if k % 2 == 0 { S::one(&self.ctx) } else { S::one(&self.ctx).neg() }).collect();
        let geo = TruncSeries::new(&self.ctx, 0, coeffs);
        Ok(x.compose_into(&geo)?.scale(&ci))
    }

    /// First `(i, j)` with total degree below `upto` where the two sides differ mod `p^e`.
    pub fn first_mismatch(&self, o: &Self, e: i64, upto: i64) -> Option<(usize, usize, S, S)> {
        let hi = upto.min(self.prec()).min(o.prec()).max(0) as usize;
        for d in 0..hi {
            for i in 0..=d {
                let (a, b) = (&self.rows[d][i], &o.rows[d][i]);
                if !a.congruent(b, e) {
                    return Some((i, d - i, a.clone(), b.clone()));
                }
            }
        }
        None
    }
}
