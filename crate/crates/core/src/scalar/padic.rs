use std::fmt;

use super::modular::{digit_cap, inv_mod, pow_u128, reduce_i128, vp_u128};
use super::{Scalar, EXACT};
use crate::error::{Result, SigmaError};

/// Prime and default relative precision for constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicCtx {
    pub p: u64,
    pub digits: i64,
}

impl PadicCtx {
    pub fn new(p: u64, digits: i64) -> Self {
        let digits = digits.clamp(1, digit_cap(p));
        PadicCtx { p, digits }
    }
}

/// `p^val * unit`, known modulo `p^abs`. The unit is stored modulo `p^(abs-val)`.
///
/// When `val >= abs` the value is zero to the known precision and `unit` is 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    ctx: PadicCtx,
    val: i64,
    abs: i64,
    unit: u128,
}

impl PadicScalar {
    fn zero_at(ctx: PadicCtx, abs: i64) -> Self {
        let abs = abs.min(EXACT);
        PadicScalar { ctx, val: abs, abs, unit: 0 }
    }

    /// Build from an integer residue `x` known modulo `p^(abs-val)`, scaled by `p^val`.
    fn normalize(ctx: PadicCtx, mut val: i64, mut abs: i64, mut x: u128) -> Self {
        abs = abs.min(EXACT);
        if val >= abs {
            return Self::zero_at(ctx, abs);
        }
        let p = ctx.p as u128;
        let modulus = pow_u128(ctx.p, (abs - val).min(digit_cap(ctx.p)));
        x %= modulus;
        if x == 0 {
            return Self::zero_at(ctx, abs);
        }
        while x.is_multiple_of(p) {
            x /= p;
            val += 1;
        }
        let cap = digit_cap(ctx.p);
        if abs - val > cap {
            abs = val + cap;
            x %= pow_u128(ctx.p, cap);
        }
        PadicScalar { ctx, val, abs, unit: x }
    }

    pub fn new(ctx: PadicCtx, n: i64) -> Self {
        Self::from_int(&ctx, n)
    }

    /// `num/den` with `den` prime to `p` after removing its p-part into the shift.
    pub fn from_ratio(ctx: &PadicCtx, num: i64, den: i64) -> Result<Self> {
        Self::from_int(ctx, num).div_int(den)
    }

    /// `n` scaled by `p^shift`, known to absolute precision `abs`.
    pub fn from_residue(ctx: &PadicCtx, n: i128, abs: i64) -> Self {
        if abs <= 0 {
            return Self::zero_at(*ctx, abs);
        }
        let cap = abs.min(digit_cap(ctx.p));
        Self::normalize(*ctx, 0, cap, reduce_i128(n, pow_u128(ctx.p, cap)))
    }

    pub fn unit_part(&self) -> u128 {
        self.unit
    }

    /// Least nonnegative residue modulo `p^e`; `None` if not integral or not known that far.
    pub fn residue(&self, e: i64) -> Option<u128> {
        if e <= 0 {
            return Some(0);
        }
        if self.abs < e {
            return None;
        }
        if self.val >= e {
            return Some(0);
        }
        if self.val < 0 {
            return None;
        }
        let m = pow_u128(self.ctx.p, e);
        Some(self.unit % m * pow_u128(self.ctx.p, self.val) % m)
    }

    /// Balanced integer representative of the residue modulo `p^e`.
    pub fn balanced(&self, e: i64) -> Option<i128> {
        let r = self.residue(e)? as i128;
        let m = pow_u128(self.ctx.p, e) as i128;
        Some(if 2 * r > m { r - m } else { r })
    }

    pub fn lift_prec(&self, abs: i64) -> Self {
        // Reinterpret the stored representative as known to higher precision.
        if self.abs >= abs || self.is_exact_zero() {
            return *self;
        }
        if self.val >= self.abs {
            return Self::zero_at(self.ctx, abs);
        }
        Self::normalize(self.ctx, self.val, abs, self.unit)
    }
}

impl Scalar for PadicScalar {
    type Ctx = PadicCtx;

    fn ctx(&self) -> PadicCtx {
        self.ctx
    }
    fn prime_of(ctx: &PadicCtx) -> u64 {
        ctx.p
    }
    fn zero(ctx: &PadicCtx) -> Self {
        Self::zero_at(*ctx, EXACT)
    }
    fn from_int(ctx: &PadicCtx, n: i64) -> Self {
        if n == 0 {
            return Self::zero(ctx);
        }
        let v = vp_u128(n.unsigned_abs() as u128, ctx.p);
        let m = pow_u128(ctx.p, ctx.digits);
        let core = n as i128 / (ctx.p as i128).pow(v as u32);
        Self::normalize(*ctx, v, v + ctx.digits, reduce_i128(core, m))
    }

    fn add(&self, o: &Self) -> Self {
        if self.is_exact_zero() {
            return *o;
        }
        if o.is_exact_zero() {
            return *self;
        }
        let abs = self.abs.min(o.abs);
        let v = self.val.min(o.val);
        if v >= abs {
            return Self::zero_at(self.ctx, abs);
        }
        let m = pow_u128(self.ctx.p, abs - v);
        let part = |s: &Self| -> u128 {
            if s.val >= abs {
                0
            } else {
                s.unit % m * pow_u128(s.ctx.p, s.val - v) % m
            }
        };
        Self::normalize(self.ctx, v, abs, (part(self) + part(o)) % m)
    }

    fn neg(&self) -> Self {
        if self.val >= self.abs {
            return *self;
        }
        let m = pow_u128(self.ctx.p, self.abs - self.val);
        PadicScalar { unit: (m - self.unit) % m, ..*self }
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_exact_zero() || o.is_exact_zero() {
            return Self::zero(&self.ctx);
        }
        let abs = (self.abs + o.val).min(o.abs + self.val);
        if self.val >= self.abs || o.val >= o.abs {
            return Self::zero_at(self.ctx, abs);
        }
        let rel = (self.abs - self.val).min(o.abs - o.val);
        let m = pow_u128(self.ctx.p, rel);
        let x = (self.unit % m) * (o.unit % m) % m;
        Self::normalize(self.ctx, self.val + o.val, self.val + o.val + rel, x)
    }

    fn inv(&self) -> Result<Self> {
        if self.val >= self.abs {
            return Err(SigmaError::NotAUnit(format!(
                "cannot invert a value that is zero modulo {}^{}",
                self.ctx.p, self.abs
            )));
        }
        let rel = self.abs - self.val;
        let m = pow_u128(self.ctx.p, rel);
        let u = inv_mod(self.unit, m).ok_or_else(|| SigmaError::Internal("unit not invertible".into()))?;
        Ok(Self::normalize(self.ctx, -self.val, -self.val + rel, u))
    }

    fn mul_p_pow(&self, k: i64) -> Self {
        if self.is_exact_zero() {
            return *self;
        }
        PadicScalar { val: self.val + k, abs: self.abs + k, ..*self }
    }

    fn valuation(&self) -> i64 {
        self.val
    }
    fn abs_prec(&self) -> i64 {
        self.abs
    }

    fn truncate_prec(&self, abs: i64) -> Self {
        if abs >= self.abs {
            return *self;
        }
        if self.val >= abs {
            return Self::zero_at(self.ctx, abs);
        }
        Self::normalize(self.ctx, self.val, abs, self.unit)
    }

    fn is_exact_zero(&self) -> bool {
        self.abs >= EXACT && self.unit == 0
    }
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.ctx.p;
        if self.is_exact_zero() {
            return write!(f, "0");
        }
        if self.val >= self.abs {
            return write!(f, "0 mod {p}^{}", self.abs);
        }
        if self.val >= 0 {
            let m = pow_u128(p, self.abs);
            let r = self.unit % m * pow_u128(p, self.val) % m;
            write!(f, "{r} mod {p}^{}", self.abs)
        } else {
            write!(f, "{}/{p}^{} mod {p}^{}", self.unit, -self.val, self.abs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5(d: i64) -> PadicCtx {
        PadicCtx::new(5, d)
    }

    #[test]
    fn sum_vanishes_mod_25() {
        let a = PadicScalar::from_residue(&c5(2), 3, 2);
        let b = PadicScalar::from_residue(&c5(2), 22, 2);
        let s = a.add(&b);
        assert!(s.is_zero());
        assert_eq!(s.abs_prec(), 2);
    }

    #[test]
    fn shift_cancellation() {
        let ctx = c5(2);
        let a = PadicScalar::from_residue(&ctx, 1, 2).mul_p_pow(1);
        let b = PadicScalar::from_residue(&ctx, 1, 2).mul_p_pow(-1);
        // relative precision 2 on both sides survives the product
        let c = a.mul(&b);
        assert_eq!(c.residue(2), Some(1));
        assert_eq!(c.abs_prec(), 2);
    }

    #[test]
    fn inverse_of_two() {
        let two = PadicScalar::from_residue(&c5(3), 2, 3);
        assert_eq!(two.inv().unwrap().residue(3), Some(63));
    }

    #[test]
    fn inverse_with_shift() {
        let ctx = c5(4);
        let x = PadicScalar::from_int(&ctx, 10);
        let y = x.inv().unwrap();
        assert_eq!(y.valuation(), -1);
        assert_eq!(x.mul(&y).residue(4), Some(1));
    }

    #[test]
    fn zero_has_no_inverse() {
        let z = PadicScalar::from_residue(&c5(3), 25, 2);
        assert!(matches!(z.inv(), Err(SigmaError::NotAUnit(_))));
    }

    #[test]
    fn division_by_p_is_a_shift() {
        let ctx = c5(3);
        let x = PadicScalar::from_int(&ctx, 50).div_int(5).unwrap();
        assert_eq!(x.residue(3), Some(10));
        assert_eq!(x.abs_prec(), 4);
    }

    #[test]
    fn negative_and_rational_inputs() {
        let ctx = c5(3);
        let x = PadicScalar::from_ratio(&ctx, -3, 2).unwrap();
        assert_eq!(x.mul_int(2).add(&PadicScalar::from_int(&ctx, 3)).residue(3), Some(0));
        assert_eq!(PadicScalar::from_int(&ctx, -1).balanced(3), Some(-1));
    }

    #[test]
    fn precision_floor_after_cancellation() {
        let ctx = c5(3);
        let a = PadicScalar::from_int(&ctx, 7);
        let b = PadicScalar::from_int(&ctx, 7 + 125).truncate_prec(3);
        let d = a.sub(&b);
        assert!(d.is_zero());
        assert_eq!(d.abs_prec(), 3);
    }
}
