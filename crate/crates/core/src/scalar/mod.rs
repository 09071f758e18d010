//! Coefficient domains: finite-precision p-adic numbers, the universal ring
//! of isobaric forms localized at the Hasse lift, and exact rational polynomials.

pub mod exact;
pub mod modular;
pub mod padic;
pub mod univ;

use std::fmt;

use crate::error::{Result, SigmaError};

pub use exact::{ExactCtx, ExactPoly};
pub use padic::{PadicCtx, PadicScalar};
pub use univ::{IsoPoly, UnivCtx, UnivScalar};

/// Stand-in for "infinite" absolute precision.
pub const EXACT: i64 = i64::MAX / 8;

/// Common interface of the coefficient rings.
///
/// Absolute precision `abs_prec` means the value is known modulo `p^abs_prec`.
/// `valuation` is a lower bound for the true valuation; for values that are
/// zero at their precision it equals `abs_prec`.
pub trait Scalar: Clone + fmt::Debug + Send + Sync + 'static {
    type Ctx: Clone + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn prime_of(ctx: &Self::Ctx) -> u64;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;

    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// Multiply by `p^k`, `k` of either sign.
    fn mul_p_pow(&self, k: i64) -> Self;
    fn valuation(&self) -> i64;
    fn abs_prec(&self) -> i64;
    /// Forget everything beyond `p^abs`.
    fn truncate_prec(&self, abs: i64) -> Self;
    /// Isobaric weight, when the ring is graded.
    fn weight(&self) -> Option<i64> {
        None
    }
    /// True when the element is exactly zero (not merely zero to precision).
    fn is_exact_zero(&self) -> bool;

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_int(ctx, 1)
    }
    fn prime(&self) -> u64 {
        Self::prime_of(&self.ctx())
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn is_zero(&self) -> bool {
        self.valuation() >= self.abs_prec()
    }
    fn mul_int(&self, n: i64) -> Self {
        if n == 0 {
            return Self::zero(&self.ctx());
        }
        self.mul(&Self::from_int(&self.ctx(), n))
    }
    /// Division by a nonzero integer; its p-part becomes a shift.
    fn div_int(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(SigmaError::NotAUnit("division by zero".into()));
        }
        let p = self.prime() as i64;
        let (mut m, mut v) = (n, 0);
        while m % p == 0 {
            m /= p;
            v += 1;
        }
        let u = Self::from_int(&self.ctx(), m).inv()?;
        Ok(self.mul(&u).mul_p_pow(-v))
    }
    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
    /// `self ≡ o (mod p^e)` with both sides known to at least that precision.
    fn congruent(&self, o: &Self, e: i64) -> bool {
        let d = self.sub(o);
        d.abs_prec() >= e && d.valuation() >= e
    }
}
