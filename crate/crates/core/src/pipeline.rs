//! End-to-end runs: curve → expansions → β → ζ → σ, with the precision policy.

use std::sync::Arc;

use crate::curve::{Curve, CurveExpansions};
use crate::error::{Result, SigmaError};
use crate::scalar::modular::{digit_cap, is_prime};
use crate::scalar::{PadicCtx, PadicScalar, Scalar, UnivCtx, UnivScalar};
use crate::sigma::{beta_closed_form, omega_square_loss, sigma_series, zeta_series, SigmaData, ZetaData};

/// A rational number `num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn int(n: i64) -> Self {
        Ratio { num: n, den: 1 }
    }
}

impl std::str::FromStr for Ratio {
    type Err = SigmaError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || SigmaError::InvalidConfig(format!("not an integer or fraction: {s:?}"));
        match s.split_once('/') {
            Some((a, b)) => {
                let den: i64 = b.trim().parse().map_err(|_| bad())?;
                if den == 0 {
                    return Err(bad());
                }
                Ok(Ratio { num: a.trim().parse().map_err(|_| bad())?, den })
            }
            None => Ok(Ratio::int(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

pub fn validate_prime(p: u64) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(SigmaError::InvalidConfig(format!("p = {p} must be a prime >= 5")));
    }
    Ok(())
}

fn log_ceil(p: u64, m: i64) -> i64 {
    let (mut k, mut acc) = (0, 1i64);
    while acc < m {
        acc = acc.saturating_mul(p as i64);
        k += 1;
    }
    k
}

fn vp_factorial(p: u64, m: i64) -> i64 {
    let (mut v, mut q) = (0, p as i64);
    while q <= m {
        v += m / q;
        q *= p as i64;
    }
    v
}

/// Working digits: `e + ceil(log_p M) + 2` guard digits, plus `v_p(M!)` for the
/// divisions inside `exp`, capped by what fits in a machine word.
pub fn default_digits(p: u64, e_target: i64, m: i64) -> i64 {
    (e_target + log_ceil(p, m) + 2 + vp_factorial(p, m)).min(digit_cap(p))
}

/// Curve over the p-adic integers from rational coefficients with p-unit denominators.
pub fn specialized_curve(p: u64, a4: Ratio, a6: Ratio, digits: i64) -> Result<Curve<PadicScalar>> {
    validate_prime(p)?;
    let ctx = PadicCtx::new(p, digits);
    let conv = |r: Ratio| -> Result<PadicScalar> {
        if r.den % p as i64 == 0 {
            return Err(SigmaError::InvalidConfig(format!("denominator {} is divisible by p = {p}", r.den)));
        }
        PadicScalar::from_ratio(&ctx, r.num, r.den)
    };
    Ok(Curve::new(conv(a4)?, conv(a6)?))
}

/// The universal curve `y^2 = x^3 + A4 x + A6`.
pub fn universal_curve(p: u64, digits: i64) -> Result<Curve<UnivScalar>> {
    validate_prime(p)?;
    let ctx: Arc<UnivCtx> = UnivCtx::new(p, digits);
    Ok(Curve::new(UnivScalar::a4(&ctx), UnivScalar::a6(&ctx)))
}

/// Everything computed for one curve.
#[derive(Clone, Debug)]
pub struct SigmaRun<S: Scalar> {
    pub curve: Curve<S>,
    pub exp: CurveExpansions<S>,
    pub zeta: ZetaData<S>,
    pub sigma: SigmaData<S>,
    pub e_target: i64,
    /// Largest t-degree reported.
    pub m: i64,
}

/// Internal series length used for a requested degree `m`.
pub fn internal_prec(m: i64) -> i64 {
    m + 4
}

/// `N` such that `beta mod p^N` keeps every coefficient up to `t^m` certified to `p^e`.
pub fn beta_level(p: u64, e_target: i64, m: i64) -> i64 {
    e_target + omega_square_loss(p, m + 4) + 1
}

pub fn run_sigma<S: Scalar>(curve: &Curve<S>, e_target: i64, m: i64) -> Result<SigmaRun<S>> {
    if e_target < 1 {
        return Err(SigmaError::InvalidConfig("e_target must be at least 1".into()));
    }
    if m < 8 {
        return Err(SigmaError::InvalidConfig("the t-degree must be at least 8".into()));
    }
    curve.require_ordinary()?;
    let digits = S::one(&curve.ctx()).abs_prec();
    if e_target > digits {
        return Err(SigmaError::PrecisionExhausted(format!("p^{e_target} requested with {digits} working digits")));
    }
    let p = curve.p();
    let l = internal_prec(m);
    let exp = curve.expansions(l + 2)?;
    let first = beta_level(p, e_target, m);
    for n_beta in first..first + 4 {
        let beta_hat = beta_closed_form(curve, n_beta as u32)?;
        let zeta = zeta_series(&exp, &beta_hat, n_beta, l)?;
        let sigma = sigma_series(&zeta, &exp, l)?;
        if let Some((n, c)) = sigma.integrality_violation(m) {
            return Err(SigmaError::IntegralityFailure { degree: n, detail: format!("{c:?}") });
        }
        let got = sigma.min_cert(m);
        if got >= e_target {
            return Ok(SigmaRun { curve: curve.clone(), exp, zeta, sigma, e_target, m });
        }
        // a short floor from beta is fixed by a longer beta; roundoff is not
        let roundoff = (1..=m).step_by(2).map(|n| sigma.sigma_hat.coeff(n).abs_prec()).min().unwrap_or(0);
        if roundoff < e_target {
            return Err(SigmaError::PrecisionExhausted(format!(
                "sigma coefficients known only to p^{roundoff}; need p^{e_target}"
            )));
        }
    }
    Err(SigmaError::PrecisionExhausted("beta truncation error does not settle".into()))
}

/// Runs `job` at `digits`, and once more at `digits + 4` on precision exhaustion.
pub fn with_retry<T>(digits: i64, mut job: impl FnMut(i64) -> Result<T>) -> Result<T> {
    match job(digits) {
        Err(SigmaError::PrecisionExhausted(_)) => job(digits + 4),
        other => other,
    }
}
