//! Weierstrass zeta and sigma functions: the constant `beta`, `zeta(t)`,
//! `g(t)` and `sigma(t) = t exp(g(t))`.
//!
//! `beta` is only ever known modulo `p^N`. The series are computed from a
//! representative `beta_hat` treated as exact; for `delta = beta_hat - beta`
//! and `Omega = integral of W dt` one has exactly
//! `zeta = zeta_hat - delta Omega`, `g = g_hat - delta Omega^2 / 2` and
//! `sigma = sigma_hat exp(-delta Omega^2 / 2)`, which gives the per-coefficient
//! certificates below.

pub mod zn;

use crate::curve::{f_power_coefficient, Curve, CurveExpansions};
use crate::error::{Result, SigmaError};
use crate::scalar::Scalar;
use crate::series::{Parity, TruncSeries};

pub use zn::{construct_zn, zeta_n, ZnData};

fn vp(n: i64, p: u64) -> i64 {
    let (mut n, p) = (n.abs(), p as i64);
    if n == 0 {
        return i64::MAX / 16;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Largest `p^n` the closed form for `beta` will expand to.
pub const BETA_DEGREE_LIMIT: u64 = 2_000_000;

/// `beta mod p^n` as `[x^(p^n-2)] f^k / [x^(p^n-1)] f^k` with `k = (p^n-1)/2`.
///
/// These are the coefficients `[t^(p^n-1)](x W)` and `w_(p^n-1)` of the expansions.
pub fn beta_closed_form<S: Scalar>(curve: &Curve<S>, n: u32) -> Result<S> {
    let p = curve.p();
    let q = p.checked_pow(n).filter(|&q| q <= BETA_DEGREE_LIMIT).ok_or_else(|| {
        SigmaError::PrecisionExhausted(format!("beta mod {p}^{n} needs a coefficient of f^((p^n-1)/2) past {BETA_DEGREE_LIMIT}"))
    })?;
    let k = (q - 1) / 2;
    let num = f_power_coefficient(&curve.a4, &curve.a6, k, q - 2);
    let den = f_power_coefficient(&curve.a4, &curve.a6, k, q - 1);
    let inv = den.inv().map_err(|_| SigmaError::NotAUnit(format!("w_{} is not a unit", q - 1)))?;
    Ok(num.mul(&inv))
}

/// `beta mod p^j` for `j = 1..=n` from `beta w_(p^j-1) = [t^(p^j-1)](x W) mod p^j`,
/// with the compatibility of consecutive levels asserted.
pub fn beta_direct<S: Scalar>(exp: &CurveExpansions<S>, n: u32) -> Result<Vec<S>> {
    let p = exp.a4.prime() as i64;
    let top = p.pow(n);
    if exp.big_w.prec() < top || exp.x.prec() < top {
        return Err(SigmaError::InvalidConfig(format!("beta mod p^{n} needs expansions to t^{}", top - 1)));
    }
    let xw = exp.x.mul(&exp.big_w);
    let mut out: Vec<S> = Vec::new();
    for j in 1..=n {
        let d = p.pow(j) - 1;
        let w = exp.big_w.coeff(d);
        let b = xw.coeff(d).mul(&w.inv()?).truncate_prec(j as i64);
        if let Some(prev) = out.last() {
            if !b.congruent(prev, j as i64 - 1) {
                return Err(SigmaError::Internal(format!("beta levels {} and {j} disagree", j - 1)));
            }
        }
        out.push(b);
    }
    Ok(out)
}

/// `zeta`, `zeta_tilde` and the data behind their certificates.
#[derive(Clone, Debug)]
pub struct ZetaData<S: Scalar> {
    /// The representative used for every series below.
    pub beta_hat: S,
    /// `beta_hat ≡ beta mod p^n_beta`.
    pub n_beta: i64,
    pub zeta_hat: TruncSeries<S>,
    pub zeta_tilde_hat: TruncSeries<S>,
    /// `Omega(t) = integral of W(t) dt`.
    pub omega_int: TruncSeries<S>,
    /// `zeta` with each coefficient cut to its certified precision.
    pub zeta: TruncSeries<S>,
    /// Numerators `[t^(m-1)]((-x + beta_hat) W)` indexed by `m`.
    pub numerators: TruncSeries<S>,
}

/// Lower bounds for the valuations of the coefficients of a series.
fn val_bounds<S: Scalar>(s: &TruncSeries<S>) -> Vec<i64> {
    (0..s.prec()).map(|n| if n < s.start() { i64::MAX / 16 } else { s.coeff(n).valuation().min(i64::MAX / 16) }).collect()
}

fn min_plus(a: &[i64], b: &[i64], len: usize) -> Vec<i64> {
    let inf = i64::MAX / 16;
    let mut out = vec![inf; len];
    for (i, &x) in a.iter().enumerate() {
        if x >= inf {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if y < inf {
                out[i + j] = out[i + j].min(x + y);
            }
        }
    }
    out
}

pub fn zeta_series<S: Scalar>(exp: &CurveExpansions<S>, beta_hat: &S, n_beta: i64, prec: i64) -> Result<ZetaData<S>> {
    let ctx = exp.ctx();
    let l = prec - 1;
    if exp.big_w.prec() < l + 2 || exp.x.prec() < l {
        return Err(SigmaError::InvalidConfig(format!("zeta mod t^{prec} needs expansions to t^{}", l + 2)));
    }
    let beta_ser = TruncSeries::constant(&ctx, beta_hat.clone(), l);
    let integrand = exp.x.truncate(l).neg().add(&beta_ser).mul(&exp.big_w.truncate(l + 2));
    let mut coeffs = Vec::new();
    for m in -1..prec {
        let c = if m == 0 { S::zero(&ctx) } else { integrand.coeff(m - 1).div_int(m)? };
        coeffs.push(c);
    }
    let numerators = integrand.shift(1);
    let zeta_hat = TruncSeries::new(&ctx, -1, coeffs).with_parity(Parity::Odd)?;
    let omega_int = exp.big_w.truncate(prec).integrate()?.set_parity_tag(Parity::Odd);
    // zeta = zeta_hat - delta Omega with v(delta) >= n_beta
    let vo = val_bounds(&omega_int);
    let zeta = zeta_hat.iter().fold(Vec::new(), |mut acc, (m, c)| {
        let floor = if m >= 1 { n_beta.saturating_add(vo[m as usize]) } else { i64::MAX / 16 };
        acc.push(c.truncate_prec(floor));
        acc
    });
    let zeta = TruncSeries::new(&ctx, -1, zeta).set_parity_tag(Parity::Odd);
    let inv_tw = exp.big_w.truncate(prec + 1).reciprocal()?.shift(-1);
    let zeta_tilde_hat = zeta_hat.sub(&inv_tw).drop_below(1)?.with_parity(Parity::Odd)?;
    Ok(ZetaData { beta_hat: beta_hat.clone(), n_beta, zeta_hat, zeta_tilde_hat, omega_int, zeta, numerators })
}

impl<S: Scalar> ZetaData<S> {
    /// Integrability ladder: `v([t^(m-1)]((-x+beta)W)) >= v_p(m)` for `1 <= m <= upto`.
    /// Returns the first violating `m`.
    pub fn ladder_violation(&self, upto: i64) -> Option<(i64, S)> {
        let p = self.beta_hat.prime();
        (1..=upto.min(self.numerators.prec() - 1)).find_map(|m| {
            let c = self.numerators.coeff(m);
            let need = vp(m, p).min(self.n_beta);
            let ok = c.abs_prec() >= need && c.valuation() >= need;
            (!ok).then_some((m, c))
        })
    }

    /// `beta` reduced to its known precision.
    pub fn beta(&self) -> S {
        self.beta_hat.truncate_prec(self.n_beta)
    }
}

/// `g(t)` and `sigma(t)` with per-coefficient certificates.
#[derive(Clone, Debug)]
pub struct SigmaData<S: Scalar> {
    pub g_hat: TruncSeries<S>,
    pub sigma_hat: TruncSeries<S>,
    /// `sigma` with each coefficient cut to its certificate.
    pub sigma: TruncSeries<S>,
    /// Certified absolute precision of the coefficient of `t^n`, indexed by `n`.
    pub cert: Vec<i64>,
}

pub fn sigma_series<S: Scalar>(zd: &ZetaData<S>, exp: &CurveExpansions<S>, prec: i64) -> Result<SigmaData<S>> {
    let ctx = exp.ctx();
    let p = exp.a4.prime();
    // g = integral of zeta_tilde W = integral of (zeta W - 1/t)
    let lg = prec - 1;
    if zd.zeta_tilde_hat.prec() < lg - 1 {
        return Err(SigmaError::InvalidConfig(format!("sigma mod t^{prec} needs zeta mod t^{}", lg - 1)));
    }
    let tw = zd.zeta_tilde_hat.truncate(lg - 1).mul(&exp.big_w.truncate(lg - 1));
    let g_hat = tw.integrate()?.with_parity(Parity::Even)?;
    let sigma_hat = g_hat.exp()?.shift(1).truncate(prec).with_parity(Parity::Odd)?;
    // certificates: sigma = sigma_hat * exp(-delta Omega^2 / 2)
    let len = prec.max(0) as usize;
    let vo: Vec<i64> = val_bounds(&zd.omega_int).into_iter().take(len).collect();
    let inf = i64::MAX / 16;
    let mut bounds = vec![inf; len];
    let mut power = vec![inf; len];
    power[0] = 0;
    let mut k = 0i64;
    let mut vkfact = 0i64;
    loop {
        power = min_plus(&min_plus(&power, &vo, len), &vo, len);
        k += 1;
        vkfact += vp(k, p);
        if power.iter().all(|&v| v >= inf) {
            break;
        }
        for (m, &v) in power.iter().enumerate() {
            if v < inf {
                bounds[m] = bounds[m].min(k * zd.n_beta + v - vkfact);
            }
        }
        if 2 * k as usize >= len {
            break;
        }
    }
    let vs = val_bounds(&sigma_hat);
    let floor = min_plus(&vs, &bounds, len);
    let mut cert = Vec::with_capacity(len);
    let mut coeffs = Vec::with_capacity(len);
    for n in 0..prec {
        let c = sigma_hat.coeff(n);
        let e = c.abs_prec().min(floor[n as usize]);
        cert.push(if c.is_exact_zero() { crate::scalar::EXACT } else { e });
        coeffs.push(c.truncate_prec(e));
    }
    let sigma = TruncSeries::new(&ctx, 0, coeffs).set_parity_tag(Parity::Odd);
    Ok(SigmaData { g_hat, sigma_hat, sigma, cert })
}

impl<S: Scalar> SigmaData<S> {
    /// Smallest certificate over odd degrees `1..=upto`.
    pub fn min_cert(&self, upto: i64) -> i64 {
        (1..=upto.min(self.cert.len() as i64 - 1)).step_by(2).map(|n| self.cert[n as usize]).min().unwrap_or(0)
    }

    /// First coefficient up to `t^upto` that fails to be p-integral at its certified precision.
    pub fn integrality_violation(&self, upto: i64) -> Option<(i64, S)> {
        (0..=upto.min(self.sigma.prec() - 1)).find_map(|n| {
            let c = self.sigma.coeff(n);
            (c.valuation() < 0 && c.abs_prec() > c.valuation()).then_some((n, c))
        })
    }
}

/// Largest `v_p(i) + v_p(j)` over odd `i, j` with `i + j <= m`: the worst denominator in `Omega^2`.
pub fn omega_square_loss(p: u64, m: i64) -> i64 {
    let mut best = 0;
    let mut i = 1;
    while i < m {
        let mut j = 1;
        while i + j <= m {
            best = best.max(vp(i, p) + vp(j, p));
            j += 2;
        }
        i += 2;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PadicCtx, PadicScalar, UnivCtx, UnivScalar};

    #[test]
    fn closed_form_matches_series_route() {
        for (p, a4, a6) in [(5u64, 1i64, 1i64), (7, 2, 3), (5, 2, 2)] {
            let c = PadicCtx::new(p, 10);
            let cv = Curve::new(PadicScalar::from_int(&c, a4), PadicScalar::from_int(&c, a6));
            let exp = cv.expansions((p * p) as i64 + 2).unwrap();
            let levels = beta_direct(&exp, 2).unwrap();
            for (j, b) in levels.iter().enumerate() {
                let cf = beta_closed_form(&cv, j as u32 + 1).unwrap();
                assert!(cf.congruent(b, j as i64 + 1), "p={p} level {}", j + 1);
            }
        }
    }

    #[test]
    fn universal_beta_mod_5() {
        let ctx = UnivCtx::new(5, 1);
        let cv = Curve::new(UnivScalar::a4(&ctx), UnivScalar::a6(&ctx));
        let b = beta_closed_form(&cv, 1).unwrap();
        let expect = UnivScalar::a6(&ctx).mul(&UnivScalar::a4(&ctx).inv().unwrap());
        assert!(b.congruent(&expect, 1));
        assert_eq!(b.render(1), "A6/A4");
    }

    #[test]
    fn omega_loss() {
        assert_eq!(omega_square_loss(5, 40), 3);
        assert_eq!(omega_square_loss(5, 9), 1);
        assert_eq!(omega_square_loss(7, 12), 1);
    }
}
