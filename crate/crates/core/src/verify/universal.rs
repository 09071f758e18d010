//! Checks on the universal curve: weights, specialization, the Hasse lifts and
//! the q-expansions under the Tate curve embedding.

use crate::curve::divpoly::psi_p;
use crate::curve::{hasse_lift, Curve};
use crate::error::Result;
use crate::pipeline::SigmaRun;
use crate::quotient::hensel_split;
use crate::scalar::{ExactCtx, ExactPoly, IsoPoly, PadicCtx, PadicScalar, Scalar, UnivScalar};
use crate::series::TruncSeries;
use crate::sigma::beta_closed_form;

use super::analytic::series_witness;
use super::CheckReport;

/// Every universal coefficient of `t^n` in sigma has weight `n - 1`, and in zeta weight `n + 1`.
pub fn check_weights(run: &SigmaRun<UnivScalar>) -> CheckReport {
    let rep = CheckReport::new("weights", run.e_target, run.m + 1, "t");
    let bad = |s: &TruncSeries<UnivScalar>, shift: i64, name: &str, upto: i64| {
        s.iter()
            .filter(|(n, c)| *n <= upto && !c.is_zero())
            .find(|(n, c)| c.weight() != Some(n + shift))
            .map(|(n, c)| format!("{name} at t^{n} has weight {:?}", c.weight()))
    };
    let w = bad(&run.sigma.sigma, -1, "sigma", run.m).or_else(|| bad(&run.zeta.zeta, 1, "zeta", run.m));
    rep.fail_if(w)
}

/// The universal sigma specialized at `(a4, a6)` equals the sigma computed on that curve.
pub fn check_commutation(univ: &SigmaRun<UnivScalar>, spec: &SigmaRun<PadicScalar>, e: i64, upto: i64) -> CheckReport {
    let rep = CheckReport::new("commutation", e, upto + 1, "t");
    let (a4, a6) = (&spec.curve.a4, &spec.curve.a6);
    let w = (0..=upto).find_map(|n| {
        let u = univ.sigma.sigma.coeff(n);
        let s = spec.sigma.sigma.coeff(n);
        match u.evaluate(a4, a6) {
            Ok(v) => (!v.congruent(&s, e)).then(|| format!("t^{n}: {v} vs {s}")),
            Err(err) => Some(format!("t^{n}: {err}")),
        }
    });
    rep.fail_if(w)
}

/// Exact and mod-p relations between three lifts of the Hasse invariant.
#[derive(Clone, Debug)]
pub struct HasseFacts {
    /// `H` as text, e.g. `2*A4^1`.
    pub h: String,
    /// `w_(p-1) = H` as polynomials over the integers.
    pub w_exact: bool,
    /// `l_(p(p-1)/2) = H` as polynomials over the integers.
    pub ell_exact: bool,
    /// `l_(p(p-1)/2) ≡ H mod p`.
    pub ell_mod_p: bool,
    pub w: ExactPoly,
    pub ell: ExactPoly,
}

pub fn hasse_facts(p: u64) -> Result<HasseFacts> {
    let c = ExactCtx { p };
    let cv = Curve::new(ExactPoly::var_a4(&c), ExactPoly::var_a6(&c));
    let h = hasse_lift(&cv.a4, &cv.a6);
    let exp = cv.expansions(p as i64 + 2)?;
    let w = exp.w_coeff(p as i64 - 1);
    let dd = (p * (p - 1) / 2) as usize;
    let ell = psi_p(&cv).coeff(dd);
    Ok(HasseFacts {
        h: format!("{h:?}"),
        w_exact: w.sub(&h).is_exact_zero(),
        ell_exact: ell.sub(&h).is_exact_zero(),
        ell_mod_p: ell.sub(&h).reduce_mod(1).is_some_and(|m| m.is_empty()),
        w,
        ell,
    })
}

/// `H = w_(p-1)` exactly and `l_(p(p-1)/2) ≡ H mod p`; exact agreement of `l` and `H`
/// is reported separately and is not required.
pub fn check_hasse_lifts(p: u64) -> CheckReport {
    let rep = CheckReport::new("hasse", 1, 0, "t");
    let dd = p * (p - 1) / 2;
    match hasse_facts(p) {
        Ok(f) => {
            let detail = format!(
                "H = {}; w_{} = H exactly: {}; l_{dd} = H exactly: {}; l_{dd} ≡ H mod p: {}",
                f.h,
                p - 1,
                f.w_exact,
                f.ell_exact,
                f.ell_mod_p
            );
            let witness = if !f.w_exact {
                Some(format!("w_{} = {:?}", p - 1, f.w))
            } else if !f.ell_mod_p {
                Some(format!("l_{dd} = {:?}", f.ell))
            } else {
                None
            };
            rep.detail(detail).fail_if(witness)
        }
        Err(err) => rep.fail(err.to_string()),
    }
}

fn divisor_sum(n: u64, k: u32, skip: Option<u64>) -> i128 {
    (1..=n).filter(|&d| n.is_multiple_of(d) && skip.is_none_or(|p| !d.is_multiple_of(p))).map(|d| (d as i128).pow(k)).sum()
}

/// Exact coefficients of `E_k` for `k = 2, 4, 6` up to `q^(n-1)`.
pub fn eisenstein(k: u32, n: usize) -> Vec<i128> {
    let c: i128 = match k {
        2 => -24,
        4 => 240,
        6 => -504,
        _ => panic!("E_{k} is not provided"),
    };
    (0..n).map(|m| if m == 0 { 1 } else { c * divisor_sum(m as u64, k - 1, None) }).collect()
}

/// `E_2^* = (E_2(q) - p E_2(q^p)) / (1 - p)`, computed from its definition.
pub fn e2_star(p: u64, n: usize) -> Vec<i128> {
    let e2 = eisenstein(2, n);
    let pi = p as i128;
    (0..n)
        .map(|m| {
            let frob = if m % p as usize == 0 { e2[m / p as usize] } else { 0 };
            let num = e2[m] - pi * frob;
            assert_eq!(num % (1 - pi), 0);
            num / (1 - pi)
        })
        .collect()
}

fn qseries(ctx: &PadicCtx, coeffs: &[i128], scale: &PadicScalar) -> TruncSeries<PadicScalar> {
    let cs = coeffs.iter().map(|&c| PadicScalar::from_residue(ctx, c, ctx.digits).mul(scale)).collect();
    TruncSeries::new(ctx, 0, cs)
}

fn eval_iso_q(iso: &IsoPoly, a4: &TruncSeries<PadicScalar>, a6: &TruncSeries<PadicScalar>, ctx: &PadicCtx, n: i64) -> TruncSeries<PadicScalar> {
    iso.terms().fold(TruncSeries::zero(ctx, n), |acc, (c, a, b)| {
        let mono = a4.pow(a as u32).mul(&a6.pow(b as u32)).truncate(n);
        acc.add(&mono.scale(&PadicScalar::from_residue(ctx, c as i128, ctx.digits)))
    })
}

/// `i(u)` for a universal value `u`, with `A4 -> -E4/48`, `A6 -> E6/864`.
pub fn q_image(u: &UnivScalar, n: usize, digits: i64) -> Result<TruncSeries<PadicScalar>> {
    let p = u.prime();
    let ctx = PadicCtx::new(p, digits);
    let a4 = qseries(&ctx, &eisenstein(4, n), &PadicScalar::from_ratio(&ctx, -1, 48)?);
    let a6 = qseries(&ctx, &eisenstein(6, n), &PadicScalar::from_ratio(&ctx, 1, 864)?);
    let num = eval_iso_q(u.numerator(), &a4, &a6, &ctx, n as i64).map(|c| c.truncate_prec(u.num_prec()));
    let h = eval_iso_q(&u.univ_ctx().h, &a4, &a6, &ctx, n as i64);
    let hk = h.reciprocal()?.pow(u.h_den());
    Ok(num.mul(&hk).map(|c| c.mul_p_pow(-(u.p_den() as i64))))
}

/// `i(beta) ≡ E_2/12 mod (p^n, q^qdeg)`; for `p = 5, n = 2` also the `E_2^*` relation for `l~_1`.
pub fn check_q_expansions(p: u64, n: u32, qdeg: usize) -> Vec<CheckReport> {
    let e = n as i64;
    let mut out = Vec::new();
    let rep = CheckReport::new("qexp", e, qdeg as i64, "q").detail("i(beta) = E2/12, i(A4) = -E4/48, i(A6) = E6/864");
    let digits = e + 3;
    let run = || -> Result<Option<String>> {
        let cv = crate::pipeline::universal_curve(p, digits)?;
        let beta = beta_closed_form(&cv, n)?;
        let ib = q_image(&beta, qdeg, digits)?;
        let ctx = PadicCtx::new(p, digits);
        let target = qseries(&ctx, &eisenstein(2, qdeg), &PadicScalar::from_ratio(&ctx, 1, 12)?);
        Ok(series_witness(&ib, &target, e, qdeg as i64))
    };
    out.push(match run() {
        Ok(w) => rep.fail_if(w),
        Err(err) => rep.fail(err.to_string()),
    });
    if p == 5 && n >= 2 {
        out.push(check_e2_star(p, qdeg.min(6)));
    }
    out
}

/// `i(l~_((p-3)/2)) ≡ -p^2 (1-p)/24 E_2^*` modulo `p^2` (where both sides vanish) and,
/// after dividing by `p^2`, modulo `p`.
fn check_e2_star(p: u64, qdeg: usize) -> CheckReport {
    let rep = CheckReport::new("qexp_e2star", 2, qdeg as i64, "q")
        .detail("i(l~) ≡ -p^2(1-p)/24 E2* mod p^2, and i(l~)/p^2 ≡ -(1-p)/24 E2* mod p");
    let run = || -> Result<Option<String>> {
        let digits = 6;
        let cv = crate::pipeline::universal_curve(p, digits)?;
        let kf = hensel_split(&cv)?;
        let ell = kf.ell_tilde((p as usize - 3) / 2);
        let ctx = PadicCtx::new(p, digits);
        let pi = p as i64;
        let coef = PadicScalar::from_ratio(&ctx, -(1 - pi), 24)?;
        let star = qseries(&ctx, &e2_star(p, qdeg), &coef);
        let full = q_image(&ell, qdeg, digits)?;
        let target = star.map(|c| c.mul_p_pow(2));
        if let Some(w) = series_witness(&full, &target, 2, qdeg as i64) {
            return Ok(Some(format!("mod p^2: {w}")));
        }
        let reduced = q_image(&ell.mul_p_pow(-2), qdeg, digits)?;
        Ok(series_witness(&reduced, &star, 1, qdeg as i64).map(|w| format!("after dividing by p^2: {w}")))
    };
    match run() {
        Ok(w) => rep.fail_if(w),
        Err(err) => rep.fail(err.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_coefficients() {
        assert_eq!(eisenstein(2, 4), vec![1, -24, -72, -96]);
        assert_eq!(eisenstein(4, 3), vec![1, 240, 2160]);
        assert_eq!(eisenstein(6, 3), vec![1, -504, -16632]);
        // 1 - 24/(1-p) sum sigma*(k) q^k with sigma* the divisor sum prime to p
        let s = e2_star(5, 12);
        assert_eq!(s[0], 1);
        for (k, &c) in s.iter().enumerate().skip(1) {
            assert_eq!(c, 6 * divisor_sum(k as u64, 1, Some(5)));
        }
    }
}
