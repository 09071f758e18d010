//! Checks on one curve: the sigma ODE, the quadratic identity, Lemma 9 style
//! identity for the group law, the integrability ladder, the two routes to beta,
//! and stability under more precision.

use crate::curve::{Curve, CurveExpansions};
use crate::error::Result;
use crate::pipeline::SigmaRun;
use crate::scalar::Scalar;
use crate::series::{BivarSeries, TruncSeries};
use crate::sigma::{beta_direct, construct_zn, zeta_n};

use super::CheckReport;

/// `a ≡ b mod (p^e, t^upto)`, including that both sides reach `t^upto`.
pub(crate) fn series_witness<S: Scalar>(a: &TruncSeries<S>, b: &TruncSeries<S>, e: i64, upto: i64) -> Option<String> {
    let reach = a.prec().min(b.prec());
    if reach < upto {
        return Some(format!("series known only mod t^{reach}"));
    }
    a.first_mismatch(b, e, upto).map(|(n, x, y)| format!("t^{n}: {x:?} vs {y:?}"))
}

pub(crate) fn bivar_witness<S: Scalar>(a: &BivarSeries<S>, b: &BivarSeries<S>, e: i64, upto: i64) -> Option<String> {
    let reach = a.prec().min(b.prec());
    if reach < upto {
        return Some(format!("series known only to total degree {reach}"));
    }
    a.first_mismatch(b, e, upto).map(|(i, j, x, y)| format!("t1^{i} t2^{j}: {x:?} vs {y:?}"))
}

/// `D(D sigma / sigma) + x - beta`.
pub fn ode_residual<S: Scalar>(sigma: &TruncSeries<S>, exp: &CurveExpansions<S>, beta: &S) -> Result<TruncSeries<S>> {
    let ctx = exp.ctx();
    // sigma = t s with s(0) = 1, so sigma'/sigma = 1/t + s'/s
    let s = sigma.drop_below(1)?.shift(-1);
    let ls = s.diff().mul(&s.reciprocal()?);
    let log_d = ls.add(&TruncSeries::monomial(&ctx, S::one(&ctx), -1, ls.prec()));
    let dlog = log_d.mul(&exp.big_w_inv);
    let second = exp.derive(&dlog);
    Ok(second.add(&exp.x).sub(&TruncSeries::constant(&ctx, beta.clone(), second.prec())))
}

/// The defining ODE of sigma, modulo `(p^e, t^upto)`.
pub fn check_ode<S: Scalar>(sigma: &TruncSeries<S>, exp: &CurveExpansions<S>, beta: &S, e: i64, upto: i64) -> CheckReport {
    let rep = CheckReport::new("ode", e, upto, "t");
    match ode_residual(sigma, exp, beta) {
        Ok(r) => {
            let zero = TruncSeries::zero(r.ctx(), r.prec());
            rep.fail_if(series_witness(&r, &zero, e, upto))
        }
        Err(err) => rep.fail(err.to_string()),
    }
}

fn t1t2_squared<S: Scalar>(ctx: &S::Ctx, prec: i64) -> (BivarSeries<S>, BivarSeries<S>) {
    let t1 = BivarSeries::t1(ctx, prec);
    let t2 = BivarSeries::t2(ctx, prec);
    (t1.mul(&t1), t2.mul(&t2))
}

/// `sigma(F(t1,t2)) sigma(F(t1,-t2)) t1^2 t2^2 = (X2 t1^2 - X1 t2^2) sigma(t1)^2 sigma(t2)^2`
/// with `X = t^2 x(t)`, modulo `p^e` and total degree `total`.
pub fn check_quadratic<S: Scalar>(sigma: &TruncSeries<S>, exp: &CurveExpansions<S>, e: i64, total: i64) -> CheckReport {
    let rep = CheckReport::new("quadratic", e, total, "deg");
    let run = || -> Result<Option<String>> {
        let ctx = exp.ctx();
        let f = exp.formal_group_law(total)?;
        let sig = sigma.truncate(total);
        let lhs_a = f.compose_into(&sig)?;
        let lhs_b = f.negate_t2().compose_into(&sig)?;
        let (t1sq, t2sq) = t1t2_squared::<S>(&ctx, total);
        let lhs = lhs_a.mul(&lhs_b).mul(&t1sq).mul(&t2sq);
        let xh = exp.x_hat.truncate(total);
        let x1 = BivarSeries::from_series(&xh, false)?;
        let x2 = BivarSeries::from_series(&xh, true)?;
        let s1 = BivarSeries::from_series(&sig, false)?;
        let s2 = BivarSeries::from_series(&sig, true)?;
        let rhs = x2.mul(&t1sq).sub(&x1.mul(&t2sq)).mul(&s1.mul(&s1)).mul(&s2.mul(&s2));
        Ok(bivar_witness(&lhs, &rhs, e, total))
    };
    match run() {
        Ok(w) => rep.fail_if(w),
        Err(err) => rep.fail(err.to_string()),
    }
}

/// `D(D(x1 - x2)/(x1 - x2)) = 2 x1 - x(F(t1,t2)) - x(F(t1,-t2))` after clearing the poles.
pub fn check_lemma9<S: Scalar>(exp: &CurveExpansions<S>, e: i64, total: i64) -> CheckReport {
    let rep = CheckReport::new("lemma9", e, total, "deg");
    let run = || -> Result<Option<String>> {
        let ctx = exp.ctx();
        let f = exp.formal_group_law(total)?;
        let fm = f.negate_t2();
        let xh = exp.x_hat.truncate(total);
        let x1 = BivarSeries::from_series(&xh, false)?;
        let x2 = BivarSeries::from_series(&xh, true)?;
        let (t1sq, t2sq) = t1t2_squared::<S>(&ctx, total);
        // Y1 = t1^3 y(t1), DY1 = t1^4 (Dy)(t1)
        let y1 = BivarSeries::from_series(&exp.y.shift(3).truncate(total), false)?;
        let dy1 = BivarSeries::from_series(&exp.derive(&exp.y).shift(4).truncate(total), false)?;
        let pp = t2sq.mul(&x1).sub(&t1sq.mul(&x2));
        let f2 = f.mul(&f);
        let fm2 = fm.mul(&fm);
        let ff = f2.mul(&fm2);
        let xf = f.compose_into(&xh)?;
        let xfm = fm.compose_into(&xh)?;
        let four = S::from_int(&ctx, 4);
        let lhs = t2sq.mul(&dy1.mul(&pp).scale(&S::from_int(&ctx, 2)).sub(&y1.mul(&y1).mul(&t2sq).scale(&four))).mul(&ff);
        let inner = x1.mul(&ff).scale(&S::from_int(&ctx, 2)).sub(&t1sq.mul(&xf).mul(&fm2)).sub(&t1sq.mul(&xfm).mul(&f2));
        let rhs = pp.mul(&pp).mul(&inner);
        Ok(bivar_witness(&lhs, &rhs, e, total))
    };
    match run() {
        Ok(w) => rep.fail_if(w),
        Err(err) => rep.fail(err.to_string()),
    }
}

/// `v_p([t^(m-1)]((-x + beta) W)) >= v_p(m)` for `m <= upto`.
pub fn check_ladder<S: Scalar>(run: &SigmaRun<S>, upto: i64) -> CheckReport {
    let zd = &run.zeta;
    let reach = zd.numerators.prec() - 1;
    let rep = CheckReport::new("ladder", zd.n_beta, upto, "t").detail(format!("m <= {upto}, beta mod p^{}", zd.n_beta));
    if reach < upto {
        return rep.fail(format!("numerators known only to m = {reach}"));
    }
    rep.fail_if(zd.ladder_violation(upto).map(|(m, c)| format!("m = {m}: {c:?}")))
}

/// Standalone ladder check at `beta mod p^n_beta`, without computing sigma.
pub fn check_ladder_at<S: Scalar>(curve: &Curve<S>, n_beta: u32, upto: i64) -> Result<CheckReport> {
    let exp = curve.expansions(upto + 4)?;
    let beta = crate::sigma::beta_closed_form(curve, n_beta)?;
    let zd = crate::sigma::zeta_series(&exp, &beta, n_beta as i64, upto + 2)?;
    let rep = CheckReport::new("ladder", n_beta as i64, upto, "t").detail(format!("m <= {upto}, beta mod p^{n_beta}"));
    Ok(rep.fail_if(zd.ladder_violation(upto).map(|(m, c)| format!("m = {m}: {c:?}"))))
}

/// Expansion length needed by [`check_beta_paths`].
pub fn beta_paths_degree(p: u64) -> i64 {
    let p = p as i64;
    p * p + 6
}

/// `beta` from the series coefficients against `J_n / H_n` from `z_n`, for `n = 1, 2`,
/// together with the structural facts about `z_1, z_2`.
///
/// Returns the reports `beta` and `zn`.
pub fn check_beta_paths<S: Scalar>(exp: &CurveExpansions<S>) -> Vec<CheckReport> {
    let p = exp.a4.prime();
    let pi = p as i64;
    let ctx = exp.ctx();
    let mut beta_rep = CheckReport::new("beta", 2, pi * pi, "t").detail("series route vs J_n/H_n, n = 1, 2");
    let mut zn_rep = CheckReport::new("zn", 1, 3, "t").detail("H_1 = w_(p-1), H_2 ≡ H_1^(p+1), z_2 ≡ z_1^p + H_1^p z_1 mod p, D zeta_n ≡ -x + beta_n mod p^n");
    let run = || -> Result<(Option<String>, Option<String>)> {
        let direct = beta_direct(exp, 2)?;
        let z1 = construct_zn(exp, 1, pi * (pi - 1) + 3)?;
        let z2 = construct_zn(exp, 2, 3)?;
        let mut bw = None;
        for (lvl, zd) in [(1usize, &z1), (2, &z2)] {
            if bw.is_none() && !zd.beta_n.congruent(&direct[lvl - 1], lvl as i64) {
                bw = Some(format!("n = {lvl}: {:?} vs {:?}", direct[lvl - 1], zd.beta_n));
            }
        }
        let mut zw = None;
        let w = exp.w_coeff(pi - 1);
        if !z1.h_n.congruent(&w, w.abs_prec().min(z1.h_n.abs_prec())) {
            zw = Some(format!("H_1 = {:?} but w_(p-1) = {w:?}", z1.h_n));
        }
        if zw.is_none() && !z2.h_n.congruent(&z1.h_n.pow(p + 1), 1) {
            zw = Some(format!("H_2 = {:?}", z2.h_n));
        }
        if zw.is_none() {
            let rhs = z1.z.pow(p as u32).add(&z1.z.scale(&z1.h_n.pow(p)));
            zw = series_witness(&z2.z, &rhs, 1, 3).map(|w| format!("z_2 congruence: {w}"));
        }
        for zd in [&z1, &z2] {
            if zw.is_some() {
                break;
            }
            let n = zd.level as i64;
            let zeta = zeta_n(zd)?;
            let lhs = exp.derive(&zeta);
            let rhs = exp.x.neg().add(&TruncSeries::constant(&ctx, zd.beta_n.clone(), exp.x.prec()));
            let upto = lhs.prec().min(rhs.prec()).min(2);
            zw = series_witness(&lhs, &rhs, n, upto).map(|w| format!("D zeta_{n}: {w}"));
        }
        Ok((bw, zw))
    };
    match run() {
        Ok((bw, zw)) => {
            beta_rep = beta_rep.fail_if(bw);
            zn_rep = zn_rep.fail_if(zw);
        }
        Err(err) => {
            beta_rep = beta_rep.fail(err.to_string());
            zn_rep = zn_rep.fail(err.to_string());
        }
    }
    vec![beta_rep, zn_rep]
}

/// Every certified coefficient of `base` is reproduced by the run `more` with more precision.
pub fn check_stability<S: Scalar>(base: &SigmaRun<S>, more: &SigmaRun<S>) -> CheckReport {
    let m = base.m;
    let rep = CheckReport::new("stability", base.e_target, m + 1, "t").detail(format!("recomputed to t^{}", more.m));
    let witness = (1..=m).find_map(|n| {
        let (a, b) = (base.sigma.sigma.coeff(n), more.sigma.sigma.coeff(n));
        // exact zeros carry an infinite certificate
        let e = base.sigma.cert[n as usize].min(more.sigma.cert[n as usize]).min(a.abs_prec()).min(b.abs_prec());
        if e < base.e_target {
            return Some(format!("t^{n} certified only to p^{e}"));
        }
        (!a.congruent(&b, e)).then(|| format!("t^{n}: {a:?} vs {b:?}"))
    });
    let beta_e = base.zeta.n_beta.min(more.zeta.n_beta);
    let witness = witness.or_else(|| {
        (!base.zeta.beta().congruent(&more.zeta.beta(), beta_e)).then(|| format!("beta: {:?} vs {:?}", base.zeta.beta(), more.zeta.beta()))
    });
    rep.fail_if(witness)
}
