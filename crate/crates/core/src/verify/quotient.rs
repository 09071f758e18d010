//! Checks tying a curve to its quotient by the canonical subgroup.

use crate::error::Result;
use crate::pipeline::SigmaRun;
use crate::quotient::{KernelFactorization, QuotientData};
use crate::scalar::Scalar;
use crate::series::TruncSeries;

use super::analytic::series_witness;
use super::CheckReport;

/// Reports `prop8`, `eta`, `prop12a` and `fel` modulo `(p^e, t^upto)`.
///
/// `image` is the sigma run on the quotient model `(a4_ph, a6_ph)`.
pub fn check_quotient<S: Scalar>(
    run: &SigmaRun<S>,
    image: &SigmaRun<S>,
    kf: &KernelFactorization<S>,
    qd: &QuotientData<S>,
    e: i64,
    upto: i64,
) -> Vec<CheckReport> {
    let mut out = vec![
        wrap(CheckReport::new("prop8", e, upto, "t"), prop8(run, image, kf, qd, e, upto)),
        wrap(CheckReport::new("eta", e - 1, 0, "t"), eta(run, image, qd, e - 1)),
        wrap(CheckReport::new("prop12a", e, upto, "t"), prop12a(run, image, kf, qd, e, upto)),
        wrap(CheckReport::new("fel", e, upto, "t"), fel(run, image, qd, e, upto)),
    ];
    out[1].detail = "(p/H) beta' + (H/p)(T' - p beta)".into();
    out[2].detail = "zeta'(t') = H zeta + (H/p) D phi / phi, cross-multiplied".into();
    out[3].detail = "g - g'(t')/p = log(u)/p".into();
    out
}

fn wrap(rep: CheckReport, r: Result<Option<String>>) -> CheckReport {
    match r {
        Ok(w) => rep.fail_if(w),
        Err(err) => rep.fail(err.to_string()),
    }
}

fn prop8<S: Scalar>(
    run: &SigmaRun<S>,
    image: &SigmaRun<S>,
    kf: &KernelFactorization<S>,
    qd: &QuotientData<S>,
    e: i64,
    upto: i64,
) -> Result<Option<String>> {
    let cv = &run.curve;
    let ctx = cv.ctx();
    let p = cv.p();
    let h = &cv.h;
    let hinv = h.inv()?;
    let scalar_facts = [
        ("phi ≡ H mod p (constant term)", kf.phi.coeff(0).congruent(h, 1)),
        ("l~_((p-3)/2) ≡ 0 mod p^2", kf.ell_tilde((p as usize - 3) / 2).congruent(&S::zero(&ctx), 2)),
        ("alpha(A4) ≡ a4^p", qd.a4_ph.congruent(&cv.a4.pow(p), 1)),
        ("alpha(A6) ≡ a6^p", qd.a6_ph.congruent(&cv.a6.pow(p), 1)),
        ("alpha0(A4) ≡ a4^p/H^4", qd.a4_p.congruent(&cv.a4.pow(p).mul(&hinv.pow(4)), 1)),
        ("alpha0(A6) ≡ a6^p/H^6", qd.a6_p.congruent(&cv.a6.pow(p).mul(&hinv.pow(6)), 1)),
        ("alpha(H) ≡ H^p", qd.h_prime.congruent(&h.pow(p), 1)),
        ("lead of t' = p/H", qd.t_prime.coeff(1).congruent(&S::from_int(&ctx, p as i64).mul(&hinv), e)),
        ("u(0) = 1", qd.u.coeff(0).congruent(&S::one(&ctx), e)),
    ];
    if let Some((name, _)) = scalar_facts.iter().find(|(_, ok)| !ok) {
        return Ok(Some(name.to_string()));
    }
    let tp = TruncSeries::monomial(&ctx, S::one(&ctx), p as i64, qd.t_prime.prec());
    if let Some(w) = series_witness(&qd.t_prime, &tp, 1, upto) {
        return Ok(Some(format!("t' ≡ t^p mod p: {w}")));
    }
    let one = TruncSeries::one(&ctx, qd.u.prec());
    if let Some(w) = series_witness(&qd.u, &one, 1, upto) {
        return Ok(Some(format!("u ≡ 1 mod p: {w}")));
    }
    let logu = qd.u.log()?;
    if let Some(w) = series_witness(&logu, &TruncSeries::zero(&ctx, logu.prec()), 1, upto) {
        return Ok(Some(format!("log(u)/p integral: {w}")));
    }
    // psi^* omega' = (p/H) omega
    let lhs = qd.t_prime.diff().mul(&image.exp.big_w.compose(&qd.t_prime)?);
    let rhs = run.exp.big_w.scale(&S::from_int(&ctx, p as i64).mul(&hinv));
    if let Some(w) = series_witness(&lhs, &rhs, e, upto) {
        return Ok(Some(format!("dt'/dt W'(t') = (p/H) W: {w}")));
    }
    Ok(None)
}

fn eta<S: Scalar>(run: &SigmaRun<S>, image: &SigmaRun<S>, qd: &QuotientData<S>, e: i64) -> Result<Option<String>> {
    let ctx = run.curve.ctx();
    let h = &run.curve.h;
    let p = S::from_int(&ctx, run.curve.p() as i64);
    let first = p.mul(&h.inv()?).mul(&image.zeta.beta());
    let second = qd.t_prime_x.sub(&p.mul(&run.zeta.beta())).mul_p_pow(-1).mul(h);
    let eta = first.add(&second);
    Ok((!eta.congruent(&S::zero(&ctx), e)).then(|| format!("eta = {eta:?}")))
}

/// `p H + p t Phi u R(t') - p t Phi u H zeta(t) = -2 H u Y Phi_1`, where
/// `R(s) = zeta'(s) - 1/s`, `Phi = t^(p-1) phi(x)`, `Phi_1 = t^(p-3) phi'(x)`, `Y = -t^3 y`.
fn prop12a<S: Scalar>(
    run: &SigmaRun<S>,
    image: &SigmaRun<S>,
    kf: &KernelFactorization<S>,
    qd: &QuotientData<S>,
    e: i64,
    upto: i64,
) -> Result<Option<String>> {
    let ctx = run.curve.ctx();
    let p = run.curve.p();
    let h = &run.curve.h;
    let ps = S::from_int(&ctx, p as i64);
    let zp = &image.zeta.zeta;
    let r = zp.sub(&TruncSeries::monomial(&ctx, S::one(&ctx), -1, zp.prec())).drop_below(1)?;
    let r_t = r.compose(&qd.t_prime)?;
    let t_phi_u = qd.phi_hat.mul(&qd.u).shift(1);
    let lhs = TruncSeries::constant(&ctx, ps.mul(h), upto + 1)
        .add(&t_phi_u.mul(&r_t).scale(&ps))
        .sub(&t_phi_u.mul(&run.zeta.zeta).scale(&ps.mul(h)));
    let d = (p as usize - 1) / 2;
    let phi1_hat = kf.phi.deriv().homogenized(d - 1, &run.exp.x_hat);
    let rhs = qd.u.mul(&run.exp.x_hat).mul(&phi1_hat).scale(&h.mul_int(-2));
    Ok(series_witness(&lhs, &rhs, e, upto))
}

fn fel<S: Scalar>(run: &SigmaRun<S>, image: &SigmaRun<S>, qd: &QuotientData<S>, e: i64, upto: i64) -> Result<Option<String>> {
    let ctx = run.curve.ctx();
    let g = &run.sigma.g_hat;
    let gp = image.sigma.g_hat.compose(&qd.t_prime)?.map(|c| c.mul_p_pow(-1));
    let diff = g.sub(&gp);
    let target = qd.u.log()?.map(|c| c.mul_p_pow(-1));
    let res = diff.sub(&target);
    // g and g' come from representatives of beta and beta'; the errors are
    // delta Omega^2 / 2 and (1/p) delta' ((p/H) Omega)^2 / 2
    let om2 = run.zeta.omega_int.square();
    let floor_beta = run.zeta.n_beta.min(image.zeta.n_beta + 1);
    let reach = res.prec().min(om2.prec());
    if reach < upto {
        return Ok(Some(format!("series known only mod t^{reach}")));
    }
    for n in 0..upto {
        let c = res.coeff(n);
        let floor = if n >= om2.start() { floor_beta + om2.coeff(n).valuation().min(crate::scalar::EXACT) } else { crate::scalar::EXACT };
        let cert = c.abs_prec().min(floor);
        if cert < e {
            return Ok(Some(format!("t^{n} certified only to p^{cert}")));
        }
        if !c.congruent(&S::zero(&ctx), e) {
            return Ok(Some(format!("t^{n}: residual {c:?}")));
        }
        let dn = diff.coeff(n);
        if dn.valuation() < 0 && dn.abs_prec() > dn.valuation() {
            return Ok(Some(format!("t^{n}: g - g'(t')/p not integral: {dn:?}")));
        }
    }
    Ok(None)
}
