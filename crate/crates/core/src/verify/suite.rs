//! Runs a selection of checks for one configuration.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Result, SigmaError};
use crate::pipeline::{default_digits, run_sigma, specialized_curve, universal_curve, with_retry, Ratio, SigmaRun};
use crate::quotient::{hensel_split, quotient_models};
use crate::scalar::{PadicScalar, Scalar, UnivScalar};

use super::analytic::{beta_paths_degree, check_beta_paths, check_lemma9, check_ode, check_quadratic, check_stability};
use super::{check_commutation, check_hasse_lifts, check_ladder, check_q_expansions, check_quotient, check_weights, CheckReport};

pub const ALL_CHECKS: &[&str] = &[
    "ode",
    "quadratic",
    "lemma9",
    "beta",
    "zn",
    "ladder",
    "prop8",
    "eta",
    "prop12a",
    "fel",
    "hasse",
    "qexp",
    "weights",
    "commutation",
    "stability",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub p: u64,
    /// `None` selects the universal curve.
    pub coeffs: Option<(Ratio, Ratio)>,
    pub e_target: i64,
    pub m: i64,
    /// Working digits; defaults to [`default_digits`] plus three for the quotient.
    pub digits: Option<i64>,
    /// Check ids to run; `None` runs everything that applies.
    pub checks: Option<Vec<String>>,
    pub qdeg: usize,
}

impl SuiteConfig {
    pub fn specialized(p: u64, a4: i64, a6: i64, e_target: i64, m: i64) -> Self {
        SuiteConfig { p, coeffs: Some((Ratio::int(a4), Ratio::int(a6))), e_target, m, digits: None, checks: None, qdeg: 8 }
    }

    pub fn universal(p: u64, e_target: i64, m: i64) -> Self {
        SuiteConfig { p, coeffs: None, e_target, m, digits: None, checks: None, qdeg: 8 }
    }

    fn wants(&self, id: &str) -> bool {
        self.checks.as_ref().is_none_or(|c| c.iter().any(|x| x == id))
    }

    pub fn working_digits(&self) -> i64 {
        self.digits.unwrap_or_else(|| default_digits(self.p, self.e_target, self.m) + 3)
    }

    /// Rejects unknown check names.
    pub fn validate(&self) -> Result<()> {
        if let Some(cs) = &self.checks {
            if let Some(bad) = cs.iter().find(|c| !ALL_CHECKS.contains(&c.as_str())) {
                return Err(SigmaError::InvalidConfig(format!("unknown check {bad:?}; known: {}", ALL_CHECKS.join(","))));
            }
        }
        if self.qdeg == 0 {
            return Err(SigmaError::InvalidConfig("the q-degree must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub reports: Vec<CheckReport>,
    /// `-16 (4 a4^3 + 27 a6^2)` as an exact rational, in specialized mode.
    pub discriminant: Option<BigRational>,
}

impl SuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.status != super::Status::Fail)
    }
}

pub fn exact_discriminant(a4: Ratio, a6: Ratio) -> BigRational {
    let r = |x: Ratio| BigRational::new(BigInt::from(x.num), BigInt::from(x.den));
    let (a, b) = (r(a4), r(a6));
    let inner = BigRational::from_integer(4.into()) * &a * &a * &a + BigRational::from_integer(27.into()) * &b * &b;
    BigRational::from_integer((-16).into()) * inner
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    cfg.validate()?;
    match cfg.coeffs {
        Some((a4, a6)) => specialized_suite(cfg, a4, a6),
        None => universal_suite(cfg),
    }
}

fn sigma_run_padic(cfg: &SuiteConfig, a4: Ratio, a6: Ratio, digits: i64, e: i64, m: i64) -> Result<SigmaRun<PadicScalar>> {
    with_retry(digits, |d| run_sigma(&specialized_curve(cfg.p, a4, a6, d)?, e, m))
}

/// Checks shared by both modes.
fn common_checks<S: Scalar>(cfg: &SuiteConfig, run: &SigmaRun<S>, out: &mut Vec<CheckReport>) {
    let (e, m) = (cfg.e_target, cfg.m);
    if cfg.wants("ode") {
        out.push(check_ode(&run.sigma.sigma, &run.exp, &run.zeta.beta(), e, m - 2));
    }
    if cfg.wants("quadratic") {
        out.push(check_quadratic(&run.sigma.sigma, &run.exp, e, m.min(24)));
    }
    if cfg.wants("lemma9") {
        out.push(check_lemma9(&run.exp, e, m.min(20)));
    }
    if cfg.wants("beta") || cfg.wants("zn") {
        match run.curve.expansions(beta_paths_degree(cfg.p)) {
            Ok(exp) => out.extend(check_beta_paths(&exp).into_iter().filter(|r| cfg.wants(&r.id))),
            Err(err) => out.push(CheckReport::from_error("beta", &err)),
        }
    }
    if cfg.wants("ladder") {
        out.push(check_ladder(run, m));
    }
}

fn quotient_checks<S: Scalar>(cfg: &SuiteConfig, run: &SigmaRun<S>, out: &mut Vec<CheckReport>) {
    let ids = ["prop8", "eta", "prop12a", "fel"];
    if !ids.iter().any(|id| cfg.wants(id)) {
        return;
    }
    let built = hensel_split(&run.curve).and_then(|kf| {
        let qd = quotient_models(&run.curve, &kf, &run.exp)?;
        let image = run_sigma(&qd.image_curve(), cfg.e_target, run.m)?;
        Ok((kf, qd, image))
    });
    match built {
        Ok((kf, qd, image)) => {
            let reps = check_quotient(run, &image, &kf, &qd, cfg.e_target, run.m.min(30));
            out.extend(reps.into_iter().filter(|r| cfg.wants(&r.id)));
        }
        Err(err) => out.extend(ids.iter().filter(|id| cfg.wants(id)).map(|id| CheckReport::from_error(id, &err))),
    }
}

fn prime_checks(cfg: &SuiteConfig, out: &mut Vec<CheckReport>) {
    if cfg.wants("hasse") {
        out.push(check_hasse_lifts(cfg.p));
    }
    if cfg.wants("qexp") {
        let n = cfg.e_target.clamp(1, 2) as u32;
        out.extend(check_q_expansions(cfg.p, n, cfg.qdeg));
    }
}

fn specialized_suite(cfg: &SuiteConfig, a4: Ratio, a6: Ratio) -> Result<SuiteOutcome> {
    let digits = cfg.working_digits();
    let (e, m) = (cfg.e_target, cfg.m);
    let curve = specialized_curve(cfg.p, a4, a6, digits)?;
    curve.require_ordinary()?;
    let run = sigma_run_padic(cfg, a4, a6, digits, e, m)?;
    let mut out = Vec::new();
    common_checks(cfg, &run, &mut out);
    quotient_checks(cfg, &run, &mut out);
    if cfg.wants("stability") {
        out.push(match sigma_run_padic(cfg, a4, a6, digits + 2, e, m + 10) {
            Ok(more) => check_stability(&run, &more),
            Err(err) => CheckReport::from_error("stability", &err),
        });
    }
    prime_checks(cfg, &mut out);
    if cfg.wants("weights") {
        out.push(CheckReport::skipped("weights", "universal mode only"));
    }
    if cfg.wants("commutation") {
        out.push(commutation(cfg, a4, a6));
    }
    Ok(SuiteOutcome { reports: out, discriminant: Some(exact_discriminant(a4, a6)) })
}

/// Universal sigma mod `(p, t^12)` specialized at `(a4, a6)` against the direct computation.
fn commutation(cfg: &SuiteConfig, a4: Ratio, a6: Ratio) -> CheckReport {
    let m = cfg.m.min(12);
    let run = || -> Result<CheckReport> {
        let univ = universal_run(cfg.p, 1, m)?;
        let spec = sigma_run_padic(cfg, a4, a6, default_digits(cfg.p, 1, m), 1, m)?;
        Ok(check_commutation(&univ, &spec, 1, m - 1))
    };
    run().unwrap_or_else(|err| CheckReport::from_error("commutation", &err))
}

pub fn universal_run(p: u64, e: i64, m: i64) -> Result<SigmaRun<UnivScalar>> {
    with_retry(default_digits(p, e, m), |d| run_sigma(&universal_curve(p, d)?, e, m))
}

fn universal_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let (e, m) = (cfg.e_target, cfg.m);
    let digits = cfg.working_digits();
    let run = with_retry(digits, |d| run_sigma(&universal_curve(cfg.p, d)?, e, m))?;
    let mut out = Vec::new();
    common_checks(cfg, &run, &mut out);
    quotient_checks(cfg, &run, &mut out);
    if cfg.wants("stability") {
        out.push(match with_retry(digits + 2, |d| run_sigma(&universal_curve(cfg.p, d)?, e, m + 10)) {
            Ok(more) => check_stability(&run, &more),
            Err(err) => CheckReport::from_error("stability", &err),
        });
    }
    prime_checks(cfg, &mut out);
    if cfg.wants("weights") {
        out.push(check_weights(&run));
    }
    if cfg.wants("commutation") {
        out.push(CheckReport::skipped("commutation", "needs a specialized curve"));
    }
    Ok(SuiteOutcome { reports: out, discriminant: None })
}
