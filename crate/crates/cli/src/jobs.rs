//! The computations behind each subcommand.

use std::marker::PhantomData;

use padic_sigma::curve::Curve;
use padic_sigma::pipeline::{default_digits, run_sigma, specialized_curve, universal_curve, validate_prime, Ratio};
use padic_sigma::quotient::{hensel_split, quotient_models};
use padic_sigma::scalar::Scalar;
use padic_sigma::sigma::{beta_closed_form, beta_direct, construct_zn};
use padic_sigma::verify::{run_suite, SuiteConfig};
use padic_sigma::{Result, SigmaError};

use crate::doc::{cert_text, CheckJson, Doc, Encode, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Sigma,
    Zeta,
    Beta,
    Lift,
    Verify,
    Expand,
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub p: u64,
    /// `None` for the universal curve.
    pub coeffs: Option<(Ratio, Ratio)>,
    pub e_target: i64,
    pub m: i64,
    pub qdeg: usize,
    pub checks: Option<Vec<String>>,
    pub iterate: usize,
}

impl JobConfig {
    pub fn validate(&self) -> Result<()> {
        validate_prime(self.p)?;
        if self.e_target < 1 {
            return Err(SigmaError::InvalidConfig("-e must be at least 1".into()));
        }
        if self.m < 8 {
            return Err(SigmaError::InvalidConfig("-M must be at least 8".into()));
        }
        if self.iterate == 0 {
            return Err(SigmaError::InvalidConfig("--iterate must be at least 1".into()));
        }
        if self.iterate > 1 && self.coeffs.is_none() {
            return Err(SigmaError::InvalidConfig("--iterate needs a specialized curve".into()));
        }
        Ok(())
    }

    /// Starting working digits for a command; one retry adds four.
    pub fn digits(&self, cmd: Command) -> i64 {
        let base = default_digits(self.p, self.e_target, self.m);
        match cmd {
            Command::Sigma | Command::Zeta => base,
            Command::Beta | Command::Expand => self.e_target + 4,
            Command::Lift => base + 3 + 4 * (self.iterate as i64 - 1),
            Command::Verify => base + 3,
        }
    }
}

/// Runs `cmd` at `digits` working digits.
pub fn run(cmd: Command, cfg: &JobConfig, digits: i64) -> Result<Doc> {
    let mut doc = Doc { p: cfg.p, ..Doc::default() };
    if cmd == Command::Verify {
        verify(cfg, digits, &mut doc)?;
        return Ok(doc);
    }
    match cfg.coeffs {
        Some((a4, a6)) => dispatch(cmd, cfg, &specialized_curve(cfg.p, a4, a6, digits)?, &mut doc)?,
        None => dispatch(cmd, cfg, &universal_curve(cfg.p, digits)?, &mut doc)?,
    }
    Ok(doc)
}

fn dispatch<S: Encode>(cmd: Command, cfg: &JobConfig, curve: &Curve<S>, doc: &mut Doc) -> Result<()> {
    doc.mode = S::MODE;
    curve.require_ordinary()?;
    let mut t = Table::<S> { doc, e: cfg.e_target, marker: PhantomData };
    match cmd {
        Command::Sigma => sigma(cfg, curve, &mut t),
        Command::Zeta => zeta(cfg, curve, &mut t),
        Command::Beta => beta(cfg, curve, &mut t),
        Command::Lift => lift(cfg, curve, &mut t),
        Command::Expand => expand(cfg, curve, &mut t),
        Command::Verify => unreachable!("handled by run"),
    }
}

fn abs<S: Scalar>(n: i64, c: S) -> (i64, S, i64) {
    let a = c.abs_prec();
    (n, c, a)
}

fn sigma<S: Encode>(cfg: &JobConfig, curve: &Curve<S>, t: &mut Table<S>) -> Result<()> {
    let run = run_sigma(curve, cfg.e_target, cfg.m)?;
    let coeffs = (1..=cfg.m).step_by(2).map(|n| (n, run.sigma.sigma.coeff(n), run.sigma.cert[n as usize]));
    t.push("sigma", coeffs)?;
    t.push("beta", [(0, run.zeta.beta(), run.zeta.n_beta)])
}

fn zeta<S: Encode>(cfg: &JobConfig, curve: &Curve<S>, t: &mut Table<S>) -> Result<()> {
    let run = run_sigma(curve, cfg.e_target, cfg.m)?;
    t.push("zeta", (-1..=cfg.m).step_by(2).map(|n| abs(n, run.zeta.zeta.coeff(n))))?;
    t.push("beta", [(0, run.zeta.beta(), run.zeta.n_beta)])
}

/// Largest `p^n` for which the series route to `beta mod p^n` is run.
const SERIES_ROUTE_LIMIT: u64 = 2500;

fn beta<S: Encode>(cfg: &JobConfig, curve: &Curve<S>, t: &mut Table<S>) -> Result<()> {
    let p = curve.p();
    let e = cfg.e_target;
    let b = beta_closed_form(curve, e as u32)?.truncate_prec(e);
    t.push("beta", [(0, b, e)])?;
    t.push("hasse", [abs(p as i64 - 1, curve.h.clone())])?;
    // the other two routes, each at its own level
    let mut top = 0u32;
    while top < e as u32 && p.pow(top + 1) <= SERIES_ROUTE_LIMIT {
        top += 1;
    }
    if top == 0 {
        return Ok(());
    }
    let zn_top = top.min(2);
    let exp = curve.expansions(p.pow(top).max(p.pow(zn_top) + 4) as i64 + 2)?;
    let levels = beta_direct(&exp, top)?;
    let rows = levels.iter().enumerate().map(|(i, b)| {
        let n = i as i64 + 1;
        (n, b.encode(n), cert_text(p, n))
    });
    t.doc.series.insert("beta_series".into(), rows.collect());
    let mut rows = Vec::new();
    for level in 1..=zn_top {
        let zd = construct_zn(&exp, level, 3)?;
        let n = level as i64;
        rows.push((n, zd.beta_n.encode(n), cert_text(p, n)));
    }
    t.doc.series.insert("beta_zn".into(), rows);
    Ok(())
}

fn expand<S: Encode>(cfg: &JobConfig, curve: &Curve<S>, t: &mut Table<S>) -> Result<()> {
    let m = cfg.m;
    let exp = curve.expansions(m + 1)?;
    t.push("x", (-2..=m).step_by(2).map(|n| abs(n, exp.x.coeff(n))))?;
    t.push("y", (-3..=m).step_by(2).map(|n| abs(n, exp.y.coeff(n))))?;
    t.push("w", (3..=m).step_by(2).map(|n| abs(n, exp.w.coeff(n))))?;
    t.push("W", (0..=m).step_by(2).map(|n| abs(n, exp.big_w.coeff(n))))?;
    t.push("hasse", [abs(curve.p() as i64 - 1, curve.h.clone())])
}

fn lift<S: Encode>(cfg: &JobConfig, curve: &Curve<S>, t: &mut Table<S>) -> Result<()> {
    let m = cfg.m;
    let exp = curve.expansions(m + 2)?;
    let kf = hensel_split(curve)?;
    let qd = quotient_models(curve, &kf, &exp)?;
    t.push("alpha", [abs(4, qd.a4_ph.clone()), abs(6, qd.a6_ph.clone())])?;
    t.push("alpha0", [abs(4, qd.a4_p.clone()), abs(6, qd.a6_p.clone())])?;
    t.push("phi", kf.phi.coeffs().iter().enumerate().map(|(i, c)| abs(i as i64, c.clone())))?;
    t.push("t_prime", (1..=m).map(|n| abs(n, qd.t_prime.coeff(n))))?;
    t.push("u", (0..=m).map(|n| abs(n, qd.u.coeff(n))))?;
    if cfg.iterate > 1 {
        let mut cur = qd.image_curve();
        for i in 1..=cfg.iterate {
            cur.require_ordinary()?;
            t.push(&format!("curve_{i:02}"), [abs(4, cur.a4.clone()), abs(6, cur.a6.clone())])?;
            if i < cfg.iterate {
                let kf = hensel_split(&cur)?;
                let exp = cur.expansions(8)?;
                cur = quotient_models(&cur, &kf, &exp)?.image_curve();
            }
        }
    }
    Ok(())
}

fn verify(cfg: &JobConfig, digits: i64, doc: &mut Doc) -> Result<()> {
    let suite = SuiteConfig {
        p: cfg.p,
        coeffs: cfg.coeffs,
        e_target: cfg.e_target,
        m: cfg.m,
        digits: Some(digits),
        checks: cfg.checks.clone(),
        qdeg: cfg.qdeg,
    };
    let out = run_suite(&suite)?;
    doc.mode = if cfg.coeffs.is_some() { "specialized" } else { "universal" };
    if let Some(d) = &out.discriminant {
        doc.series.insert("discriminant".into(), vec![(0, d.to_string(), "exact".into())]);
    }
    doc.checks = Some(out.reports.iter().map(|r| CheckJson::from_report(r, cfg.p)).collect());
    Ok(())
}
