mod doc;
mod jobs;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use padic_sigma::pipeline::{with_retry, Ratio};
use padic_sigma::SigmaError;

use jobs::{Command, JobConfig};

/// p-adic Weierstrass sigma and zeta functions of y^2 = x^3 + a4 x + a6.
#[derive(Parser)]
#[command(name = "psigma", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Cmd {
    /// Coefficients of sigma(t) and the constant beta.
    Sigma,
    /// Coefficients of zeta(t).
    Zeta,
    /// beta by the closed form, the series route and the z_n route.
    Beta,
    /// Frobenius lift on coefficients, the kernel factor phi, t' and u.
    Lift,
    /// Run the identity checks.
    Verify,
    /// Expansions x(t), y(t), w(t) and W(t).
    Expand,
}

#[derive(Args)]
struct Opts {
    /// Prime p >= 5.
    #[arg(short = 'p', global = true)]
    p: Option<u64>,
    /// Coefficient a4 (integer or fraction).
    #[arg(long, global = true, allow_hyphen_values = true)]
    a4: Option<String>,
    /// Coefficient a6 (integer or fraction).
    #[arg(long, global = true, allow_hyphen_values = true)]
    a6: Option<String>,
    /// Use the universal curve over Z_p[A4, A6][1/H].
    #[arg(long, global = true)]
    universal: bool,
    /// Target p-adic precision e: results are certified modulo p^e.
    #[arg(short = 'e', long = "prec", global = true, default_value_t = 2)]
    prec: i64,
    /// Largest t-degree reported.
    #[arg(short = 'M', long = "tdeg", global = true, default_value_t = 20)]
    tdeg: i64,
    /// q-degree for the q-expansion check.
    #[arg(long, global = true, default_value_t = 8)]
    qdeg: usize,
    /// Comma-separated check ids for `verify`.
    #[arg(long, global = true, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    /// Number of successive image curves for `lift`.
    #[arg(long, global = true, default_value_t = 1)]
    iterate: usize,
}

fn exit_code(err: &SigmaError) -> u8 {
    match err {
        SigmaError::InvalidConfig(_) => 1,
        SigmaError::NotAUnit(_) => 2,
        SigmaError::PrecisionExhausted(_) | SigmaError::IntegralityFailure { .. } => 3,
        _ => 4,
    }
}

fn config(cmd: Command, o: &Opts) -> Result<JobConfig, SigmaError> {
    let p = o.p.ok_or_else(|| SigmaError::InvalidConfig("-p is required".into()))?;
    let coeffs = match (o.universal, &o.a4, &o.a6) {
        (true, None, None) => None,
        (true, _, _) => return Err(SigmaError::InvalidConfig("--universal takes no coefficients".into())),
        (false, Some(a4), Some(a6)) => Some((a4.parse::<Ratio>()?, a6.parse::<Ratio>()?)),
        _ => return Err(SigmaError::InvalidConfig("give --a4 and --a6, or --universal".into())),
    };
    if o.checks.is_some() && cmd != Command::Verify {
        return Err(SigmaError::InvalidConfig("--checks only applies to verify".into()));
    }
    let cfg = JobConfig { p, coeffs, e_target: o.prec, m: o.tdeg, qdeg: o.qdeg, checks: o.checks.clone(), iterate: o.iterate };
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cmd = match cli.cmd {
        Cmd::Sigma => Command::Sigma,
        Cmd::Zeta => Command::Zeta,
        Cmd::Beta => Command::Beta,
        Cmd::Lift => Command::Lift,
        Cmd::Verify => Command::Verify,
        Cmd::Expand => Command::Expand,
    };
    let result = config(cmd, &cli.opts).and_then(|cfg| with_retry(cfg.digits(cmd), |d| jobs::run(cmd, &cfg, d)));
    match result {
        Ok(doc) => {
            let text = if cli.opts.json { doc.to_json() } else { doc.to_text() };
            // one write keeps the output whole
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            let _ = out.flush();
            let failed = doc.checks.as_ref().is_some_and(|cs| cs.iter().any(|c| c.status == "fail"));
            ExitCode::from(if failed { 4 } else { 0 })
        }
        Err(err) => {
            eprintln!("psigma: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
