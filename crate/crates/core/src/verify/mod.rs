//! Pass/fail checks of the identities satisfied by sigma, zeta, beta and the
//! canonical quotient, each with the modulus `p^e` and the degree at which it was verified.

pub mod analytic;
pub mod quotient;
pub mod suite;
pub mod universal;

use std::fmt;

pub use analytic::*;
pub use quotient::check_quotient;
pub use suite::{run_suite, universal_run, SuiteConfig, SuiteOutcome, ALL_CHECKS};
pub use universal::{check_commutation, check_hasse_lifts, check_q_expansions, check_weights, e2_star, eisenstein, hasse_facts, q_image, HasseFacts};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub id: String,
    pub status: Status,
    /// The identity holds modulo `p^modulus` ...
    pub modulus: i64,
    /// ... and modulo `var^degree` (`var` is `t`, `q`, or `deg` for total degree).
    pub degree: i64,
    pub var: &'static str,
    /// First failing coefficient.
    pub witness: Option<String>,
    pub detail: String,
}

impl CheckReport {
    pub fn new(id: &str, e: i64, degree: i64, var: &'static str) -> Self {
        CheckReport {
            id: id.to_string(),
            status: Status::Pass,
            modulus: e,
            degree,
            var,
            witness: None,
            detail: String::new(),
        }
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    pub fn fail(mut self, witness: impl Into<String>) -> Self {
        self.status = Status::Fail;
        self.witness = Some(witness.into());
        self
    }

    /// Fail with `witness` when it is present.
    pub fn fail_if(self, witness: Option<String>) -> Self {
        match witness {
            Some(w) => self.fail(w),
            None => self,
        }
    }

    pub fn skipped(id: &str, why: &str) -> Self {
        let mut r = CheckReport::new(id, 0, 0, "t");
        r.status = Status::Skipped;
        r.detail = why.to_string();
        r
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// A check that could not be run at all is a failure, with the error as witness.
    pub fn from_error(id: &str, err: &crate::SigmaError) -> Self {
        CheckReport::new(id, 0, 0, "t").fail(err.to_string())
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<12} {:<7} mod (p^{}, {}^{})", self.id, self.status, self.modulus, self.var, self.degree)?;
        if let Some(w) = &self.witness {
            write!(f, "  witness: {w}")?;
        }
        if !self.detail.is_empty() {
            write!(f, "  [{}]", self.detail)?;
        }
        Ok(())
    }
}
