use crate::curve::CurveExpansions;
use crate::error::{Result, SigmaError};
use crate::scalar::Scalar;
use crate::series::{Parity, TruncSeries};

/// The odd function `z_n` with a single pole of order `p^n` at the origin, and its
/// constants `H_n`, `J_n`, `beta_n = J_n / H_n`.
#[derive(Clone, Debug)]
pub struct ZnData<S: Scalar> {
    pub level: u32,
    pub z: TruncSeries<S>,
    pub h_n: S,
    pub j_n: S,
    pub beta_n: S,
}

/// Builds `z_n` modulo `t^tail` by eliminating poles against `y x^k = -t^(-3-2k) xhat^(k+1)`.
pub fn construct_zn<S: Scalar>(exp: &CurveExpansions<S>, level: u32, tail: i64) -> Result<ZnData<S>> {
    let p = exp.a4.prime();
    let pn = (p as i64).pow(level);
    let top = ((pn - 3) / 2) as usize;
    let need = pn + tail;
    if exp.x_hat.prec() < need {
        return Err(SigmaError::InvalidConfig(format!("z_{level} needs t-expansions to degree {need}")));
    }
    let xh = exp.x_hat.truncate(need);
    // basis[k] = y x^k, known modulo t^(tail)
    let mut basis: Vec<TruncSeries<S>> = Vec::with_capacity(top + 1);
    let mut pw = xh.clone();
    for k in 0..=top {
        if k > 0 {
            pw = pw.mul(&xh).truncate(need);
        }
        let shift = -3 - 2 * k as i64;
        basis.push(pw.truncate(tail - shift).shift(shift).neg());
    }
    let mut z = basis[top].neg();
    for k in (0..top).rev() {
        let m = 3 + 2 * k as i64;
        let a = z.coeff(-m);
        if !a.is_exact_zero() {
            z = z.add(&basis[k].scale(&a));
        }
    }
    let z = z.with_parity(Parity::Odd)?;
    let h_n = z.coeff(-1).neg();
    let j_n = z.coeff(1).neg();
    let beta_n = j_n.mul(&h_n.inv().map_err(|_| SigmaError::NotAUnit(format!("H_{level} is not a unit")))?);
    Ok(ZnData { level, z, h_n, j_n, beta_n })
}

/// `zeta_n = H_n^{-1} (t^(-p^n) - z_n)`.
pub fn zeta_n<S: Scalar>(zd: &ZnData<S>) -> Result<TruncSeries<S>> {
    let ctx = zd.z.ctx().clone();
    let pn = (zd.h_n.prime() as i64).pow(zd.level);
    let lead = TruncSeries::monomial(&ctx, S::one(&ctx), -pn, zd.z.prec());
    Ok(lead.sub(&zd.z).scale(&zd.h_n.inv()?))
}
