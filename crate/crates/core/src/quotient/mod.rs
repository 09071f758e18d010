//! The canonical subgroup and the quotient by it: the factorization
//! `psi_p = phi * xi`, the quotient models, the parameter `t'(t)` on the
//! quotient, the unit `u(t)`, and the Frobenius lift on coefficients.

use crate::curve::divpoly::psi_p;
use crate::curve::{hasse_lift, Curve, CurveExpansions};
use crate::error::{Result, SigmaError};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::TruncSeries;

/// `psi_p = phi * xi` with `phi` of degree `(p-1)/2` and leading coefficient `p`,
/// `xi` monic of degree `p(p-1)/2`.
#[derive(Clone, Debug)]
pub struct KernelFactorization<S: Scalar> {
    pub psi: Poly<S>,
    pub phi: Poly<S>,
    pub xi: Poly<S>,
    pub iterations: usize,
}

impl<S: Scalar> KernelFactorization<S> {
    /// `l~_i`, the coefficients of `phi`.
    pub fn ell_tilde(&self, i: usize) -> S {
        self.phi.coeff(i)
    }

    /// Lowest absolute precision of `phi * xi - psi` coefficients that are not zero, or the
    /// precision at which the reconstruction is known when it vanishes.
    pub fn reconstruction_residual(&self) -> Poly<S> {
        self.phi.mul(&self.xi).sub(&self.psi)
    }
}

/// Quadratic Hensel lifting of the mod-p factorization `psi_p ≡ H * (psi_p / H)`.
pub fn hensel_split<S: Scalar>(curve: &Curve<S>) -> Result<KernelFactorization<S>> {
    curve.require_ordinary()?;
    let ctx = curve.ctx();
    let p = curve.p() as usize;
    let psi = psi_p(curve);
    let dd = p * (p - 1) / 2;
    let lead_low = psi.coeff(dd);
    let lead_inv = lead_low
        .inv()
        .map_err(|_| SigmaError::NotAUnit(format!("l_{dd} is not a unit: the curve is not ordinary")))?;
    let mut xi = Poly::new(&ctx, (0..=dd).map(|i| psi.coeff(i).mul(&lead_inv)).collect());
    xi = Poly::new(&ctx, xi.coeffs()[..dd].iter().cloned().chain(std::iter::once(S::one(&ctx))).collect());
    let (mut phi, _) = psi.divrem_monic(&xi)?;
    let mut s = Poly::constant(&ctx, lead_inv);
    let two = Poly::constant(&ctx, S::from_int(&ctx, 2));
    let mut iterations = 0;
    for _ in 0..64 {
        let (_, r) = psi.divrem_monic(&xi)?;
        if r.coeffs().iter().all(|c| c.is_zero()) {
            break;
        }
        iterations += 1;
        let (_, delta) = s.mul(&r).divrem_monic(&xi)?;
        xi = xi.add(&delta);
        phi = psi.divrem_monic(&xi)?.0;
        s = s.mul(&two.sub(&s.mul(&phi))).divrem_monic(&xi)?.1;
    }
    Ok(KernelFactorization { psi, phi, xi, iterations })
}

/// Quotient models and the series attached to the isogeny with kernel the canonical subgroup.
#[derive(Clone, Debug)]
pub struct QuotientData<S: Scalar> {
    /// `T'(x) = 2 * (sum of the roots of phi)`.
    pub t_prime_x: S,
    /// `x_p = S(x) / phi(x)^2`.
    pub s_poly: Poly<S>,
    /// `y_p = y M(x) / phi(x)^3`.
    pub m_poly: Poly<S>,
    pub a4_p: S,
    pub a6_p: S,
    pub a4_ph: S,
    pub a6_ph: S,
    /// `H` of the model `(a4_ph, a6_ph)`.
    pub h_prime: S,
    /// `t^(p-1) phi(x(t))`.
    pub phi_hat: TruncSeries<S>,
    pub u: TruncSeries<S>,
    /// `t' = t_(p/H)`, the parameter of the quotient model `(a4_ph, a6_ph)`.
    pub t_prime: TruncSeries<S>,
}

pub fn quotient_models<S: Scalar>(
    curve: &Curve<S>,
    kf: &KernelFactorization<S>,
    exp: &CurveExpansions<S>,
) -> Result<QuotientData<S>> {
    let ctx = curve.ctx();
    let p = curve.p();
    let pi = p as i64;
    let d = ((p - 1) / 2) as usize;
    let phi = &kf.phi;
    let f = curve.f_poly();
    let (phi1, phi2, f1) = (phi.deriv(), phi.deriv().deriv(), f.deriv());
    let t_prime_x = kf.ell_tilde(d - 1).mul_int(-2).mul_p_pow(-1);
    let x = Poly::x(&ctx);
    let phi_sq = phi.square();
    let nx1 = x
        .mul(&phi_sq)
        .scale(&S::from_int(&ctx, pi))
        .sub(&f1.mul(&phi1).mul(phi).scale(&S::from_int(&ctx, 2)))
        .add(&f.mul(&phi1.square().sub(&phi2.mul(phi))).scale(&S::from_int(&ctx, 4)))
        .sub(&phi_sq.scale(&t_prime_x));
    let s_poly = nx1.map(|c| c.mul_p_pow(-2));
    let m_poly = s_poly.deriv().mul(phi).sub(&s_poly.mul(&phi1).scale(&S::from_int(&ctx, 2))).map(|c| c.mul_p_pow(-1));
    // f M^2 - S^3 = (A4p S + A6p phi^2) phi^4
    let lhs = f.mul(&m_poly.square()).sub(&s_poly.square().mul(&s_poly));
    let phi4 = phi_sq.square();
    let g = lhs.series_div(&phi4, p as usize + 1)?;
    let a4_p = g[p as usize].clone();
    let l0 = phi.coeff(0);
    let a6_p = g[0].sub(&a4_p.mul(&s_poly.coeff(0))).mul(&l0.mul(&l0).inv()?);
    let rebuilt = s_poly.scale(&a4_p).add(&phi_sq.scale(&a6_p)).mul(&phi4);
    if let Some(k) = rebuilt.sub(&lhs).coeffs().iter().position(|c| !c.is_zero()) {
        return Err(SigmaError::ConsistencyFailure(format!("quotient model equation fails at x^{k}")));
    }
    let h = &curve.h;
    let a4_ph = a4_p.mul(&h.pow(4));
    let a6_ph = a6_p.mul(&h.pow(6));
    let h_prime = hasse_lift(&a4_ph, &a6_ph);
    let xh = &exp.x_hat;
    let s_hat = s_poly.homogenized(p as usize, xh);
    let m_hat = m_poly.homogenized((3 * p as usize - 3) / 2, xh);
    let phi_hat = phi.homogenized(d, xh);
    let u = s_hat.mul(&xh.mul(&m_hat).reciprocal()?);
    let t_prime = u.mul(&phi_hat).shift(1).scale(&h.inv()?);
    Ok(QuotientData { t_prime_x, s_poly, m_poly, a4_p, a6_p, a4_ph, a6_ph, h_prime, phi_hat, u, t_prime })
}

impl<S: Scalar> QuotientData<S> {
    /// The image curve `(a4_ph, a6_ph)`: the Frobenius lift applied to the coefficients.
    pub fn image_curve(&self) -> Curve<S> {
        Curve::new(self.a4_ph.clone(), self.a6_ph.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PadicCtx, PadicScalar};

    fn curve(p: u64, a4: i64, a6: i64) -> Curve<PadicScalar> {
        let c = PadicCtx::new(p, 12);
        Curve::new(PadicScalar::from_int(&c, a4), PadicScalar::from_int(&c, a6))
    }

    #[test]
    fn factorization_contract() {
        for (p, a4, a6) in [(5, 1, 1), (7, 2, 3), (11, 1, 2)] {
            let cv = curve(p, a4, a6);
            let kf = hensel_split(&cv).unwrap();
            assert!(kf.reconstruction_residual().coeffs().iter().all(|c| c.is_zero() && c.abs_prec() >= 8));
            assert!(kf.phi.lead().congruent(&PadicScalar::from_int(&cv.ctx(), p as i64), 8));
            assert!(kf.xi.lead().congruent(&PadicScalar::from_int(&cv.ctx(), 1), 8));
            assert!(kf.phi.coeff(0).congruent(&cv.h, 1));
            for i in 1..kf.phi.coeffs().len() {
                assert!(kf.phi.coeff(i).valuation() >= 1);
            }
            let d = ((p - 1) / 2) as usize;
            assert!(kf.ell_tilde(d - 1).valuation() >= 2);
        }
    }

    #[test]
    fn quotient_reduces_to_frobenius() {
        let cv = curve(5, 1, 1);
        let kf = hensel_split(&cv).unwrap();
        let exp = cv.expansions(30).unwrap();
        let qd = quotient_models(&cv, &kf, &exp).unwrap();
        let one = PadicScalar::from_int(&cv.ctx(), 1);
        assert!(qd.a4_ph.congruent(&one, 1));
        assert!(qd.a6_ph.congruent(&one, 1));
        assert!(qd.u.coeff(0).congruent(&one, 8));
        let lead = PadicScalar::from_int(&cv.ctx(), 5).mul(&cv.h.inv().unwrap());
        assert!(qd.t_prime.coeff(1).congruent(&lead, 8));
    }
}
