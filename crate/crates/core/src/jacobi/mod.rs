//! Jacobi fields of the catenoid `C_a` and the thresholds they determine.
//!
//! The vertical translations give the odd field `v(a, t)`, the variation of
//! the neck radius the even field `e(a, t)`. On the upper half both are
//! explicit in `ρ = f(a, t)`:
//!
//! ```text
//! v = v_1(ρ),   e = -A_1(ρ) + B_1(ρ) v_1(ρ),
//! ```
//!
//! so every zero is located first on a sampled `t`-grid from the ODE and then
//! refined in `ρ` with the closed forms.

pub mod certify;
pub mod operator;
pub mod tridiag;

use serde::Serialize;

use crate::catenoid::{default_rho_max, Catenoid, ProfileSample, ProfileSource, ROOT_TOL};
use crate::error::{Error, Result};
use crate::roots;
use crate::special::ln_sinh;

pub use certify::{certify_index, IndexReport, ModeEntry};
pub use operator::{assemble_mode_operator, eigen_bottom, jacobi_residual, ModeDomain, ModeOperator, SpectralResult};

/// Resolution of the sampling used to check uniqueness of zeros.
pub const SCAN_SAMPLES: usize = 10_000;

/// `W(a, α)` at or below this value counts as non-positive.
pub const BETA_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiFieldSample {
    pub t: f64,
    pub v: f64,
    pub e: f64,
    /// `A(a, |t|)`.
    #[serde(rename = "A")]
    pub a_coef: f64,
    /// `B(a, |t|)`.
    #[serde(rename = "B")]
    pub b_coef: f64,
    pub h_gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityThresholds {
    pub sigma: f64,
    pub tau: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub rho_sigma: f64,
    pub rho_tau: f64,
}

/// Point where `C_a` touches the envelope of the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopePoint {
    pub a: f64,
    pub sigma: f64,
    pub rho: f64,
    /// `tanh(ρ/2)`, the horizontal coordinate in the ball model.
    pub x: f64,
}

fn vertical(s: &ProfileSample) -> f64 {
    let p = s.point.f_t;
    p / (1.0 + p * p).sqrt()
}

fn variation(s: &ProfileSample) -> f64 {
    -s.f_a / (1.0 + s.point.f_t * s.point.f_t).sqrt()
}

fn horizontal_radial(c: &Catenoid, f: f64) -> f64 {
    ((c.n() - 1) as f64 * (ln_sinh(c.a()) - ln_sinh(f))).exp()
}

fn single(c: &Catenoid, t: f64) -> Result<ProfileSample> {
    Ok(c.profile_ode(&[t])?[0])
}

/// `v(a, t) = f_t (1 + f_t²)^{-1/2}`.
pub fn field_v(c: &Catenoid, t: f64) -> Result<f64> {
    Ok(vertical(&single(c, t)?))
}

/// `e(a, t) = -f_a (1 + f_t²)^{-1/2}`.
pub fn field_e(c: &Catenoid, t: f64) -> Result<f64> {
    Ok(variation(&single(c, t)?))
}

/// `(A(a, t), B(a, t))` for `0 <= t < T(a)`.
pub fn coefficients_ab(c: &Catenoid, t: f64) -> Result<(f64, f64)> {
    if t < 0.0 {
        return Err(Error::Domain(format!("A and B are defined for t >= 0, got {t}")));
    }
    let rho = c.profile_inverse(t)?;
    Ok((c.a1(rho)?, c.b1(rho)?))
}

/// `w(a, α, t) = e(a, α) v(a, t) + v(a, α) e(a, t)`.
pub fn field_w(c: &Catenoid, alpha: f64, t: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
    }
    let s = c.profile_ode(&[alpha, t])?;
    Ok(variation(&s[0]) * vertical(&s[1]) + vertical(&s[0]) * variation(&s[1]))
}

/// Radial factor `(sinh a / sinh f(a, t))^{n-1}` of the horizontal field.
pub fn field_h_gamma(c: &Catenoid, t: f64) -> Result<f64> {
    Ok(horizontal_radial(c, single(c, t)?.point.f))
}

/// Every field at each point of `t_grid`.
pub fn sample_fields(c: &Catenoid, t_grid: &[f64]) -> Result<Vec<JacobiFieldSample>> {
    c.profile_ode(t_grid)?
        .iter()
        .map(|s| {
            let rho = s.point.f;
            Ok(JacobiFieldSample {
                t: s.point.t,
                v: vertical(s),
                e: variation(s),
                a_coef: c.a1(rho)?,
                b_coef: c.b1(rho)?,
                h_gamma: horizontal_radial(c, rho),
            })
        })
        .collect()
}

/// The fields sampled at `t_j = j T(a) / SCAN_SAMPLES` on the upper half.
#[derive(Debug, Clone)]
pub struct FieldScan {
    pub t: Vec<f64>,
    pub rho: Vec<f64>,
    pub v: Vec<f64>,
    pub e: Vec<f64>,
}

impl FieldScan {
    pub fn new(c: &Catenoid, samples: usize) -> Result<Self> {
        let big_t = c.half_height();
        let grid: Vec<f64> = (0..samples).map(|j| big_t * j as f64 / samples as f64).collect();
        let s = c.profile_ode(&grid)?;
        Ok(Self {
            t: grid,
            rho: s.iter().map(|s| s.point.f).collect(),
            v: s.iter().map(vertical).collect(),
            e: s.iter().map(variation).collect(),
        })
    }
}

/// Locates the sign change of `values` (with `limit` appended as the value at
/// `T(a)`) and refines it in `ρ` with `g`. Returns the zero and the number of
/// sign changes seen.
fn refine_zero<G>(c: &Catenoid, scan: &FieldScan, values: &[f64], limit: f64, rho_cap: f64, g: G) -> Result<(f64, usize)>
where
    G: FnMut(f64) -> Result<f64>,
{
    let mut all = values.to_vec();
    all.push(limit);
    let changes = roots::sign_changes(&all);
    let i = *changes.first().ok_or_else(|| Error::Internal("no sign change found on the sampled profile".into()))?;
    let lo = scan.rho[i];
    let hi = scan.rho.get(i + 1).copied().unwrap_or(default_rho_max(c.a())).min(rho_cap);
    Ok((roots::brent(g, lo, hi, ROOT_TOL)?, changes.len()))
}

/// Jacobi-field analysis of one catenoid with the shared scan cached.
#[derive(Debug, Clone)]
pub struct JacobiAnalysis {
    pub catenoid: Catenoid,
    pub scan: FieldScan,
    pub thresholds: StabilityThresholds,
}

impl JacobiAnalysis {
    pub fn new(c: &Catenoid) -> Result<Self> {
        let scan = FieldScan::new(c, SCAN_SAMPLES)?;
        let cc = c.c_const();
        if !(cc > 0.0) {
            return Err(Error::Internal(format!("C(a) = {cc} is not positive")));
        }

        let (rho_sigma, count) = refine_zero(c, &scan, &scan.e, cc, f64::INFINITY, |r| c.e1(r))?;
        if count != 1 {
            return Err(Error::Internal(format!("e(a, .) changes sign {count} times on (0, T(a))")));
        }
        let sigma = c.lambda(rho_sigma)?;

        let below = scan.t.iter().take_while(|&&t| t < sigma).count();
        let w: Vec<f64> = (0..below).map(|j| scan.e[j] + cc * scan.v[j]).collect();
        let w_sigma = cc * c.v1(rho_sigma)?;
        let (rho_tau, count) = refine_zero(c, &scan, &w, w_sigma, rho_sigma, |r| c.w_limit1(r))?;
        if count != 1 {
            return Err(Error::Internal(format!("W(a, .) changes sign {count} times on (0, sigma)")));
        }
        let tau = c.lambda(rho_tau)?;
        if !(0.0 < tau && tau < sigma && sigma < c.half_height()) {
            return Err(Error::Internal(format!("thresholds out of order: tau = {tau}, sigma = {sigma}")));
        }
        let thresholds = StabilityThresholds { sigma, tau, c: cc, rho_sigma, rho_tau };
        Ok(Self { catenoid: *c, scan, thresholds })
    }

    /// `W(a, α) = e(a, α) + C(a) v(a, α)` for `α > 0`.
    pub fn w_limit(&self, alpha: f64) -> Result<f64> {
        let rho = self.catenoid.profile_inverse(alpha)?;
        self.catenoid.w_limit1(rho)
    }

    /// The positive zero `β(α)` of `w(a, α, ·)`, or `None` when `W(a, α) <= 0`.
    pub fn beta(&self, alpha: f64) -> Result<Option<f64>> {
        let c = &self.catenoid;
        if !(alpha > 0.0 && alpha < c.half_height()) {
            return Err(Error::Domain(format!("alpha = {alpha} is not in (0, T(a))")));
        }
        let rho_alpha = c.profile_inverse(alpha)?;
        let (e_alpha, v_alpha) = (c.e1(rho_alpha)?, c.v1(rho_alpha)?);
        let w_lim = e_alpha + c.c_const() * v_alpha;
        let scan = &self.scan;
        let w: Vec<f64> = (1..scan.t.len()).map(|j| e_alpha * scan.v[j] + v_alpha * scan.e[j]).collect();
        let changes = roots::sign_changes(&[&w[..], &[w_lim]].concat()).len();
        if w_lim <= BETA_TOL {
            if changes > 0 && w_lim < -BETA_TOL {
                return Err(Error::Internal(format!("w(a, {alpha}, .) vanishes although W = {w_lim} <= 0")));
            }
            return Ok(None);
        }
        if changes != 1 {
            return Err(Error::Internal(format!("w(a, {alpha}, .) changes sign {changes} times although W = {w_lim} > 0")));
        }
        let sub = FieldScan { t: scan.t[1..].to_vec(), rho: scan.rho[1..].to_vec(), v: vec![], e: vec![] };
        let (rho_beta, _) = refine_zero(c, &sub, &w, w_lim, f64::INFINITY, |r| Ok(e_alpha * c.v1(r)? + v_alpha * c.e1(r)?))?;
        Ok(Some(c.lambda(rho_beta)?))
    }

    /// `σ(a)` from the envelope condition. With `x = tanh(f/2)`, `y = t` the
    /// determinant `x_a y_t - x_t y_a` reduces to a positive multiple of
    /// `f_a`, whose zero is found on the variational ODE alone.
    pub fn envelope(&self) -> Result<EnvelopePoint> {
        let c = &self.catenoid;
        let scan = &self.scan;
        let i = roots::sign_changes(&scan.e)
            .first()
            .copied()
            .ok_or_else(|| Error::Internal("f_a keeps its sign on the sampled profile".into()))?;
        let f_a = |t: f64| -> Result<f64> {
            let s = single(c, t)?;
            if s.source != ProfileSource::Ode {
                return Err(Error::Internal(format!("envelope point t = {t} lies in the steep region")));
            }
            Ok(s.f_a)
        };
        let sigma = roots::brent(f_a, scan.t[i], scan.t[i + 1], ROOT_TOL)?;
        let rho = single(c, sigma)?.point.f;
        Ok(EnvelopePoint { a: c.a(), sigma, rho, x: (0.5 * rho).tanh() })
    }
}

pub fn threshold_sigma(c: &Catenoid) -> Result<f64> {
    Ok(JacobiAnalysis::new(c)?.thresholds.sigma)
}

pub fn threshold_tau(c: &Catenoid) -> Result<f64> {
    Ok(JacobiAnalysis::new(c)?.thresholds.tau)
}

pub fn threshold_beta(c: &Catenoid, alpha: f64) -> Result<Option<f64>> {
    JacobiAnalysis::new(c)?.beta(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neck_values() {
        let c = Catenoid::new(2, 1.0).unwrap();
        assert_eq!(field_v(&c, 0.0).unwrap(), 0.0);
        assert_eq!(field_e(&c, 0.0).unwrap(), -1.0);
        assert_eq!(coefficients_ab(&c, 0.0).unwrap(), (1.0, 0.0));
        assert_eq!(field_h_gamma(&c, 0.0).unwrap(), 1.0);
        assert!(coefficients_ab(&c, -0.1).is_err());
        assert!(field_v(&c, c.half_height()).is_err());
    }

    #[test]
    fn w_vanishes_at_minus_alpha() {
        let c = Catenoid::new(3, 1.0).unwrap();
        let alpha = 0.3;
        assert_eq!(field_w(&c, alpha, -alpha).unwrap(), 0.0);
        assert_eq!(field_w(&c, alpha, 0.0).unwrap(), -field_v(&c, alpha).unwrap());
    }

    #[test]
    fn thresholds_match_reference() {
        // 40-digit quadrature with mpmath.
        let c = Catenoid::new(2, 1.0).unwrap();
        let j = JacobiAnalysis::new(&c).unwrap();
        assert!((j.thresholds.sigma - 1.0676904998176053).abs() < 1e-9);
        assert!((j.thresholds.tau - 0.817647209591991513).abs() < 1e-9);
        assert!((j.thresholds.rho_sigma - 2.0893172927867536).abs() < 1e-9);
    }

    #[test]
    fn beta_none_below_tau() {
        let c = Catenoid::new(2, 1.0).unwrap();
        let j = JacobiAnalysis::new(&c).unwrap();
        let tau = j.thresholds.tau;
        assert_eq!(j.beta(tau).unwrap(), None);
        assert_eq!(j.beta(0.5 * tau).unwrap(), None);
        let alpha = 0.5 * (tau + c.half_height());
        let beta = j.beta(alpha).unwrap().unwrap();
        assert!(beta > tau && beta < c.half_height());
        assert!(field_w(&c, alpha, beta).unwrap().abs() < 1e-8);
        assert!(j.beta(0.0).is_err());
    }
}
