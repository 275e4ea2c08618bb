//! The catenoid family `C_a` of `H^n × R`.
//!
//! `C_a` is generated by the maximal solution `f(a, ·)` of
//! `f_tt = (n-1) coth(f) (1 + f_t²)`, `f(0) = a`, `f_t(0) = 0`, which lives on
//! `(-T(a), T(a))` and blows up at the ends. Its inverse on `[0, T(a))` is
//!
//! ```text
//! λ(a, ρ) = sinh^{n-1}(a) ∫_a^ρ (sinh^{2n-2}(u) - sinh^{2n-2}(a))^{-1/2} du,
//! ```
//!
//! so every catenoid is available both as an ODE trajectory in `t` and as a
//! quadrature in `ρ`. The two representations are cross-checked by the tests.

use serde::Serialize;

use crate::error::{ensure_dimension, ensure_finite, Error, Result};
use crate::hgeom::{curvatures_rotation, RotationProfilePoint};
use crate::ode::{Dopri5, OdeTolerance};
use crate::quad::{self, FarEndpoint, QuadratureResult, SingularIntegrand, TailPolicy, Tolerance};
use crate::roots;
use crate::special::{coth, cosh_ratio, ln_cosh, ln_sinh, one_minus_pow, sinh_ratio, sphere_area};

/// Slope beyond which ODE samples are replaced by the quadrature inverse.
pub const STEEP_SLOPE: f64 = 1e3;

/// Independent-variable tolerance of the root finders.
pub const ROOT_TOL: f64 = 1e-12;

pub(crate) fn validate(n: usize, a: f64) -> Result<()> {
    ensure_dimension(n)?;
    ensure_finite("a", a)?;
    if a <= 0.0 {
        return Err(Error::Domain(format!("neck radius must be positive, got {a}")));
    }
    Ok(())
}

/// `sinh(a) / sinh(u)` and `1 - sinh(a)/sinh(u)`, given `delta = u - a`.
fn sinh_ratio_pair(a: f64, delta: f64) -> (f64, f64) {
    let u = a + delta;
    let one_minus = 2.0 * (0.5 * delta).sinh() * (ln_cosh(a + 0.5 * delta) - ln_sinh(u)).exp();
    (sinh_ratio(a, u), one_minus)
}

/// `v_1(a, ρ) = (1 - (sinh a / sinh ρ)^{2n-2})^{1/2}`.
fn vertical_from_delta(n: usize, a: f64, delta: f64) -> f64 {
    let (r, one_minus) = sinh_ratio_pair(a, delta);
    one_minus_pow(r, one_minus, (2 * n - 2) as u32).max(0.0).sqrt()
}

/// The integrand of `λ` in the form `(sinh a / sinh u)^{n-1} (1 - (sinh a / sinh u)^{2n-2})^{-1/2}`.
fn lambda_integrand(n: usize, a: f64) -> impl Fn(f64, f64) -> f64 + Clone {
    move |_u: f64, delta: f64| {
        let (r, one_minus) = sinh_ratio_pair(a, delta);
        r.powi(n as i32 - 1) / one_minus_pow(r, one_minus, (2 * n - 2) as u32).sqrt()
    }
}

/// Integrand of the `v`-substituted forms, written in `x = ln v`:
/// `e^x (e^{(2n-2)x} - 1)^{-1/2} (sinh²(a) e^{2x} + 1)^{-power}`.
fn log_v_integrand(n: usize, a: f64, power: f64) -> impl Fn(f64, f64) -> f64 + Clone {
    let m = (2 * n - 2) as f64;
    let s2 = a.sinh().powi(2);
    move |x: f64, dx: f64| x.exp() * (m * dx).exp_m1().powf(-0.5) * (s2 * (2.0 * x).exp() + 1.0).powf(-power)
}

/// Start of the exponential envelope for the `x = ln v` integrands.
fn log_v_policy(a: f64) -> TailPolicy {
    TailPolicy::starting_at(1.0f64.max(-ln_sinh(a)) + 2.0)
}

fn decay_rate(n: usize) -> f64 {
    (n - 1) as f64
}

/// `λ(a, ρ)` from its defining integral in `u`.
pub fn lambda(n: usize, a: f64, rho: f64) -> Result<f64> {
    Ok(lambda_quad(n, a, rho)?.value)
}

pub fn lambda_quad(n: usize, a: f64, rho: f64) -> Result<QuadratureResult> {
    validate(n, a)?;
    ensure_finite("rho", rho)?;
    if rho < a {
        return Err(Error::Domain(format!("rho = {rho} lies inside the neck radius {a}")));
    }
    let spec = SingularIntegrand::inverse_sqrt(lambda_integrand(n, a), a, FarEndpoint::Finite(rho));
    quad::integrate_sqrt_singularity(&spec, Tolerance::default())
}

/// `λ(a, ρ)` from the substituted form `v = sinh(u) / sinh(a)`.
pub fn lambda_vform(n: usize, a: f64, rho: f64) -> Result<f64> {
    validate(n, a)?;
    if rho < a {
        return Err(Error::Domain(format!("rho = {rho} lies inside the neck radius {a}")));
    }
    let upper = ln_sinh(rho) - ln_sinh(a);
    let spec = SingularIntegrand::inverse_sqrt(log_v_integrand(n, a, 0.5), 0.0, FarEndpoint::Finite(upper));
    Ok(a.sinh() * quad::integrate_sqrt_singularity(&spec, Tolerance::default())?.value)
}

/// Half-height `T(a) = lim_{ρ→∞} λ(a, ρ)`.
pub fn half_height_quad(n: usize, a: f64) -> Result<QuadratureResult> {
    validate(n, a)?;
    let spec = SingularIntegrand::inverse_sqrt(lambda_integrand(n, a), a, FarEndpoint::Infinite { decay_rate: decay_rate(n) });
    quad::integrate_exponential_tail(&spec, TailPolicy::default(), Tolerance::default())
}

pub fn half_height(n: usize, a: f64) -> Result<f64> {
    Ok(half_height_quad(n, a)?.value)
}

/// Total vertical height `h_R(a) = 2 T(a)`.
pub fn height(n: usize, a: f64) -> Result<f64> {
    Ok(2.0 * half_height(n, a)?)
}

pub fn height_quad(n: usize, a: f64) -> Result<QuadratureResult> {
    Ok(half_height_quad(n, a)?.scaled(2.0))
}

/// `T(a)` from the `v`-substituted form; an independent route to [`half_height`].
pub fn half_height_vform(n: usize, a: f64) -> Result<f64> {
    validate(n, a)?;
    let spec = SingularIntegrand::inverse_sqrt(log_v_integrand(n, a, 0.5), 0.0, FarEndpoint::Infinite { decay_rate: decay_rate(n) });
    Ok(a.sinh() * quad::integrate_exponential_tail(&spec, log_v_policy(a), Tolerance::default())?.value)
}

/// `T'(a) = cosh(a) ∫_1^∞ (v^{2n-2} - 1)^{-1/2} (sinh²(a) v² + 1)^{-3/2} dv`.
///
/// The same integral is the limit `C(a)` of the coefficient `B(a, t)` as
/// `t → T(a)`.
pub fn height_derivative_quad(n: usize, a: f64) -> Result<QuadratureResult> {
    validate(n, a)?;
    let spec = SingularIntegrand::inverse_sqrt(log_v_integrand(n, a, 1.5), 0.0, FarEndpoint::Infinite { decay_rate: decay_rate(n) });
    Ok(quad::integrate_exponential_tail(&spec, log_v_policy(a), Tolerance::default())?.scaled(a.cosh()))
}

pub fn height_derivative(n: usize, a: f64) -> Result<f64> {
    Ok(height_derivative_quad(n, a)?.value)
}

/// `C(a)`; equal to [`height_derivative`].
pub fn constant_c(n: usize, a: f64) -> Result<f64> {
    height_derivative(n, a)
}

/// Geometric data of the upper half-catenoid at distance `ρ` from the axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtrinsicData {
    pub norm_a2: f64,
    pub v: f64,
    /// Area density in `dρ dμ_S`; infinite at the neck.
    pub density: f64,
}

/// Where a profile sample came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileSource {
    Ode,
    Inverse,
}

/// Profile sample with the variation `f_a = ∂f/∂a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    pub point: RotationProfilePoint,
    pub f_a: f64,
    pub source: ProfileSource,
}

/// Intersection of two catenaries in the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntersectionResult {
    pub rho_star: f64,
    pub t_star: f64,
    /// Sign changes of `λ(a, ·) - λ(b, ·)` found on `ρ > max(a, b)`.
    pub count: usize,
}

/// A catenoid `C_a` with its half-height and `C(a)` cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Catenoid {
    n: usize,
    a: f64,
    half_height: QuadratureResult,
    c_const: QuadratureResult,
}

impl Catenoid {
    pub fn new(n: usize, a: f64) -> Result<Self> {
        validate(n, a)?;
        Ok(Self { n, a, half_height: half_height_quad(n, a)?, c_const: height_derivative_quad(n, a)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn half_height(&self) -> f64 {
        self.half_height.value
    }

    pub fn half_height_result(&self) -> QuadratureResult {
        self.half_height
    }

    pub fn height(&self) -> f64 {
        2.0 * self.half_height.value
    }

    /// `C(a) = lim_{t→T(a)} B(a, t)`.
    pub fn c_const(&self) -> f64 {
        self.c_const.value
    }

    pub fn c_const_result(&self) -> QuadratureResult {
        self.c_const
    }

    pub fn lambda(&self, rho: f64) -> Result<f64> {
        lambda(self.n, self.a, rho)
    }

    fn check_rho(&self, rho: f64) -> Result<f64> {
        ensure_finite("rho", rho)?;
        if rho < self.a {
            return Err(Error::Domain(format!("rho = {rho} lies inside the neck radius {}", self.a)));
        }
        Ok(rho - self.a)
    }

    /// `λ_ρ(a, ρ)`, infinite at the neck.
    pub fn lambda_rho(&self, rho: f64) -> Result<f64> {
        let delta = self.check_rho(rho)?;
        let r = sinh_ratio(self.a, rho);
        Ok(r.powi(self.n as i32 - 1) / vertical_from_delta(self.n, self.a, delta))
    }

    /// Vertical normal component `v_1(a, ρ)` on the upper half.
    pub fn v1(&self, rho: f64) -> Result<f64> {
        let delta = self.check_rho(rho)?;
        Ok(vertical_from_delta(self.n, self.a, delta))
    }

    /// `A_1(a, ρ) = cosh(a)/cosh(ρ) (sinh(a)/sinh(ρ))^{n-2}`.
    pub fn a1(&self, rho: f64) -> Result<f64> {
        self.check_rho(rho)?;
        Ok(cosh_ratio(self.a, rho) * sinh_ratio(self.a, rho).powi(self.n as i32 - 2))
    }

    /// `B_1(a, ρ) = cosh(a) ∫_1^{sinh ρ / sinh a} (v^{2n-2}-1)^{-1/2} (sinh²(a) v² + 1)^{-3/2} dv`.
    pub fn b1(&self, rho: f64) -> Result<f64> {
        self.check_rho(rho)?;
        let upper = ln_sinh(rho) - ln_sinh(self.a);
        if upper <= 0.0 {
            return Ok(0.0);
        }
        let spec = SingularIntegrand::inverse_sqrt(log_v_integrand(self.n, self.a, 1.5), 0.0, FarEndpoint::Finite(upper));
        Ok(self.a.cosh() * quad::integrate_sqrt_singularity(&spec, Tolerance::default())?.value)
    }

    /// `e_1(a, ρ) = -A_1 + B_1 v_1`, the variation field on the upper half.
    pub fn e1(&self, rho: f64) -> Result<f64> {
        Ok(-self.a1(rho)? + self.b1(rho)? * self.v1(rho)?)
    }

    /// `W_1(a, ρ) = e_1 + C(a) v_1`.
    pub fn w_limit1(&self, rho: f64) -> Result<f64> {
        Ok(self.e1(rho)? + self.c_const() * self.v1(rho)?)
    }

    /// `f_t` at the point of the upper half where `f = ρ`.
    pub fn slope_at(&self, rho: f64) -> Result<f64> {
        let delta = self.check_rho(rho)?;
        let r = sinh_ratio(self.a, rho);
        Ok(vertical_from_delta(self.n, self.a, delta) / r.powi(self.n as i32 - 1))
    }

    /// Right-hand side of the profile ODE, `(n-1) coth(f) (1 + f_t²)`.
    pub fn profile_acceleration(&self, f: f64, f_t: f64) -> f64 {
        (self.n - 1) as f64 * coth(f) * (1.0 + f_t * f_t)
    }

    fn ode_rhs(&self) -> impl Fn(f64, &[f64; 4]) -> [f64; 4] + '_ {
        let m = (self.n - 1) as f64;
        move |_t, y| {
            let (f, p, g, q) = (y[0], y[1], y[2], y[3]);
            let c = coth(f);
            let csch2 = 1.0 / f.sinh().powi(2);
            let gp = 1.0 + p * p;
            [p, m * c * gp, q, m * (-csch2 * gp * g + 2.0 * c * p * q)]
        }
    }

    /// Profile point on the upper half reconstructed from `ρ` (quadrature side).
    pub fn point_from_rho(&self, t: f64, rho: f64) -> Result<RotationProfilePoint> {
        let f_t = self.slope_at(rho)?;
        RotationProfilePoint::new(t, rho, f_t, self.profile_acceleration(rho, f_t))
    }

    /// Samples `f(a, ·)`, its derivatives and `f_a` by integrating the Cauchy
    /// problem together with its variational equation. Points where the
    /// slope exceeds [`STEEP_SLOPE`] are taken from the quadrature inverse.
    pub fn profile_ode(&self, t_grid: &[f64]) -> Result<Vec<ProfileSample>> {
        let big_t = self.half_height();
        for &t in t_grid {
            ensure_finite("t", t)?;
            if t.abs() >= big_t {
                return Err(Error::Domain(format!("t = {t} lies beyond the blow-up time T(a) = {big_t}")));
            }
        }
        let mut order: Vec<usize> = (0..t_grid.len()).collect();
        order.sort_by(|&i, &j| t_grid[i].abs().total_cmp(&t_grid[j].abs()));

        let rhs = self.ode_rhs();
        let mut solver = Dopri5::<4>::new(OdeTolerance::default());
        let mut y = [self.a, 0.0, 1.0, 0.0];
        let mut t_now = 0.0;
        let mut steep = false;
        let mut out = vec![None; t_grid.len()];
        for &i in &order {
            let target = t_grid[i].abs();
            let sample = if !steep {
                let reached = solver.advance(&rhs, t_now, &mut y, target, |_, y| y[1] > STEEP_SLOPE)?;
                t_now = reached;
                if reached < target {
                    steep = true;
                    None
                } else {
                    let point = RotationProfilePoint::new(target, y[0], y[1], self.profile_acceleration(y[0], y[1]))?;
                    Some(ProfileSample { point, f_a: y[2], source: ProfileSource::Ode })
                }
            } else {
                None
            };
            let sample = match sample {
                Some(s) => s,
                None => self.inverse_sample(target)?,
            };
            out[i] = Some(mirror(sample, t_grid[i]));
        }
        Ok(out.into_iter().map(|s| s.expect("every grid point sampled")).collect())
    }

    fn inverse_sample(&self, t: f64) -> Result<ProfileSample> {
        let rho = self.profile_inverse(t)?;
        let point = self.point_from_rho(t, rho)?;
        let e = self.e1(rho)?;
        let f_a = -e * (1.0 + point.f_t * point.f_t).sqrt();
        Ok(ProfileSample { point, f_a, source: ProfileSource::Inverse })
    }

    /// The unique `ρ >= a` with `λ(a, ρ) = |t|`.
    pub fn profile_inverse(&self, t: f64) -> Result<f64> {
        ensure_finite("t", t)?;
        let t = t.abs();
        let big_t = self.half_height();
        if t >= big_t {
            return Err(Error::Domain(format!("|t| = {t} is not below T(a) = {big_t}")));
        }
        if t == 0.0 {
            return Ok(self.a);
        }
        // Solve in s = sqrt(ρ - a), in which λ is smooth at the neck.
        let g = |s: f64| -> Result<f64> { Ok(self.lambda(self.a + s * s)? - t) };
        let (lo, hi) = roots::expand_bracket(g, 0.0, 0.5, 30.0)?;
        let s = roots::brent(g, lo, hi, 0.5 * ROOT_TOL / hi.max(1e-6))?;
        Ok(self.a + s * s)
    }

    /// Profile point at any `|t| < T(a)` through the quadrature inverse.
    pub fn profile_point(&self, t: f64) -> Result<RotationProfilePoint> {
        let rho = self.profile_inverse(t)?;
        let mut p = self.point_from_rho(t.abs(), rho)?;
        p.t = t;
        if t < 0.0 {
            p.f_t = -p.f_t;
        }
        Ok(p)
    }

    pub fn extrinsic_data(&self, rho: f64) -> Result<ExtrinsicData> {
        let delta = self.check_rho(rho)?;
        let r = sinh_ratio(self.a, rho);
        let n = self.n as f64;
        let k = r.powi(self.n as i32 - 1) * coth(rho);
        let v = vertical_from_delta(self.n, self.a, delta);
        let density = if v == 0.0 { f64::INFINITY } else { ((self.n - 1) as f64 * ln_sinh(rho)).exp() / v };
        Ok(ExtrinsicData { norm_a2: n * (n - 1.0) * k * k, v, density })
    }

    /// `∫ |A|^n dμ` over the whole catenoid, with or without the factor
    /// `|S^{n-1}|`.
    pub fn total_extrinsic_curvature(&self, include_sphere_area: bool) -> Result<QuadratureResult> {
        let (n, a) = (self.n, self.a);
        let nf = n as f64;
        let m = (n - 1) as f64;
        let ln_sa = ln_sinh(a);
        let integrand = move |u: f64, delta: f64| {
            // |A|^n sinh^{n-1}(u) / v_1
            let ln_mag = 0.5 * nf * (nf * m).ln() + nf * m * ln_sa - m * m * ln_sinh(u) + nf * coth(u).ln();
            ln_mag.exp() / vertical_from_delta(n, a, delta)
        };
        let spec = SingularIntegrand::inverse_sqrt(integrand, a, FarEndpoint::Infinite { decay_rate: decay_rate(n) });
        let half = quad::integrate_exponential_tail(&spec, TailPolicy::default(), Tolerance::default())?;
        let factor = if include_sphere_area { 2.0 * sphere_area(n) } else { 2.0 };
        Ok(half.scaled(factor))
    }

    /// `∫_{ρ <= rho_max} |K| dμ` for the surface case, both halves, without
    /// the `2π` of the rotation.
    pub fn intrinsic_curvature_partial(&self, rho_max: f64) -> Result<QuadratureResult> {
        if self.n != 2 {
            return Err(Error::Domain(format!("intrinsic curvature integral is defined for n = 2, got {}", self.n)));
        }
        if !(rho_max > self.a) {
            return Err(Error::Domain(format!("rho_max = {rho_max} must exceed a = {}", self.a)));
        }
        let a = self.a;
        let integrand = move |u: f64, delta: f64| {
            let v = vertical_from_delta(2, a, delta);
            let k = sinh_ratio(a, u) * coth(u);
            let norm_a2 = 2.0 * k * k;
            (v * v + 0.5 * norm_a2) * u.sinh() / v
        };
        let spec = SingularIntegrand::inverse_sqrt(integrand, a, FarEndpoint::Finite(rho_max));
        Ok(quad::integrate_sqrt_singularity(&spec, Tolerance::default())?.scaled(2.0))
    }

    /// Residual of the first integral `sinh^{n-1}(f) (1 + f_t²)^{-1/2} = sinh^{n-1}(a)`.
    pub fn first_integral_residual(&self, p: &RotationProfilePoint) -> f64 {
        let m = (self.n - 1) as i32;
        p.f.sinh().powi(m) / (1.0 + p.f_t * p.f_t).sqrt() - self.a.sinh().powi(m)
    }

    /// One CSV row of the exported profile.
    pub fn profile_rows(&self, t_grid: &[f64]) -> Result<Vec<ProfileRow>> {
        let samples = self.profile_ode(t_grid)?;
        samples
            .iter()
            .map(|s| {
                let p = s.point;
                let c = curvatures_rotation(&p, self.n)?;
                let rho_inverse = self.profile_inverse(p.t)?;
                Ok(ProfileRow {
                    t: p.t,
                    rho: p.f,
                    rho_err: (p.f - rho_inverse).abs(),
                    f_t: p.f_t,
                    v: c.v,
                    norm_a2: c.norm_a2,
                    h_residual: c.mean,
                })
            })
            .collect()
    }
}

fn mirror(mut s: ProfileSample, t: f64) -> ProfileSample {
    s.point.t = t;
    if t < 0.0 {
        s.point.f_t = -s.point.f_t;
    }
    s
}

/// Exported profile row; `rho_err` is the gap between the ODE and quadrature
/// representations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow {
    pub t: f64,
    pub rho: f64,
    pub rho_err: f64,
    pub f_t: f64,
    pub v: f64,
    #[serde(rename = "normA2")]
    pub norm_a2: f64,
    #[serde(rename = "H_residual")]
    pub h_residual: f64,
}

/// Default stand-in for `ρ = ∞`.
pub fn default_rho_max(a: f64) -> f64 {
    40.0 + 5.0 * a
}

/// Positive-height intersection of the catenaries `C_a` and `C_b`.
pub fn intersect_catenaries(n: usize, a: f64, b: f64) -> Result<IntersectionResult> {
    validate(n, a)?;
    validate(n, b)?;
    if a == b {
        return Err(Error::Degenerate(format!("catenaries with equal neck radius {a} coincide")));
    }
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let gap = |rho: f64| -> Result<f64> { Ok(lambda(n, a, rho)? - lambda(n, b, rho)?) };

    // Sample ρ - b on a geometric grid to resolve the neck of C_b.
    let span = default_rho_max(b) - b;
    let samples = 240;
    let mut grid = Vec::with_capacity(samples + 1);
    grid.push(b);
    for k in 0..samples {
        grid.push(b + span * 1e-6f64.powf(1.0 - k as f64 / (samples - 1) as f64));
    }
    let values = grid.iter().map(|&r| gap(r)).collect::<Result<Vec<_>>>()?;
    let changes = roots::sign_changes(&values);
    let first = *changes
        .first()
        .ok_or_else(|| Error::Internal(format!("catenaries C_{a} and C_{b} do not intersect on the sampled range")))?;
    let rho_star = roots::brent(gap, grid[first], grid[first + 1], ROOT_TOL)?;
    Ok(IntersectionResult { rho_star, t_star: lambda(n, a, rho_star)?, count: changes.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // Reference values from 40-digit quadrature.
    const T_REF: [(usize, f64, f64); 9] = [
        (2, 0.5, 1.029353132305049255),
        (2, 1.0, 1.3644961913128757476),
        (2, 2.0, 1.5421555359535939616),
        (3, 0.5, 0.45621696686337451223),
        (3, 1.0, 0.65604134006615836952),
        (3, 2.0, 0.76720054804759717399),
        (4, 0.5, 0.28585783833900640491),
        (4, 1.0, 0.42810281302565032457),
        (4, 2.0, 0.51002884707749047529),
    ];

    #[test]
    fn half_heights_match_reference() {
        for (n, a, t) in T_REF {
            let got = half_height(n, a).unwrap();
            assert!((got - t).abs() < 1e-10, "n={n} a={a}: {got} vs {t}");
            let v = half_height_vform(n, a).unwrap();
            assert!((v - t).abs() < 1e-10, "v-form n={n} a={a}: {v} vs {t}");
        }
    }

    #[test]
    fn lambda_edge_cases() {
        assert_eq!(lambda(2, 1.0, 1.0).unwrap(), 0.0);
        assert!(lambda(2, 1.0, 0.5).is_err());
        assert!(lambda(2, -1.0, 2.0).is_err());
        assert!(lambda(1, 1.0, 2.0).is_err());
        assert!((lambda(2, 1.0, 2.0).unwrap() - 1.0386158808948348879).abs() < 1e-10);
    }

    #[test]
    fn height_below_bound() {
        for n in 2..=4 {
            let bound = PI / (n - 1) as f64;
            for a in [0.01, 0.3, 1.0, 5.0, 20.0] {
                let h = height(n, a).unwrap();
                assert!(h > 0.0 && h < bound, "n={n} a={a}: {h}");
            }
        }
    }

    #[test]
    fn c_constant_positive_and_cached() {
        let c = Catenoid::new(2, 1.0).unwrap();
        assert!((c.c_const() - 0.401736382467844782).abs() < 1e-10);
        assert_eq!(c.c_const(), height_derivative(2, 1.0).unwrap());
    }

    #[test]
    fn profile_starts_at_neck() {
        let c = Catenoid::new(3, 0.8).unwrap();
        let s = c.profile_ode(&[0.0, 0.1, -0.1]).unwrap();
        assert_eq!(s[0].point.f, 0.8);
        assert_eq!(s[0].point.f_t, 0.0);
        assert_eq!(s[0].f_a, 1.0);
        assert_eq!(s[1].point.f, s[2].point.f);
        assert_eq!(s[1].point.f_t, -s[2].point.f_t);
        assert!(c.profile_ode(&[c.half_height()]).is_err());
    }

    #[test]
    fn inverse_edge_cases() {
        let c = Catenoid::new(2, 1.0).unwrap();
        assert_eq!(c.profile_inverse(0.0).unwrap(), 1.0);
        assert!(c.profile_inverse(c.half_height()).is_err());
        let r = c.profile_inverse(-0.5).unwrap();
        assert!((c.lambda(r).unwrap() - 0.5).abs() < 1e-11);
    }

    #[test]
    fn steep_points_fall_back_to_quadrature() {
        let c = Catenoid::new(2, 1.0).unwrap();
        let t = c.half_height() * (1.0 - 1e-6);
        let s = c.profile_ode(&[0.5, t]).unwrap();
        assert_eq!(s[0].source, ProfileSource::Ode);
        assert_eq!(s[1].source, ProfileSource::Inverse);
        assert!(s[1].point.f_t > STEEP_SLOPE);
    }

    #[test]
    fn extrinsic_limits() {
        let c = Catenoid::new(3, 0.7).unwrap();
        let neck = c.extrinsic_data(0.7).unwrap();
        assert_eq!(neck.v, 0.0);
        assert!((neck.norm_a2 - 6.0 * coth(0.7).powi(2)).abs() < 1e-12);
        assert!(neck.density.is_infinite());
        let far = c.extrinsic_data(40.0).unwrap();
        assert!((far.v - 1.0).abs() < 1e-15);
        assert!(c.extrinsic_data(0.5).is_err());
    }

    #[test]
    fn intersection_is_symmetric_in_arguments() {
        let p = intersect_catenaries(2, 0.5, 1.0).unwrap();
        let q = intersect_catenaries(2, 1.0, 0.5).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.count, 1);
        assert!(p.rho_star > 1.0);
        assert!(matches!(intersect_catenaries(2, 1.0, 1.0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn intrinsic_partial_requires_surface() {
        assert!(Catenoid::new(3, 1.0).unwrap().intrinsic_curvature_partial(10.0).is_err());
        assert!(Catenoid::new(2, 1.0).unwrap().intrinsic_curvature_partial(0.5).is_err());
    }
}
