//! Minimal hypersurfaces `M_d` invariant under the hyperbolic translations
//! along a geodesic, generated by `t = μ(ρ)` where `ρ` is the signed distance
//! to a totally geodesic hyperplane and
//!
//! ```text
//! μ̇ (1 + μ̇²)^{-1/2} cosh^{n-1}(ρ) = d.
//! ```
//!
//! `d > 1` gives a vertical bigraph over `ρ >= a` with `cosh^{n-1}(a) = d`,
//! `d = 1` a graph over `ρ > 0` and `d < 1` an entire graph.

use serde::Serialize;

use crate::error::{ensure_dimension, ensure_finite, Error, Result};
use crate::hgeom::{curvatures_translation, TranslationProfilePoint};
use crate::quad::{self, FarEndpoint, QuadratureResult, SingularIntegrand, TailPolicy, Tolerance};
use crate::special::{cosh_pow_minus_one, cosh_ratio, ln_cosh, ln_sinh, one_minus_pow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `d < 1`.
    GraphEntire,
    /// `d = 1`.
    GraphHalf,
    /// `d > 1`.
    Bigraph,
}

impl Regime {
    pub fn of(d: f64) -> Self {
        if d < 1.0 {
            Self::GraphEntire
        } else if d == 1.0 {
            Self::GraphHalf
        } else {
            Self::Bigraph
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::GraphEntire => "graph_entire",
            Self::GraphHalf => "graph_half",
            Self::Bigraph => "bigraph",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeightResult {
    /// Total vertical extent; `+∞` when `finite` is false.
    pub value: f64,
    pub finite: bool,
    /// `value - π/(n-1)` for bigraphs.
    pub excess: Option<f64>,
    pub error_estimate: f64,
    pub tail_bound: f64,
    pub regime: Regime,
}

/// Default lower limit `b` of the `d = 1` profile.
pub const DEFAULT_BASE_POINT: f64 = 1.0;

fn m_of(n: usize) -> i32 {
    n as i32 - 1
}

/// `μ̇` on the bigraph in terms of `delta = ρ - a`.
fn bigraph_slope(n: usize, a: f64, delta: f64) -> f64 {
    let rho = a + delta;
    let r = cosh_ratio(a, rho);
    let one_minus = 2.0 * (0.5 * delta).sinh() * (ln_sinh(a + 0.5 * delta) - ln_cosh(rho)).exp();
    r.powi(m_of(n)) / one_minus_pow(r, one_minus, 2 * (n as u32 - 1)).sqrt()
}

/// `μ̇ = d (cosh^{2n-2}(ρ) - d²)^{-1/2}` for `d <= 1`.
fn graph_slope(n: usize, d: f64, rho: f64) -> f64 {
    let m2 = 2 * (n as u32 - 1);
    if rho.abs() > 20.0 {
        let q = (d.ln() - m_of(n) as f64 * ln_cosh(rho)).exp();
        q / (1.0 - q * q).sqrt()
    } else {
        d / (cosh_pow_minus_one(rho, m2) + (1.0 - d) * (1.0 + d)).sqrt()
    }
}

fn validate_neck(n: usize, a: f64) -> Result<()> {
    ensure_dimension(n)?;
    ensure_finite("a", a)?;
    if a <= 0.0 {
        return Err(Error::Domain(format!("a must be positive, got {a}")));
    }
    Ok(())
}

/// `μ_+(a, ρ) = ∫_a^ρ d (cosh^{2n-2} u - d²)^{-1/2} du`, `d = cosh^{n-1}(a)`.
pub fn mu_plus_quad(n: usize, a: f64, rho: f64) -> Result<QuadratureResult> {
    validate_neck(n, a)?;
    ensure_finite("rho", rho)?;
    if rho < a {
        return Err(Error::Domain(format!("rho = {rho} is below a = {a}")));
    }
    let spec = SingularIntegrand::inverse_sqrt(move |_u: f64, delta: f64| bigraph_slope(n, a, delta), a, FarEndpoint::Finite(rho));
    quad::integrate_sqrt_singularity(&spec, Tolerance::default())
}

pub fn mu_plus(n: usize, a: f64, rho: f64) -> Result<f64> {
    Ok(mu_plus_quad(n, a, rho)?.value)
}

/// `μ_+` after `cosh u = cosh(a) τ`, integrated in `x = ln τ`, with the
/// prefactor `cosh(a)` absorbed.
fn t_form_integrand(n: usize, a: f64) -> impl Fn(f64, f64) -> f64 + Clone {
    let m2 = 2.0 * (n - 1) as f64;
    let th2 = a.tanh().powi(2);
    move |x: f64, _dx: f64| x.exp() * (m2 * x).exp_m1().powf(-0.5) * (th2 + (2.0 * x).exp_m1()).powf(-0.5)
}

/// `μ_+(a, ρ) = cosh(a) ∫_1^{cosh ρ / cosh a} (τ^{2n-2} - 1)^{-1/2} (cosh²(a) τ² - 1)^{-1/2} dτ`.
pub fn mu_plus_tform(n: usize, a: f64, rho: f64) -> Result<f64> {
    validate_neck(n, a)?;
    if rho < a {
        return Err(Error::Domain(format!("rho = {rho} is below a = {a}")));
    }
    let upper = ln_cosh(rho) - ln_cosh(a);
    let spec = SingularIntegrand::inverse_sqrt(t_form_integrand(n, a), 0.0, FarEndpoint::Finite(upper));
    Ok(quad::integrate_sqrt_singularity(&spec, Tolerance::default())?.value)
}

/// `h_T` from the substituted form; an independent route to [`height_h_t`].
pub fn height_h_t_tform(n: usize, a: f64) -> Result<f64> {
    validate_neck(n, a)?;
    let spec = SingularIntegrand::inverse_sqrt(t_form_integrand(n, a), 0.0, FarEndpoint::Infinite { decay_rate: (n - 1) as f64 });
    let policy = TailPolicy::starting_at(1.0f64.max(-ln_sinh(a)) + 2.0);
    Ok(2.0 * quad::integrate_exponential_tail(&spec, policy, Tolerance::default())?.value)
}

/// `h_T - π/(n-1)`, integrated as a manifestly positive quantity so that the
/// gap stays resolved when `d` is large.
pub fn height_excess(n: usize, a: f64) -> Result<QuadratureResult> {
    validate_neck(n, a)?;
    let m2 = 2.0 * (n - 1) as f64;
    let th2 = a.tanh().powi(2);
    let sech2 = (-2.0 * ln_cosh(a)).exp();
    let g = move |x: f64, _dx: f64| {
        let e2 = (2.0 * x).exp_m1();
        let (p, q) = ((th2 + e2).sqrt(), (1.0 + e2).sqrt());
        x.exp() * (m2 * x).exp_m1().powf(-0.5) / (p * q * (p + q))
    };
    let spec = SingularIntegrand::inverse_sqrt(g, 0.0, FarEndpoint::Infinite { decay_rate: (n - 1) as f64 });
    let policy = TailPolicy::starting_at(1.0f64.max(-ln_sinh(a)) + 2.0);
    Ok(quad::integrate_exponential_tail(&spec, policy, Tolerance::default())?.scaled(2.0 * sech2))
}

/// `2 lim μ_+(a, ρ)` directly in the original variable.
pub fn mu_plus_limit(n: usize, a: f64) -> Result<QuadratureResult> {
    validate_neck(n, a)?;
    let spec = SingularIntegrand::inverse_sqrt(move |_u: f64, delta: f64| bigraph_slope(n, a, delta), a, FarEndpoint::Infinite { decay_rate: (n - 1) as f64 });
    quad::integrate_exponential_tail(&spec, TailPolicy::default(), Tolerance::default())
}

fn half_slope(n: usize) -> impl Fn(f64) -> f64 {
    move |u: f64| graph_slope(n, 1.0, u)
}

/// `μ_0(ρ) = ∫_b^ρ (cosh^{2n-2} u - 1)^{-1/2} du` for `ρ > 0`.
pub fn mu_zero_quad(n: usize, rho: f64, b: f64) -> Result<QuadratureResult> {
    ensure_dimension(n)?;
    ensure_finite("rho", rho)?;
    ensure_finite("b", b)?;
    if rho <= 0.0 || b <= 0.0 {
        return Err(Error::Domain(format!("mu_0 needs rho > 0 and b > 0, got rho = {rho}, b = {b}")));
    }
    let slope = half_slope(n);
    if rho >= b {
        quad::integrate(slope, b, rho, Tolerance::default())
    } else {
        // In x = ln u the integrand u μ̇ stays bounded as u → 0.
        let r = quad::integrate(|x: f64| x.exp() * slope(x.exp()), rho.ln(), b.ln(), Tolerance::default())?;
        Ok(r.scaled(-1.0))
    }
}

pub fn mu_zero(n: usize, rho: f64, b: f64) -> Result<f64> {
    Ok(mu_zero_quad(n, rho, b)?.value)
}

/// `lim_{ρ→∞} μ_0(ρ)`.
pub fn mu_zero_limit(n: usize, b: f64) -> Result<QuadratureResult> {
    ensure_dimension(n)?;
    if !(b > 0.0) {
        return Err(Error::Domain(format!("b must be positive, got {b}")));
    }
    let slope = half_slope(n);
    let spec = SingularIntegrand::regular(move |u: f64, _d: f64| slope(u), b, FarEndpoint::Infinite { decay_rate: (n - 1) as f64 });
    quad::integrate_exponential_tail(&spec, TailPolicy::default(), Tolerance::default())
}

fn validate_entire(n: usize, d: f64) -> Result<()> {
    ensure_dimension(n)?;
    ensure_finite("d", d)?;
    if d <= 0.0 {
        return Err(Error::Domain(format!("d must be positive, got {d}")));
    }
    if d >= 1.0 {
        return Err(Error::Regime(format!("mu_minus needs d < 1, got {d}")));
    }
    Ok(())
}

/// `μ_-(d, ρ) = d ∫_0^ρ (cosh^{2n-2} u - d²)^{-1/2} du`, odd in `ρ`.
pub fn mu_minus_quad(n: usize, d: f64, rho: f64) -> Result<QuadratureResult> {
    validate_entire(n, d)?;
    ensure_finite("rho", rho)?;
    let r = quad::integrate(move |u: f64| graph_slope(n, d, u), 0.0, rho.abs(), Tolerance::default())?;
    Ok(if rho < 0.0 { r.scaled(-1.0) } else { r })
}

pub fn mu_minus(n: usize, d: f64, rho: f64) -> Result<f64> {
    Ok(mu_minus_quad(n, d, rho)?.value)
}

/// `lim_{ρ→∞} μ_-(d, ρ)`.
pub fn mu_minus_limit(n: usize, d: f64) -> Result<QuadratureResult> {
    validate_entire(n, d)?;
    let spec = SingularIntegrand::regular(move |u: f64, _d: f64| graph_slope(n, d, u), 0.0, FarEndpoint::Infinite { decay_rate: (n - 1) as f64 });
    quad::integrate_exponential_tail(&spec, TailPolicy::default(), Tolerance::default())
}

/// `h_T(d) = 2 lim_{ρ→∞} μ_+(a, ρ)` for `d > 1`.
pub fn height_h_t(n: usize, d: f64) -> Result<HeightResult> {
    let s = TranslationSurface::new(n, d)?;
    if s.regime != Regime::Bigraph {
        return Err(Error::Regime(format!("h_T is defined for d > 1, got {d}")));
    }
    s.height()
}

/// Solves `cosh^{n-1}(a) = d` for `d > 1`.
pub fn neck_of(n: usize, d: f64) -> f64 {
    let c = (d.ln() / (n - 1) as f64).exp();
    if c < 1e6 {
        // acosh(c) via the small-argument-safe form.
        let e = (d.ln() / (n - 1) as f64).exp_m1();
        (e + (e * (e + 2.0)).sqrt()).ln_1p()
    } else {
        d.ln() / (n - 1) as f64 + std::f64::consts::LN_2 + (1.0 - c.powi(-2)).sqrt().ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TranslationSurface {
    pub n: usize,
    pub d: f64,
    pub regime: Regime,
    /// `cosh^{n-1}(a) = d` in the bigraph regime.
    pub a: Option<f64>,
    /// Base point of the `d = 1` profile.
    pub b: f64,
}

/// One row of the exported translation profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TranslationRow {
    pub rho: f64,
    pub mu: f64,
    pub mu_err: f64,
    pub mu_dot: f64,
    pub k_g: f64,
    pub k_e: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureDecayRow {
    pub rho: f64,
    pub k_g: f64,
    pub k_e: f64,
    pub sum: f64,
    /// `n H`.
    pub mean_residual: f64,
    pub v: f64,
    /// Relative defect of the first integral.
    pub first_integral_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureDecayReport {
    pub n: usize,
    pub d: f64,
    pub regime: Regime,
    pub rows: Vec<CurvatureDecayRow>,
    pub decreasing: bool,
    pub final_sum: f64,
    pub below_tol: bool,
    pub max_mean_residual: f64,
    pub v_positive: bool,
}

impl TranslationSurface {
    pub fn new(n: usize, d: f64) -> Result<Self> {
        ensure_dimension(n)?;
        ensure_finite("d", d)?;
        if d <= 0.0 {
            return Err(Error::Domain(format!("d must be positive, got {d}")));
        }
        let regime = Regime::of(d);
        let a = (regime == Regime::Bigraph).then(|| neck_of(n, d));
        Ok(Self { n, d, regime, a, b: DEFAULT_BASE_POINT })
    }

    /// The bigraph with `cosh^{n-1}(a) = d`, parametrised by `a`.
    pub fn from_neck(n: usize, a: f64) -> Result<Self> {
        validate_neck(n, a)?;
        let d = ((n - 1) as f64 * ln_cosh(a)).exp();
        if !(d > 1.0 && d.is_finite()) {
            return Err(Error::Domain(format!("a = {a} gives d = {d}, not representable above 1")));
        }
        Ok(Self { n, d, regime: Regime::Bigraph, a: Some(a), b: DEFAULT_BASE_POINT })
    }

    pub fn with_base_point(mut self, b: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::Domain(format!("b must be positive, got {b}")));
        }
        self.b = b;
        Ok(self)
    }

    /// Smallest admissible `ρ` (exclusive for `d = 1`).
    pub fn rho_min(&self) -> f64 {
        match self.regime {
            Regime::Bigraph => self.a.unwrap_or(0.0),
            Regime::GraphHalf => 0.0,
            Regime::GraphEntire => f64::NEG_INFINITY,
        }
    }

    fn check_rho(&self, rho: f64) -> Result<()> {
        ensure_finite("rho", rho)?;
        let ok = match self.regime {
            Regime::Bigraph => rho >= self.rho_min(),
            Regime::GraphHalf => rho > 0.0,
            Regime::GraphEntire => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("rho = {rho} is outside the {} profile", self.regime.name())))
        }
    }

    /// `μ̇(ρ)` on the upper sheet.
    pub fn slope(&self, rho: f64) -> Result<f64> {
        self.check_rho(rho)?;
        Ok(match self.regime {
            Regime::Bigraph => {
                let a = self.rho_min();
                bigraph_slope(self.n, a, rho - a)
            }
            _ => graph_slope(self.n, self.d, rho).copysign(1.0),
        })
    }

    /// `μ̈ = -(n-1) tanh(ρ) μ̇ (1 + μ̇²)`.
    pub fn slope_derivative(&self, rho: f64) -> Result<f64> {
        let p = self.slope(rho)?;
        Ok(-((self.n - 1) as f64) * rho.tanh() * p * (1.0 + p * p))
    }

    /// `μ(ρ)` on the upper sheet.
    pub fn mu_quad(&self, rho: f64) -> Result<QuadratureResult> {
        self.check_rho(rho)?;
        match self.regime {
            Regime::Bigraph => mu_plus_quad(self.n, self.rho_min(), rho),
            Regime::GraphHalf => mu_zero_quad(self.n, rho, self.b),
            Regime::GraphEntire => mu_minus_quad(self.n, self.d, rho),
        }
    }

    pub fn mu(&self, rho: f64) -> Result<f64> {
        Ok(self.mu_quad(rho)?.value)
    }

    pub fn profile_point(&self, rho: f64) -> Result<TranslationProfilePoint> {
        let mu = self.mu(rho)?;
        Ok(TranslationProfilePoint { rho, mu, mu_dot: self.slope(rho)?, mu_ddot: self.slope_derivative(rho)? })
    }

    /// Relative defect of `μ̇ (1 + μ̇²)^{-1/2} cosh^{n-1}(ρ) = d` for the given slope.
    pub fn first_integral_residual(&self, rho: f64, mu_dot: f64) -> f64 {
        let v = (1.0 + mu_dot * mu_dot).sqrt();
        let ln_lhs = mu_dot.abs().ln() - v.ln() + (self.n - 1) as f64 * ln_cosh(rho);
        (ln_lhs - self.d.ln()).exp_m1()
    }

    pub fn height(&self) -> Result<HeightResult> {
        let regime = self.regime;
        let (r, factor) = match regime {
            Regime::Bigraph => {
                let e = height_excess(self.n, self.rho_min())?;
                let barrier = std::f64::consts::PI / (self.n - 1) as f64;
                return Ok(HeightResult {
                    value: barrier + e.value,
                    finite: true,
                    excess: Some(e.value),
                    error_estimate: e.error_estimate,
                    tail_bound: e.tail_bound,
                    regime,
                });
            }
            Regime::GraphEntire => (mu_minus_limit(self.n, self.d)?, 2.0),
            Regime::GraphHalf => {
                return Ok(HeightResult { value: f64::INFINITY, finite: false, excess: None, error_estimate: 0.0, tail_bound: 0.0, regime })
            }
        };
        let r = r.scaled(factor);
        Ok(HeightResult { value: r.value, finite: true, excess: None, error_estimate: r.error_estimate, tail_bound: r.tail_bound, regime })
    }

    pub fn curvature_decay_check(&self, rho_list: &[f64], tol: f64) -> Result<CurvatureDecayReport> {
        let mut rows = Vec::with_capacity(rho_list.len());
        for &rho in rho_list {
            let p = TranslationProfilePoint { rho, mu: 0.0, mu_dot: self.slope(rho)?, mu_ddot: self.slope_derivative(rho)? };
            let c = curvatures_translation(&p, self.n)?;
            rows.push(CurvatureDecayRow {
                rho,
                k_g: c.k_meridian,
                k_e: c.k_sphere,
                sum: c.k_meridian.abs() + c.k_sphere.abs(),
                mean_residual: self.n as f64 * c.mean,
                v: c.v,
                first_integral_residual: self.first_integral_residual(rho, p.mu_dot),
            });
        }
        let decreasing = rows.windows(2).all(|w| w[1].sum <= w[0].sum);
        let final_sum = rows.last().map_or(f64::NAN, |r| r.sum);
        Ok(CurvatureDecayReport {
            n: self.n,
            d: self.d,
            regime: self.regime,
            decreasing,
            final_sum,
            below_tol: final_sum < tol,
            max_mean_residual: rows.iter().map(|r| r.mean_residual.abs()).fold(0.0, f64::max),
            v_positive: rows.iter().all(|r| r.v > 0.0),
            rows,
        })
    }

    /// `∫ |K| dμ` over `{|ρ| <= rho_max}` on a unit band of the hyperplane
    /// direction, counting both sheets of a bigraph (surface case only).
    pub fn total_curvature_partial(&self, rho_max: f64) -> Result<QuadratureResult> {
        if self.n != 2 {
            return Err(Error::Domain(format!("total curvature is computed for n = 2, got {}", self.n)));
        }
        ensure_finite("rho_max", rho_max)?;
        // |K| dμ = (v² + k_E²) cosh(ρ) / v with v = (1 + μ̇²)^{-1/2}.
        let density = |p: f64, rho: f64| {
            let v = (1.0 + p * p).sqrt().recip();
            let k_e = p * v * rho.tanh();
            (v * v + k_e * k_e) * rho.cosh() / v
        };
        match self.regime {
            Regime::Bigraph => {
                let a = self.rho_min();
                if !(rho_max > a) {
                    return Err(Error::Domain(format!("rho_max = {rho_max} must exceed a = {a}")));
                }
                let spec = SingularIntegrand::inverse_sqrt(
                    move |u: f64, delta: f64| density(bigraph_slope(2, a, delta), u),
                    a,
                    FarEndpoint::Finite(rho_max),
                );
                Ok(quad::integrate_sqrt_singularity(&spec, Tolerance::default())?.scaled(2.0))
            }
            Regime::GraphHalf => {
                if !(rho_max > 0.0) {
                    return Err(Error::Domain(format!("rho_max = {rho_max} must be positive")));
                }
                quad::integrate(move |u: f64| density(graph_slope(2, 1.0, u), u), 0.0, rho_max, Tolerance::default())
            }
            Regime::GraphEntire => {
                if !(rho_max > 0.0) {
                    return Err(Error::Domain(format!("rho_max = {rho_max} must be positive")));
                }
                let d = self.d;
                Ok(quad::integrate(move |u: f64| density(graph_slope(2, d, u), u), 0.0, rho_max, Tolerance::default())?.scaled(2.0))
            }
        }
    }

    /// Profile samples for export; `μ` carries its quadrature error.
    pub fn profile_rows(&self, rho_grid: &[f64]) -> Result<Vec<TranslationRow>> {
        rho_grid
            .iter()
            .map(|&rho| {
                let q = self.mu_quad(rho)?;
                let p = TranslationProfilePoint { rho, mu: q.value, mu_dot: self.slope(rho)?, mu_ddot: self.slope_derivative(rho)? };
                let c = curvatures_translation(&p, self.n)?;
                Ok(TranslationRow { rho, mu: q.value, mu_err: q.error_estimate, mu_dot: p.mu_dot, k_g: c.k_meridian, k_e: c.k_sphere })
            })
            .collect()
    }
}

pub fn curvature_decay_check(n: usize, d: f64, rho_list: &[f64], tol: f64) -> Result<CurvatureDecayReport> {
    TranslationSurface::new(n, d)?.curvature_decay_check(rho_list, tol)
}

pub fn total_curvature_partial(d: f64, rho_max: f64) -> Result<QuadratureResult> {
    TranslationSurface::new(2, d)?.total_curvature_partial(rho_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn regimes() {
        assert_eq!(TranslationSurface::new(2, 0.5).unwrap().regime, Regime::GraphEntire);
        assert_eq!(TranslationSurface::new(2, 1.0).unwrap().regime, Regime::GraphHalf);
        let s = TranslationSurface::new(3, 2.0).unwrap();
        assert_eq!(s.regime, Regime::Bigraph);
        assert!((s.a.unwrap().cosh().powi(2) - 2.0).abs() < 1e-14);
        assert!(TranslationSurface::new(2, 0.0).is_err());
        assert!(TranslationSurface::from_neck(4, 300.0).is_err());
    }

    #[test]
    fn neck_inversion_is_accurate() {
        for n in [2, 3, 4] {
            for a in [1e-3, 0.7, 5.0, 20.0, 200.0] {
                let s = TranslationSurface::from_neck(n, a).unwrap();
                let back = neck_of(n, s.d);
                assert!((back - a).abs() <= 1e-9 * a.max(1e-3), "n={n} a={a}: {back}");
            }
        }
    }

    #[test]
    fn empty_intervals() {
        assert_eq!(mu_plus(2, 1.0, 1.0).unwrap(), 0.0);
        assert_eq!(mu_zero(3, 1.0, 1.0).unwrap(), 0.0);
        assert_eq!(mu_minus(2, 0.5, 0.0).unwrap(), 0.0);
        assert!(mu_plus(2, 1.0, 0.5).is_err());
        assert!(mu_zero(2, 0.0, 1.0).is_err());
        assert!(matches!(mu_minus(2, 1.5, 1.0), Err(Error::Regime(_))));
        assert!(matches!(height_h_t(2, 0.5), Err(Error::Regime(_))));
    }

    #[test]
    fn slope_at_axis_for_entire_graph() {
        let s = TranslationSurface::new(2, 0.5).unwrap();
        assert!((s.slope(0.0).unwrap() - 0.5 / 0.75f64.sqrt()).abs() < 1e-15);
        assert_eq!(mu_minus(2, 0.5, -1.0).unwrap(), -mu_minus(2, 0.5, 1.0).unwrap());
    }

    #[test]
    fn heights_by_regime() {
        assert!(!TranslationSurface::new(2, 1.0).unwrap().height().unwrap().finite);
        let h = height_h_t(2, 2.0).unwrap();
        assert!(h.finite && h.value > PI);
        let e = TranslationSurface::new(2, 0.5).unwrap().height().unwrap();
        assert!(e.finite && e.value > 0.0);
    }

    #[test]
    fn horizontal_slice_limit() {
        let s = TranslationSurface::new(2, 0.5).unwrap();
        let r = s.curvature_decay_check(&[0.0], 1e-6).unwrap();
        assert_eq!(r.rows[0].k_e, 0.0);
    }

    #[test]
    fn dual_forms_agree() {
        let (u, t) = (mu_plus(2, 1.0, 3.0).unwrap(), mu_plus_tform(2, 1.0, 3.0).unwrap());
        assert!((u - t).abs() < 1e-9, "{u} {t}");
        let h = height_h_t(3, 2.5).unwrap().value;
        let a = neck_of(3, 2.5);
        assert!((h - 2.0 * mu_plus_limit(3, a).unwrap().value).abs() < 1e-9);
        assert!((h - height_h_t_tform(3, a).unwrap()).abs() < 1e-9);
    }
}
