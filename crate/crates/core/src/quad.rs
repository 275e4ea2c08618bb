//! Adaptive Gauss–Kronrod quadrature for the improper integrals that define
//! profiles and heights: inverse-square-root endpoint singularities and
//! exponentially decaying tails on `[a, ∞)`.
//!
//! A `(u - a)^{-1/2}` singularity is removed with `u = a + s²`; the integrand
//! receives both `u` and the exact offset `u - a`, so it can evaluate
//! differences such as `sinh(u) - sinh(a)` without cancellation. Infinite
//! endpoints are truncated where an exponential envelope, estimated from
//! samples, bounds the remainder.

use serde::Serialize;

use crate::error::{Error, Result};

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Includes `tail_bound`.
    pub error_estimate: f64,
    pub evaluations: usize,
    /// Analytic bound on the truncated tail; zero for finite ranges.
    pub tail_bound: f64,
}

impl QuadratureResult {
    fn zero() -> Self {
        Self { value: 0.0, error_estimate: 0.0, evaluations: 0, tail_bound: 0.0 }
    }

    fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            tail_bound: self.tail_bound + other.tail_bound,
        }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            evaluations: self.evaluations,
            tail_bound: self.tail_bound * factor.abs(),
        }
    }
}

/// Mixed relative/absolute tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { rel: 1e-10, abs: 1e-12 }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }

    pub fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

/// Behaviour of the integrand at the lower endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    /// `g(u) (u - a)^{1/2}` is bounded and smooth near `a`.
    InverseSqrt,
    /// Smooth up to and including `a`.
    Regular,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FarEndpoint {
    Finite(f64),
    /// `|g(u)| <= M exp(-decay_rate u)` for large `u`.
    Infinite { decay_rate: f64 },
}

/// An integrand on `[singular_endpoint, far_endpoint]`.
///
/// The handle is called as `integrand(u, u - singular_endpoint)`.
#[derive(Clone)]
pub struct SingularIntegrand<F> {
    pub integrand: F,
    pub singular_endpoint: f64,
    pub singularity: Singularity,
    pub far_endpoint: FarEndpoint,
}

impl<F: Fn(f64, f64) -> f64> SingularIntegrand<F> {
    pub fn inverse_sqrt(integrand: F, singular_endpoint: f64, far_endpoint: FarEndpoint) -> Self {
        Self { integrand, singular_endpoint, singularity: Singularity::InverseSqrt, far_endpoint }
    }

    pub fn regular(integrand: F, lower: f64, far_endpoint: FarEndpoint) -> Self {
        Self { integrand, singular_endpoint: lower, singularity: Singularity::Regular, far_endpoint }
    }

    fn validate(&self) -> Result<()> {
        if !self.singular_endpoint.is_finite() {
            return Err(Error::Domain("lower endpoint must be finite".into()));
        }
        match self.far_endpoint {
            FarEndpoint::Finite(b) if !(b >= self.singular_endpoint) || !b.is_finite() => Err(
                Error::Domain(format!("far endpoint {b} must exceed {}", self.singular_endpoint)),
            ),
            FarEndpoint::Infinite { decay_rate } if !(decay_rate > 0.0) => {
                Err(Error::Domain(format!("decay rate must be positive, got {decay_rate}")))
            }
            _ => Ok(()),
        }
    }
}

/// How the truncation point of an infinite range is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailPolicy {
    /// Distance from the lower endpoint where envelope sampling starts.
    pub start_offset: f64,
    pub samples: usize,
    pub spacing: f64,
    /// Largest admissible growth of `|g(u)| e^{r u}` across the samples.
    pub growth_allowance: f64,
}

impl Default for TailPolicy {
    fn default() -> Self {
        Self { start_offset: 1.0, samples: 8, spacing: 1.0, growth_allowance: 4.0 }
    }
}

impl TailPolicy {
    pub fn starting_at(start_offset: f64) -> Self {
        Self { start_offset, ..Self::default() }
    }
}

const MAX_PANELS: usize = 4000;

// 15-point Kronrod abscissae and weights, with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Panel> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Domain(format!("integrand is not finite at {x}: {y}")))
        }
    };

    let fc = eval(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut f1 = [0.0; 7];
    let mut f2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (a, b) = (eval(center - dx)?, eval(center + dx)?);
        f1[j] = a;
        f2[j] = b;
        kronrod += WGK[j] * (a + b);
        abs_sum += WGK[j] * (a.abs() + b.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (a + b);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((f1[j] - mean).abs() + (f2[j] - mean).abs());
    }

    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel { lo, hi, value, error })
}

/// Globally adaptive 15-point Gauss–Kronrod quadrature of a smooth integrand
/// on a finite interval.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<QuadratureResult> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::Domain(format!("integration limits must be finite: [{lo}, {hi}]")));
    }
    if lo == hi {
        return Ok(QuadratureResult::zero());
    }
    let mut panels = vec![gk15(&f, lo, hi)?];
    let mut evaluations = 15;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= tol.target(value) {
            return Ok(QuadratureResult { value, error_estimate: error, evaluations, tail_bound: 0.0 });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, p)| if p.error > acc.1 { (i, p.error) } else { acc });
        let p = panels[worst];
        let mid = 0.5 * (p.lo + p.hi);
        let too_narrow = (mid - p.lo).abs() <= 4.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE);
        if panels.len() >= MAX_PANELS || too_narrow {
            return Err(Error::Accuracy { best: value, error_estimate: error });
        }
        let left = gk15(&f, p.lo, mid)?;
        let right = gk15(&f, mid, p.hi)?;
        evaluations += 30;
        panels[worst] = left;
        panels.push(right);
    }
}

/// Non-adaptive composite rule on `panels` equal sub-intervals.
pub fn gauss_kronrod_panels<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize) -> Result<QuadratureResult> {
    let panels = panels.max(1);
    let width = (hi - lo) / panels as f64;
    let mut out = QuadratureResult::zero();
    for i in 0..panels {
        let a = lo + i as f64 * width;
        let b = if i + 1 == panels { hi } else { a + width };
        let p = gk15(&f, a, b)?;
        out = out.combine(QuadratureResult { value: p.value, error_estimate: p.error, evaluations: 15, tail_bound: 0.0 });
    }
    Ok(out)
}

/// Integrates over `[a, a + width]` with `u = a + s²`.
fn integrate_substituted<F: Fn(f64, f64) -> f64>(g: &F, a: f64, width: f64, tol: Tolerance) -> Result<QuadratureResult> {
    let smax = width.sqrt();
    integrate(
        |s| {
            let offset = s * s;
            2.0 * s * g(a + offset, offset)
        },
        0.0,
        smax,
        tol,
    )
}

fn integrate_head<F: Fn(f64, f64) -> f64>(
    spec: &SingularIntegrand<F>,
    width: f64,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    let a = spec.singular_endpoint;
    match spec.singularity {
        Singularity::InverseSqrt => integrate_substituted(&spec.integrand, a, width, tol),
        Singularity::Regular => integrate(|u| (spec.integrand)(u, u - a), a, a + width, tol),
    }
}

/// Integral of an integrand with an inverse-square-root singularity at its
/// lower endpoint. Infinite far endpoints use the default [`TailPolicy`].
pub fn integrate_sqrt_singularity<F: Fn(f64, f64) -> f64>(
    spec: &SingularIntegrand<F>,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    spec.validate()?;
    if spec.singularity != Singularity::InverseSqrt {
        return Err(Error::Domain("integrand is not marked with an inverse-square-root singularity".into()));
    }
    match spec.far_endpoint {
        FarEndpoint::Finite(b) => integrate_substituted(&spec.integrand, spec.singular_endpoint, b - spec.singular_endpoint, tol),
        FarEndpoint::Infinite { .. } => integrate_exponential_tail(spec, TailPolicy::default(), tol),
    }
}

/// Truncation of an infinite range under an exponential envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCutoff {
    pub cutoff: f64,
    pub bound: f64,
    pub evaluations: usize,
}

/// Chooses `U` with `M e^{-r (U - start)} / r < target`, where `M` is the
/// largest sampled value of `|g(u)| e^{r (u - start)}`.
pub fn tail_cutoff<G: Fn(f64) -> f64>(g: G, start: f64, decay_rate: f64, policy: TailPolicy, target: f64) -> Result<TailCutoff> {
    let count = policy.samples.max(2);
    let mut envelope = Vec::with_capacity(count);
    for k in 0..count {
        let u = start + k as f64 * policy.spacing;
        let y = g(u);
        if !y.is_finite() {
            return Err(Error::Domain(format!("integrand is not finite at {u}: {y}")));
        }
        envelope.push(y.abs() * (decay_rate * (u - start)).exp());
    }
    let first = envelope[0];
    let last = envelope[count - 1];
    let peak = envelope.iter().cloned().fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(TailCutoff { cutoff: start, bound: 0.0, evaluations: count });
    }
    if last > policy.growth_allowance * first.max(f64::MIN_POSITIVE) {
        return Err(Error::Domain(format!(
            "decay hypothesis violated: |g(u)| e^(r u) grew by a factor {:.3e} over [{start}, {}] at rate {decay_rate}",
            last / first,
            start + (count - 1) as f64 * policy.spacing
        )));
    }
    let target = target.max(f64::MIN_POSITIVE);
    let extra = ((peak / (decay_rate * target)).ln() / decay_rate).max(0.0);
    let cutoff = start + extra;
    let bound = peak * (-decay_rate * extra).exp() / decay_rate;
    Ok(TailCutoff { cutoff, bound, evaluations: count })
}

/// Integral over `[a, ∞)` of an integrand decaying like `e^{-r u}`, with an
/// optional inverse-square-root singularity at `a`.
pub fn integrate_exponential_tail<F: Fn(f64, f64) -> f64>(
    spec: &SingularIntegrand<F>,
    policy: TailPolicy,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    spec.validate()?;
    let rate = match spec.far_endpoint {
        FarEndpoint::Infinite { decay_rate } => decay_rate,
        FarEndpoint::Finite(_) => return Err(Error::Domain("far endpoint is finite; no tail to truncate".into())),
    };
    let a = spec.singular_endpoint;
    let start = a + policy.start_offset.max(0.0);
    let probe_end = start + (policy.samples.max(2) - 1) as f64 * policy.spacing;
    let g = |u: f64| (spec.integrand)(u, u - a);

    let head = if start > a { integrate_head(spec, start - a, tol)? } else { QuadratureResult::zero() };
    let probe = integrate(&g, start, probe_end, tol)?;
    let coarse = head.value + probe.value;
    let cut = tail_cutoff(&g, start, rate, policy, 0.5 * tol.target(coarse))?;
    let rest = if cut.cutoff > probe_end {
        integrate(&g, probe_end, cut.cutoff, tol)?
    } else {
        // Envelope already below target inside the probe window; drop the excess.
        let trimmed = integrate(&g, start, cut.cutoff, tol)?;
        return Ok(QuadratureResult {
            value: head.value + trimmed.value,
            error_estimate: head.error_estimate + trimmed.error_estimate + cut.bound,
            evaluations: head.evaluations + probe.evaluations + trimmed.evaluations + cut.evaluations,
            tail_bound: cut.bound,
        });
    };
    Ok(QuadratureResult {
        value: head.value + probe.value + rest.value,
        error_estimate: head.error_estimate + probe.error_estimate + rest.error_estimate + cut.bound,
        evaluations: head.evaluations + probe.evaluations + rest.evaluations + cut.evaluations,
        tail_bound: cut.bound,
    })
}
