//! The invariant suite behind `minhyp check`.

use std::f64::consts::PI;

use minhyp::catenoid::{height, lambda, lambda_vform, Catenoid};
use minhyp::hgeom::{curvatures_rotation, gauss_curvature_2d, intrinsic_curvature_fd, simons_residual, RadialStencil, RotationProfilePoint};
use minhyp::jacobi::{assemble_mode_operator, certify_index, eigen_bottom, sample_fields, JacobiAnalysis, ModeDomain};
use minhyp::quad::gauss_kronrod_panels;
use minhyp::transinv::TranslationSurface;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{heights, profile};
use crate::args::{CommonArgs, Family, Format};
use crate::output::to_csv;

const DIMS: [usize; 3] = [2, 3, 4];
const NECKS: [f64; 3] = [0.5, 1.0, 2.0];
const HEIGHT_GRID: [f64; 9] = [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 15.0, 20.0];
const SIMONS_TOL: f64 = 1e-6;
const FIRST_INTEGRAL_TOL: f64 = 1e-9;
const DUAL_TOL: f64 = 1e-7;
const SUBSTITUTION_TOL: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-9;
/// Error ratio under halving of `h` accepted as second order.
const SECOND_ORDER_RATIO: f64 = 3.0;
const PROFILE_POINTS: usize = 200;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Bound on `|H|` along generated profiles.
    pub tol: f64,
    /// Offset added to `f` before the catenoid first-integral check.
    pub perturb: f64,
    pub meshes: Vec<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { tol: 1e-8, perturb: 0.0, meshes: vec![1e-2, 5e-3, 2.5e-3] }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub module: &'static str,
    pub passed: bool,
    /// Worst value of the checked quantity.
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
    /// Part of the index certification rather than a numeric invariant.
    pub certification: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn numeric_failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed && !c.certification).count()
    }

    pub fn certification_failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed && c.certification).count()
    }
}

type Measured = minhyp::Result<(f64, String)>;

struct Check {
    name: &'static str,
    module: &'static str,
    threshold: fn(&SuiteConfig) -> f64,
    /// `true` when the measured value must not exceed the threshold,
    /// `false` when it must not fall below it.
    upper: bool,
    certification: bool,
    run: fn(&SuiteConfig) -> Measured,
}

const CHECKS: [Check; 23] = [
    Check { name: "norm_a2_identity", module: "hgeom", threshold: |_| 1e-12, upper: true, certification: false, run: norm_a2_identity },
    Check { name: "gauss_equation_order", module: "hgeom", threshold: |_| SECOND_ORDER_RATIO, upper: false, certification: false, run: gauss_equation_order },
    Check { name: "flux_form_order", module: "hgeom", threshold: |_| SECOND_ORDER_RATIO, upper: false, certification: false, run: flux_form_order },
    Check { name: "simons_residual", module: "hgeom", threshold: |_| -SIMONS_TOL, upper: false, certification: false, run: simons },
    Check { name: "substitution_invariance", module: "quad", threshold: |_| SUBSTITUTION_TOL, upper: true, certification: false, run: substitution },
    Check { name: "monotone_error_estimate", module: "quad", threshold: |_| 0.0, upper: true, certification: false, run: monotone_error },
    Check { name: "first_integral", module: "catenoid", threshold: |_| FIRST_INTEGRAL_TOL, upper: true, certification: false, run: catenoid_first_integral },
    Check { name: "minimality", module: "catenoid", threshold: |c| c.tol, upper: true, certification: false, run: catenoid_minimality },
    Check { name: "dual_representation", module: "catenoid", threshold: |_| DUAL_TOL, upper: true, certification: false, run: dual_representation },
    Check { name: "height_bound", module: "catenoid", threshold: |_| 0.0, upper: false, certification: false, run: height_bound },
    Check { name: "height_monotone", module: "catenoid", threshold: |_| 0.0, upper: false, certification: false, run: height_monotone },
    Check { name: "parity", module: "jacobi", threshold: |_| 0.0, upper: true, certification: false, run: parity },
    Check { name: "e_identity", module: "jacobi", threshold: |_| IDENTITY_TOL, upper: true, certification: false, run: e_identity },
    Check { name: "unique_zeros", module: "jacobi", threshold: |_| 0.0, upper: true, certification: false, run: unique_zeros },
    Check { name: "spectral_consistency", module: "jacobi", threshold: |_| 1.8, upper: false, certification: false, run: spectral_consistency },
    Check { name: "domain_monotonicity", module: "jacobi", threshold: |_| 0.0, upper: true, certification: false, run: domain_monotonicity },
    Check { name: "supersolution_stability", module: "jacobi", threshold: |_| 0.0, upper: false, certification: false, run: supersolution },
    Check { name: "index_one", module: "jacobi", threshold: |_| 0.0, upper: true, certification: true, run: index_one },
    Check { name: "first_integral", module: "transinv", threshold: |_| FIRST_INTEGRAL_TOL, upper: true, certification: false, run: translation_first_integral },
    Check { name: "minimality", module: "transinv", threshold: |c| c.tol, upper: true, certification: false, run: translation_minimality },
    Check { name: "height_ordering", module: "transinv", threshold: |_| 0.0, upper: false, certification: false, run: height_ordering },
    Check { name: "regime_boundary", module: "transinv", threshold: |_| 0.05, upper: true, certification: false, run: regime_boundary },
    Check { name: "deterministic_output", module: "cli", threshold: |_| 0.0, upper: true, certification: false, run: deterministic },
];

pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let checks: Vec<CheckResult> = CHECKS
        .par_iter()
        .map(|c| {
            let threshold = (c.threshold)(config);
            let (passed, measured, detail) = match (c.run)(config) {
                Ok((m, detail)) => {
                    let ok = if c.upper { m <= threshold } else { m > threshold };
                    (ok, m, detail)
                }
                Err(e) => (false, f64::NAN, format!("error: {e}")),
            };
            CheckResult { name: c.name, module: c.module, passed, measured, threshold, detail, certification: c.certification }
        })
        .collect();
    let failed = checks.iter().filter(|c| !c.passed).count();
    SuiteReport { passed: checks.len() - failed, failed, checks }
}

fn upper_grid(c: &Catenoid, fraction: f64, points: usize) -> Vec<f64> {
    let span = fraction * c.half_height();
    (0..points).map(|j| span * j as f64 / (points - 1) as f64).collect()
}

fn catenoids(dims: &[usize]) -> minhyp::Result<Vec<Catenoid>> {
    let mut out = Vec::new();
    for &n in dims {
        for a in NECKS {
            out.push(Catenoid::new(n, a)?);
        }
    }
    Ok(out)
}

fn norm_a2_identity(_: &SuiteConfig) -> Measured {
    let mut worst = 0.0f64;
    let mut count = 0;
    for c in catenoids(&DIMS)? {
        for s in c.profile_ode(&upper_grid(&c, 0.95, 50))? {
            let r = curvatures_rotation(&s.point, c.n())?;
            let direct = r.k_meridian.powi(2) + (c.n() - 1) as f64 * r.k_sphere.powi(2);
            worst = worst.max((r.norm_a2 - direct).abs() / r.norm_a2.max(1.0));
            count += 1;
        }
    }
    Ok((worst, format!("{count} profile points")))
}

/// Three profile points centred at `t` with spacing `h`.
fn stencil_points(c: &Catenoid, t: f64, h: f64) -> minhyp::Result<Vec<RotationProfilePoint>> {
    Ok(c.profile_ode(&[t - h, t, t + h])?.into_iter().map(|s| s.point).collect())
}

fn gauss_equation_order(_: &SuiteConfig) -> Measured {
    let mut worst = f64::INFINITY;
    for a in NECKS {
        let c = Catenoid::new(2, a)?;
        let big_t = c.half_height();
        for frac in [0.0, 0.3, 0.6] {
            let t = frac * big_t;
            let mut errs = Vec::new();
            for h in [0.02 * big_t, 0.01 * big_t] {
                let pts = stencil_points(&c, t, h)?;
                let st = RadialStencil::from_rotation(2, &pts)?;
                let rec = curvatures_rotation(&pts[1], 2)?;
                errs.push((intrinsic_curvature_fd(&st)? - gauss_curvature_2d(rec.norm_a2, rec.v)?).abs());
            }
            if errs[1] > 1e-10 {
                worst = worst.min(errs[0] / errs[1]);
            }
        }
    }
    Ok((worst, "smallest error ratio under halving h, n = 2".into()))
}

fn flux_form_order(_: &SuiteConfig) -> Measured {
    let f = |t: f64| 1.0 + 0.3 * t * t + 0.1 * t.sin();
    let ft = |t: f64| 0.6 * t + 0.1 * t.cos();
    let ftt = |t: f64| 0.6 - 0.1 * t.sin();
    let mut worst = f64::INFINITY;
    for n in DIMS {
        let m = (n - 1) as i32;
        let flux = |t: f64| f(t).sinh().powi(m) / (1.0 + ft(t).powi(2)).sqrt();
        for t in [0.3, 0.9, 1.7] {
            let rec = curvatures_rotation(&RotationProfilePoint::new(t, f(t), ft(t), ftt(t))?, n)?;
            let lhs = n as f64 * ft(t) * f(t).sinh().powi(m) * rec.mean;
            let errs: Vec<f64> = [1e-2, 5e-3].iter().map(|&h| (lhs - (flux(t + h) - flux(t - h)) / (2.0 * h)).abs()).collect();
            worst = worst.min(errs[0] / errs[1]);
        }
    }
    Ok((worst, "smallest error ratio under halving h on a non-minimal profile".into()))
}

fn simons(_: &SuiteConfig) -> Measured {
    let mut worst = f64::INFINITY;
    let mut count = 0;
    for c in catenoids(&[2])? {
        let span = 0.95 * c.half_height();
        let grid: Vec<f64> = (0..=PROFILE_POINTS).map(|j| -span + 2.0 * span * j as f64 / PROFILE_POINTS as f64).collect();
        let pts: Vec<RotationProfilePoint> = c.profile_ode(&grid)?.into_iter().map(|s| s.point).collect();
        for w in pts.windows(3) {
            worst = worst.min(simons_residual(&RadialStencil::from_rotation(2, w)?)?);
            count += 1;
        }
    }
    Ok((worst, format!("minimum over {count} stencils")))
}

fn substitution(_: &SuiteConfig) -> Measured {
    let mut worst = 0.0f64;
    for n in DIMS {
        for a in NECKS {
            for off in [0.1, 1.0, 4.0] {
                worst = worst.max((lambda(n, a, a + off)? - lambda_vform(n, a, a + off)?).abs());
            }
        }
    }
    Ok((worst, "u-form against v-form on a 3x3x3 grid".into()))
}

fn monotone_error(_: &SuiteConfig) -> Measured {
    // u^{-1/2} e^u cos(5u) on [0, 4] after u = s².
    let g = |s: f64| 2.0 * (s * s).exp() * (5.0 * s * s).cos();
    let mut prev = f64::INFINITY;
    let mut worst_increase = 0.0f64;
    for panels in [1, 2, 4, 8, 16, 32] {
        let r = gauss_kronrod_panels(g, 0.0, 2.0, panels)?;
        let e = r.error_estimate;
        // Below this the estimate is dominated by rounding.
        if prev > 1e3 * f64::EPSILON * r.value.abs() {
            worst_increase = worst_increase.max(e - prev);
        }
        prev = e;
    }
    Ok((worst_increase, "largest increase of the error estimate over 1..32 panels".into()))
}

fn catenoid_first_integral(cfg: &SuiteConfig) -> Measured {
    let mut worst = 0.0f64;
    for c in catenoids(&DIMS)? {
        let m = (c.n() - 1) as i32;
        let target = c.a().sinh().powi(m);
        for s in c.profile_ode(&upper_grid(&c, 0.95, PROFILE_POINTS))? {
            let p = s.point;
            let lhs = (p.f + cfg.perturb).sinh().powi(m) / (1.0 + p.f_t * p.f_t).sqrt();
            worst = worst.max((lhs - target).abs() / target);
        }
    }
    Ok((worst, format!("relative drift, perturbation {}", cfg.perturb)))
}

fn catenoid_minimality(_: &SuiteConfig) -> Measured {
    let mut worst = 0.0f64;
    for c in catenoids(&DIMS)? {
        for s in c.profile_ode(&upper_grid(&c, 0.99, PROFILE_POINTS))? {
            worst = worst.max(curvatures_rotation(&s.point, c.n())?.mean.abs());
        }
    }
    Ok((worst, "max |H| along ODE profiles".into()))
}

fn dual_representation(_: &SuiteConfig) -> Measured {
    let mut worst = 0.0f64;
    for c in catenoids(&DIMS)? {
        for r in c.profile_rows(&upper_grid(&c, 0.95, 60))? {
            worst = worst.max(r.rho_err);
        }
    }
    Ok((worst, "max |f_ode - f_inverse| on [0, 0.95 T]".into()))
}

fn height_bound(_: &SuiteConfig) -> Measured {
    let mut gap = f64::INFINITY;
    for n in DIMS {
        for a in HEIGHT_GRID {
            gap = gap.min(PI / (n - 1) as f64 - height(n, a)?);
        }
    }
    Ok((gap, "min of pi/(n-1) - h_R(a)".into()))
}

fn height_monotone(_: &SuiteConfig) -> Measured {
    let mut step = f64::INFINITY;
    for n in DIMS {
        let h = HEIGHT_GRID.iter().map(|&a| height(n, a)).collect::<minhyp::Result<Vec<_>>>()?;
        step = h.windows(2).map(|w| w[1] - w[0]).fold(step, f64::min);
    }
    Ok((step, "smallest increment of h_R along the a grid".into()))
}

fn parity(_: &SuiteConfig) -> Measured {
    let mut worst = 0.0f64;
    for c in catenoids(&[2, 3])? {
        let half = upper_grid(&c, 0.95, 50);
        let grid: Vec<f64> = half.iter().map(|t| -t).chain(half.iter().copied()).collect();
        let s = sample_fields(&c, &grid)?;
        let k = half.len();
        for i in 0..k {
            let (lo, hi) = (&s[i], &s[k + i]);
            worst = worst.max((lo.v + hi.v).abs()).max((lo.e - hi.e).abs()).max((lo.h_gamma - hi.h_gamma).abs());
        }
    }
    Ok((worst, "v odd, e and h_gamma even".into()))
}

fn e_identity(_: &SuiteConfig) -> Measured {
    let mut worst = 0.0f64;
    for c in catenoids(&[2, 3])? {
        for s in sample_fields(&c, &upper_grid(&c, 0.95, 100))? {
            worst = worst.max((s.e - (-s.a_coef + s.b_coef * s.v)).abs());
        }
    }
    Ok((worst, "max |e + A - B v| on [0, 0.95 T]".into()))
}

fn unique_zeros(_: &SuiteConfig) -> Measured {
    let mut bad = 0.0;
    for c in catenoids(&[2, 3])? {
        // Construction fails unless e and W change sign exactly once.
        let j = JacobiAnalysis::new(&c)?;
        for f in [0.1, 0.3, 0.5, 0.7, 0.9] {
            if j.beta(f * c.half_height()).is_err() {
                bad += 1.0;
            }
        }
    }
    Ok((bad, "sign changes of e, W and w at 1e4 samples".into()))
}

fn spectral_consistency(cfg: &SuiteConfig) -> Measured {
    let mut worst = f64::INFINITY;
    for n in [2, 3] {
        let c = Catenoid::new(n, 1.0)?;
        let sigma = JacobiAnalysis::new(&c)?.thresholds.sigma;
        let lam = cfg
            .meshes
            .iter()
            .map(|&h| Ok(eigen_bottom(&assemble_mode_operator(&c, ModeDomain::symmetric(sigma), 0, h)?, 1)?.coarse_eigenvalues[0]))
            .collect::<minhyp::Result<Vec<_>>>()?;
        for (i, w) in lam.windows(2).enumerate() {
            let order = (w[0].abs() / w[1].abs()).ln() / (cfg.meshes[i] / cfg.meshes[i + 1]).ln();
            worst = worst.min(order);
        }
    }
    Ok((worst, "observed order of lambda_1 on (-sigma, sigma) -> 0".into()))
}

fn domain_monotonicity(cfg: &SuiteConfig) -> Measured {
    let h = cfg.meshes[0];
    let mut worst = f64::NEG_INFINITY;
    for n in [2, 3] {
        let c = Catenoid::new(n, 1.0)?;
        let big_t = c.half_height();
        let lam = [0.3, 0.5, 0.7, 0.9, 0.95]
            .iter()
            .map(|&f| Ok(eigen_bottom(&assemble_mode_operator(&c, ModeDomain::symmetric(f * big_t), 0, h)?, 1)?.eigenvalues[0]))
            .collect::<minhyp::Result<Vec<_>>>()?;
        worst = lam.windows(2).map(|w| w[1] - w[0]).fold(worst, f64::max);
    }
    Ok((worst, "largest increase of lambda_1 as S grows".into()))
}

fn supersolution(cfg: &SuiteConfig) -> Measured {
    let mut worst = f64::INFINITY;
    for c in catenoids(&[2, 3])? {
        let big_t = c.half_height();
        let domain = ModeDomain::Interval { alpha: 0.05 * big_t, beta: 0.9 * big_t };
        worst = worst.min(eigen_bottom(&assemble_mode_operator(&c, domain, 0, cfg.meshes[0])?, 1)?.eigenvalues[0]);
    }
    Ok((worst, "lambda_1 on (0.05 T, 0.9 T) where v > 0".into()))
}

fn index_one(cfg: &SuiteConfig) -> Measured {
    let mut bad = 0.0;
    let mut notes = Vec::new();
    for n in [2, 3] {
        let c = Catenoid::new(n, 1.0)?;
        let sigma = JacobiAnalysis::new(&c)?.thresholds.sigma;
        let big_t = c.half_height();
        let s_list = [0.5 * sigma, sigma, 0.5 * (sigma + big_t), 0.95 * big_t];
        let r = certify_index(&c, &s_list, &cfg.meshes[..2.min(cfg.meshes.len())], 5)?;
        if !(r.certified && r.index == 1) {
            bad += 1.0;
        }
        notes.push(format!("n={n}: index {} certified {}", r.index, r.certified));
    }
    Ok((bad, notes.join("; ")))
}

fn translation_surfaces() -> minhyp::Result<Vec<(TranslationSurface, Vec<f64>)>> {
    let mut out = Vec::new();
    for n in DIMS {
        for d in [0.5, 1.0, 2.0, 10.0] {
            let s = TranslationSurface::new(n, d)?;
            let start = s.rho_min().max(0.0);
            let grid = (1..=40).map(|k| start + 0.5 * k as f64).collect();
            out.push((s, grid));
        }
    }
    Ok(out)
}

fn translation_first_integral(_: &SuiteConfig) -> Measured {
    let mut worst = 0.0f64;
    for (s, grid) in translation_surfaces()? {
        for rho in grid {
            worst = worst.max(s.first_integral_residual(rho, s.slope(rho)?).abs());
        }
    }
    Ok((worst, "relative defect of the first integral".into()))
}

fn translation_minimality(cfg: &SuiteConfig) -> Measured {
    let mut worst = 0.0f64;
    for (s, grid) in translation_surfaces()? {
        let r = s.curvature_decay_check(&grid, cfg.tol)?;
        worst = worst.max(r.max_mean_residual / s.n as f64);
    }
    Ok((worst, "max |H| along translation profiles".into()))
}

fn height_ordering(_: &SuiteConfig) -> Measured {
    let mut gap = f64::INFINITY;
    for n in DIMS {
        for d in [1.01, 1.5, 2.0, 10.0, 1e3] {
            gap = gap.min(TranslationSurface::new(n, d)?.height()?.excess.unwrap_or(f64::NAN));
        }
        for a in HEIGHT_GRID {
            gap = gap.min(PI / (n - 1) as f64 - height(n, a)?);
        }
    }
    Ok((gap, "min of h_T - pi/(n-1) and pi/(n-1) - h_R".into()))
}

fn regime_boundary(_: &SuiteConfig) -> Measured {
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for n in DIMS {
        let below = |eps: f64| -> minhyp::Result<f64> { Ok(TranslationSurface::new(n, 1.0 - eps)?.height()?.value) };
        let above = |eps: f64| -> minhyp::Result<f64> { Ok(TranslationSurface::new(n, 1.0 + eps)?.height()?.value) };
        let decade = std::f64::consts::LN_10;
        let s_below = (below(1e-6)? - below(1e-5)?) / decade;
        let s_above = (above(1e-6)? - above(1e-5)?) / decade;
        worst = worst.max((s_below / s_above - 1.0).abs());
        notes.push(format!("n={n}: slopes {s_below:.6} / {s_above:.6}"));
    }
    Ok((worst, format!("log-divergence slopes in ln(1/|d-1|) on both sides; {}", notes.join("; "))))
}

fn deterministic(_: &SuiteConfig) -> Measured {
    let args = CommonArgs {
        n: 2,
        a: vec![0.5, 1.0],
        d: vec![1.5, 2.0],
        mesh: vec![],
        tol: 1e-8,
        format: Format::Csv,
        out: None,
        family: Some(Family::Catenoid),
        samples: 21,
        k_max: 1,
        perturb: 0.0,
    };
    let render = || -> minhyp::Result<String> {
        let h = heights::rows(&CommonArgs { family: None, ..args.clone() }).map_err(|e| minhyp::Error::Internal(e.to_string()))?;
        let c = Catenoid::new(2, 1.0)?;
        let rows = c.profile_rows(&upper_grid(&c, 0.9, 21))?;
        let curve = profile::catenary_curve(2, 0.5)?;
        Ok(format!(
            "{}{}{:?}",
            to_csv(&h).map_err(|e| minhyp::Error::Internal(e.to_string()))?,
            to_csv(&rows).map_err(|e| minhyp::Error::Internal(e.to_string()))?,
            curve
        ))
    };
    let (x, y) = rayon::join(render, render);
    Ok((if x? == y? { 0.0 } else { 1.0 }, "two renderings of the same configuration".into()))
}
