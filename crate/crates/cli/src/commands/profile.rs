use std::f64::consts::PI;
use std::path::PathBuf;

use minhyp::catenoid::{default_rho_max, lambda, Catenoid};
use minhyp::transinv::{Regime, TranslationSurface};
use rayon::prelude::*;

use crate::args::{CommonArgs, Family, Format};
use crate::output::{out_dir, param_tag, to_csv, write_file, Document, Outcome};
use crate::svg::{Plot, Series};

pub const DEFAULT_A: [f64; 3] = [0.5, 1.0, 2.0];
pub const DEFAULT_D: [f64; 3] = [0.5, 1.0, 2.0];

/// Extent in `ρ` of the plotted translation generatrices.
const TRANSLATION_RHO: f64 = 12.0;
const CURVE_POINTS: usize = 300;

pub fn run(args: &CommonArgs) -> Outcome<Vec<PathBuf>> {
    match args.family.unwrap_or(Family::Catenoid) {
        Family::Catenoid => catenoids(args),
        Family::Translation => translations(args),
    }
}

/// `ρ` samples above `a`, clustered at the neck.
pub fn neck_grid(a: f64, rho_max: f64, points: usize) -> Vec<f64> {
    let mut grid = vec![a];
    grid.extend((0..points).map(|k| a + (rho_max - a) * 1e-6f64.powf(1.0 - k as f64 / (points - 1) as f64)));
    grid
}

/// The catenary of `C_a` in the `(tanh(ρ/2), t)` plane, bottom to top.
pub fn catenary_curve(n: usize, a: f64) -> minhyp::Result<Vec<(f64, f64)>> {
    let upper = neck_grid(a, default_rho_max(a), CURVE_POINTS)
        .into_iter()
        .map(|rho| Ok(((0.5 * rho).tanh(), lambda(n, a, rho)?)))
        .collect::<minhyp::Result<Vec<_>>>()?;
    let mut curve: Vec<(f64, f64)> = upper.iter().rev().map(|&(x, t)| (x, -t)).collect();
    curve.extend(upper.into_iter().skip(1));
    Ok(curve)
}

pub fn catenary_plot(title: &str, n: usize) -> Plot {
    let bound = PI / (n - 1) as f64;
    let mut plot = Plot::new(title, (0.0, 1.0), (-0.55 * bound, 0.55 * bound));
    plot.hlines.push((0.5 * bound, "t = pi/(2(n-1))".into()));
    plot.hlines.push((-0.5 * bound, "t = -pi/(2(n-1))".into()));
    plot.vlines.push((1.0, "ideal boundary".into()));
    plot
}

fn catenoids(args: &CommonArgs) -> Outcome<Vec<PathBuf>> {
    let n = args.n;
    let a_list = args.a_or(&DEFAULT_A);
    let samples = args.samples;
    let computed = a_list
        .par_iter()
        .map(|&a| -> minhyp::Result<_> {
            let c = Catenoid::new(n, a)?;
            let span = 0.98 * c.half_height();
            let grid: Vec<f64> = (0..samples).map(|j| -span + 2.0 * span * j as f64 / (samples - 1) as f64).collect();
            Ok((a, c.profile_rows(&grid)?, catenary_curve(n, a)?))
        })
        .collect::<minhyp::Result<Vec<_>>>()?;

    let dir = out_dir(args.out.as_deref())?;
    let mut written = Vec::new();
    let mut plot = catenary_plot(&format!("Catenaries, n = {n}"), n);
    for (a, rows, curve) in computed {
        let stem = format!("catenoid_n{n}_a{}", param_tag(a));
        written.push(match args.format {
            Format::Json => write_file(&dir, &format!("{stem}.json"), &Document::new("profile", n, &rows).with_family("catenoid").to_json()?)?,
            _ => write_file(&dir, &format!("{stem}.csv"), &to_csv(&rows)?)?,
        });
        plot.series.push(Series { label: format!("a = {a}"), points: curve, dashed: false });
    }
    written.push(write_file(&dir, &format!("catenoid_n{n}.svg"), &plot.render())?);
    Ok(written)
}

/// Upper-sheet `ρ` samples for the export of one translation profile.
fn translation_grid(s: &TranslationSurface, samples: usize) -> Vec<f64> {
    let last = (samples - 1) as f64;
    match s.regime {
        Regime::Bigraph => {
            let a = s.rho_min();
            let last = samples as f64;
            (1..=samples).map(|k| a + (TRANSLATION_RHO - a) * (k as f64 / last).powi(2)).collect()
        }
        Regime::GraphHalf => (0..samples).map(|k| 1e-2 * (TRANSLATION_RHO / 1e-2).powf(k as f64 / last)).collect(),
        Regime::GraphEntire => (0..samples).map(|k| -TRANSLATION_RHO + 2.0 * TRANSLATION_RHO * k as f64 / last).collect(),
    }
}

/// The generatrix in the `(tanh(ρ/2), t)` plane.
pub fn generatrix_curve(s: &TranslationSurface) -> minhyp::Result<Vec<(f64, f64)>> {
    let pts = match s.regime {
        Regime::Bigraph => neck_grid(s.rho_min(), TRANSLATION_RHO, CURVE_POINTS),
        _ => translation_grid(s, 2 * CURVE_POINTS),
    };
    let upper = pts.into_iter().map(|rho| Ok(((0.5 * rho).tanh(), s.mu(rho)?))).collect::<minhyp::Result<Vec<_>>>()?;
    if s.regime == Regime::Bigraph {
        let mut curve: Vec<(f64, f64)> = upper.iter().rev().map(|&(x, t)| (x, -t)).collect();
        curve.extend(upper.into_iter().skip(1));
        Ok(curve)
    } else {
        Ok(upper)
    }
}

fn translations(args: &CommonArgs) -> Outcome<Vec<PathBuf>> {
    let n = args.n;
    let d_list = args.d_or(&DEFAULT_D);
    let samples = args.samples;
    let computed = d_list
        .par_iter()
        .map(|&d| -> minhyp::Result<_> {
            let s = TranslationSurface::new(n, d)?;
            let rows = s.profile_rows(&translation_grid(&s, samples))?;
            Ok((s, rows, generatrix_curve(&s)?))
        })
        .collect::<minhyp::Result<Vec<_>>>()?;

    let dir = out_dir(args.out.as_deref())?;
    let mut written = Vec::new();
    let bound = PI / (n - 1) as f64;
    let mut plot = Plot::new(format!("Generatrices of translation-invariant hypersurfaces, n = {n}"), (-1.0, 1.0), (-1.5 * bound, 1.5 * bound));
    plot.hlines.push((0.5 * bound, "t = pi/(2(n-1))".into()));
    plot.hlines.push((-0.5 * bound, "t = -pi/(2(n-1))".into()));
    for (s, rows, curve) in computed {
        let regime = s.regime.name();
        let stem = format!("translation_n{n}_d{}_{regime}", param_tag(s.d));
        written.push(match args.format {
            Format::Json => write_file(
                &dir,
                &format!("{stem}.json"),
                &Document::new("profile", n, &rows).with_family("translation").with_regime(regime).to_json()?,
            )?,
            _ => write_file(&dir, &format!("{stem}.csv"), &to_csv(&rows)?)?,
        });
        plot.series.push(Series { label: format!("d = {} ({regime})", s.d), points: curve, dashed: s.regime != Regime::Bigraph });
    }
    written.push(write_file(&dir, &format!("translation_n{n}.svg"), &plot.render())?);
    Ok(written)
}
