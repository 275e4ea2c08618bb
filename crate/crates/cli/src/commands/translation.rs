use minhyp::transinv::{Regime, TranslationSurface};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{CommonArgs, Format};
use crate::output::{emit, to_csv, Document, Failure, Outcome};

pub const DEFAULT_D: [f64; 5] = [0.5, 0.9, 1.0, 1.1, 2.0];

/// `ρ` offsets from the start of the profile used for the decay check.
const DECAY_OFFSETS: [f64; 6] = [0.5, 2.0, 5.0, 10.0, 15.0, 20.0];

#[derive(Debug, Clone, Serialize)]
pub struct TranslationSummary {
    pub n: usize,
    pub d: f64,
    pub regime: Regime,
    pub a: Option<f64>,
    pub height: f64,
    pub height_err: f64,
    pub finite_height: bool,
    pub excess: Option<f64>,
    pub curvature_decreasing: bool,
    pub final_curvature: f64,
    pub below_tol: bool,
    pub max_mean_residual: f64,
    pub max_first_integral_residual: f64,
    pub v_positive: bool,
}

pub fn summarise(n: usize, d: f64, tol: f64) -> minhyp::Result<TranslationSummary> {
    let s = TranslationSurface::new(n, d)?;
    let start = s.rho_min().max(0.0);
    let rho_list: Vec<f64> = DECAY_OFFSETS.iter().map(|o| start + o).collect();
    let report = s.curvature_decay_check(&rho_list, tol.max(1e-6))?;
    let h = s.height()?;
    Ok(TranslationSummary {
        n,
        d,
        regime: s.regime,
        a: s.a,
        height: h.value,
        height_err: h.error_estimate,
        finite_height: h.finite,
        excess: h.excess,
        curvature_decreasing: report.decreasing,
        final_curvature: report.final_sum,
        below_tol: report.below_tol,
        max_mean_residual: report.max_mean_residual,
        max_first_integral_residual: report.rows.iter().map(|r| r.first_integral_residual.abs()).fold(0.0, f64::max),
        v_positive: report.v_positive,
    })
}

pub fn run(args: &CommonArgs) -> Outcome {
    let rows = args
        .d_or(&DEFAULT_D)
        .par_iter()
        .map(|&d| summarise(args.n, d, args.tol))
        .collect::<minhyp::Result<Vec<_>>>()?;
    let text = match args.format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => Document::new("translation", args.n, &rows).to_json()?,
        Format::Svg => return Err(Failure::Usage("translation writes csv or json; use profile --family translation for figures".into())),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(())
}
