use minhyp::catenoid::Catenoid;
use minhyp::transinv::TranslationSurface;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{CommonArgs, Family, Format};
use crate::output::{emit, log_slope, to_csv, Document, Failure, Outcome};

pub const DEFAULT_A: [f64; 3] = [0.5, 1.0, 2.0];
pub const DEFAULT_D: [f64; 3] = [0.5, 1.0, 2.0];
pub const RHO_MAX: [f64; 3] = [10.0, 20.0, 30.0];

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureRow {
    pub family: &'static str,
    pub n: usize,
    pub parameter: &'static str,
    pub value: f64,
    /// `∫|A|^n dμ` without the sphere factor (catenoids only).
    pub total_extrinsic: Option<f64>,
    pub total_extrinsic_err: Option<f64>,
    pub tail_bound: Option<f64>,
    /// `∫|K| dμ` up to 10, 20 and 30 (`n = 2`).
    pub k_10: Option<f64>,
    pub k_10_err: Option<f64>,
    pub k_20: Option<f64>,
    pub k_20_err: Option<f64>,
    pub k_30: Option<f64>,
    pub k_30_err: Option<f64>,
    /// Fitted exponential growth rate of the partial integrals.
    pub growth_rate: Option<f64>,
}

fn partials<F>(row: &mut CurvatureRow, f: F) -> minhyp::Result<()>
where
    F: Fn(f64) -> minhyp::Result<minhyp::quad::QuadratureResult>,
{
    let q = RHO_MAX.iter().map(|&r| f(r)).collect::<minhyp::Result<Vec<_>>>()?;
    (row.k_10, row.k_10_err) = (Some(q[0].value), Some(q[0].error_estimate));
    (row.k_20, row.k_20_err) = (Some(q[1].value), Some(q[1].error_estimate));
    (row.k_30, row.k_30_err) = (Some(q[2].value), Some(q[2].error_estimate));
    let values: Vec<f64> = q.iter().map(|r| r.value).collect();
    row.growth_rate = Some(log_slope(&RHO_MAX, &values));
    Ok(())
}

fn empty(family: &'static str, n: usize, parameter: &'static str, value: f64) -> CurvatureRow {
    CurvatureRow {
        family,
        n,
        parameter,
        value,
        total_extrinsic: None,
        total_extrinsic_err: None,
        tail_bound: None,
        k_10: None,
        k_10_err: None,
        k_20: None,
        k_20_err: None,
        k_30: None,
        k_30_err: None,
        growth_rate: None,
    }
}

pub fn rows(args: &CommonArgs) -> minhyp::Result<Vec<CurvatureRow>> {
    let n = args.n;
    let want = |f: Family| args.family.map_or(true, |g| g == f);
    let mut out = Vec::new();
    if want(Family::Catenoid) {
        let cat = args
            .a_or(&DEFAULT_A)
            .par_iter()
            .map(|&a| {
                let c = Catenoid::new(n, a)?;
                let mut row = empty("catenoid", n, "a", a);
                let t = c.total_extrinsic_curvature(false)?;
                (row.total_extrinsic, row.total_extrinsic_err, row.tail_bound) = (Some(t.value), Some(t.error_estimate), Some(t.tail_bound));
                if n == 2 {
                    partials(&mut row, |r| c.intrinsic_curvature_partial(r))?;
                }
                Ok(row)
            })
            .collect::<minhyp::Result<Vec<_>>>()?;
        out.extend(cat);
    }
    if want(Family::Translation) && n == 2 {
        let tr = args
            .d_or(&DEFAULT_D)
            .par_iter()
            .map(|&d| {
                let s = TranslationSurface::new(n, d)?;
                let mut row = empty("translation", n, "d", d);
                partials(&mut row, |r| s.total_curvature_partial(r))?;
                Ok(row)
            })
            .collect::<minhyp::Result<Vec<_>>>()?;
        out.extend(tr);
    }
    Ok(out)
}

pub fn run(args: &CommonArgs) -> Outcome {
    let rows = rows(args)?;
    let text = match args.format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => Document::new("curvature", args.n, &rows).to_json()?,
        Format::Svg => return Err(Failure::Usage("curvature writes csv or json".into())),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(())
}
