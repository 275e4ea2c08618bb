use std::path::PathBuf;

use minhyp::catenoid::Catenoid;
use minhyp::jacobi::JacobiAnalysis;
use rayon::prelude::*;
use serde::Serialize;

use super::profile::{catenary_curve, catenary_plot};
use crate::args::{CommonArgs, Format};
use crate::output::{out_dir, to_csv, write_file, Document, Outcome};
use crate::svg::Series;

pub const DEFAULT_A: [f64; 8] = [0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0];

/// Catenaries drawn under the envelope.
const OVERLAY_A: [f64; 4] = [0.25, 0.5, 1.0, 2.0];

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeRow {
    pub a: f64,
    pub half_height: f64,
    pub half_height_err: f64,
    pub tau: f64,
    /// Zero of the Jacobi field `e`.
    pub sigma: f64,
    /// Zero of the envelope determinant.
    pub sigma_envelope: f64,
    pub sigma_gap: f64,
    pub rho_sigma: f64,
    /// `tanh(ρ(σ)/2)`.
    pub x: f64,
    /// `σ` and `x` both increase from the previous row.
    pub monotone: bool,
}

pub fn rows(n: usize, a_list: &[f64]) -> minhyp::Result<Vec<EnvelopeRow>> {
    let mut a_list = a_list.to_vec();
    a_list.sort_by(f64::total_cmp);
    let mut rows = a_list
        .par_iter()
        .map(|&a| {
            let c = Catenoid::new(n, a)?;
            let j = JacobiAnalysis::new(&c)?;
            let env = j.envelope()?;
            let th = j.thresholds;
            Ok(EnvelopeRow {
                a,
                half_height: c.half_height(),
                half_height_err: c.half_height_result().error_estimate,
                tau: th.tau,
                sigma: th.sigma,
                sigma_envelope: env.sigma,
                sigma_gap: (th.sigma - env.sigma).abs(),
                rho_sigma: th.rho_sigma,
                x: (0.5 * th.rho_sigma).tanh(),
                monotone: true,
            })
        })
        .collect::<minhyp::Result<Vec<_>>>()?;
    for i in 1..rows.len() {
        rows[i].monotone = rows[i].sigma > rows[i - 1].sigma && rows[i].x > rows[i - 1].x;
    }
    Ok(rows)
}

pub fn run(args: &CommonArgs) -> Outcome<Vec<PathBuf>> {
    let n = args.n;
    let rows = rows(n, &args.a_or(&DEFAULT_A))?;
    let curves = OVERLAY_A.par_iter().map(|&a| Ok((a, catenary_curve(n, a)?))).collect::<minhyp::Result<Vec<_>>>()?;

    let mut plot = catenary_plot(&format!("Catenaries and envelope, n = {n}"), n);
    for (a, curve) in curves {
        plot.series.push(Series { label: format!("a = {a}"), points: curve, dashed: false });
    }
    let mut locus: Vec<(f64, f64)> = rows.iter().rev().map(|r| (r.x, -r.sigma)).collect();
    locus.extend(rows.iter().map(|r| (r.x, r.sigma)));
    plot.series.push(Series { label: "envelope".into(), points: locus, dashed: true });

    let dir = out_dir(args.out.as_deref())?;
    let table = match args.format {
        Format::Json => write_file(&dir, &format!("envelope_n{n}.json"), &Document::new("envelope", n, &rows).to_json()?)?,
        _ => write_file(&dir, &format!("envelope_n{n}.csv"), &to_csv(&rows)?)?,
    };
    let svg = write_file(&dir, &format!("envelope_n{n}.svg"), &plot.render())?;
    Ok(vec![table, svg])
}
