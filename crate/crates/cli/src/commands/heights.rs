use std::f64::consts::PI;

use minhyp::catenoid::height_quad;
use minhyp::transinv::TranslationSurface;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{CommonArgs, Family, Format};
use crate::output::{emit, to_csv, Document, Failure, Outcome};

pub const DEFAULT_A: [f64; 7] = [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0];
pub const DEFAULT_D: [f64; 6] = [1.001, 1.1, 1.5, 2.0, 10.0, 1e6];

#[derive(Debug, Clone, Serialize)]
pub struct HeightRow {
    pub family: &'static str,
    pub n: usize,
    pub parameter: &'static str,
    pub value: f64,
    pub height: f64,
    pub height_err: f64,
    pub tail_bound: f64,
    pub bound: f64,
    /// `h_R < π/(n-1)` for catenoids, `h_T > π/(n-1)` for bigraphs.
    pub ordered: bool,
    /// Against the previous row of the same family: increasing in `a`,
    /// decreasing in `d`.
    pub monotone: bool,
}

pub fn rows(args: &CommonArgs) -> Outcome<Vec<HeightRow>> {
    let n = args.n;
    let bound = PI / (n - 1) as f64;
    let mut out = Vec::new();
    let want = |f: Family| args.family.map_or(true, |g| g == f);

    if want(Family::Catenoid) {
        let mut a_list = args.a_or(&DEFAULT_A);
        a_list.sort_by(f64::total_cmp);
        let h = a_list.par_iter().map(|&a| height_quad(n, a)).collect::<minhyp::Result<Vec<_>>>()?;
        for (i, (&a, q)) in a_list.iter().zip(&h).enumerate() {
            out.push(HeightRow {
                family: "catenoid",
                n,
                parameter: "a",
                value: a,
                height: q.value,
                height_err: q.error_estimate,
                tail_bound: q.tail_bound,
                bound,
                ordered: q.value < bound,
                monotone: i == 0 || q.value > h[i - 1].value,
            });
        }
    }
    if want(Family::Translation) {
        let mut d_list = args.d_or(&DEFAULT_D);
        d_list.sort_by(f64::total_cmp);
        if let Some(d) = d_list.iter().find(|&&d| d <= 1.0) {
            return Err(Failure::Usage(format!("h_T needs d > 1, got {d}")));
        }
        let h = d_list
            .par_iter()
            .map(|&d| TranslationSurface::new(n, d)?.height())
            .collect::<minhyp::Result<Vec<_>>>()?;
        for (i, (&d, q)) in d_list.iter().zip(&h).enumerate() {
            let gap = q.excess.unwrap_or(q.value - bound);
            out.push(HeightRow {
                family: "translation",
                n,
                parameter: "d",
                value: d,
                height: q.value,
                height_err: q.error_estimate,
                tail_bound: q.tail_bound,
                bound,
                ordered: gap > 0.0,
                monotone: i == 0 || gap < h[i - 1].excess.unwrap_or(h[i - 1].value - bound),
            });
        }
    }
    Ok(out)
}

pub fn run(args: &CommonArgs) -> Outcome {
    let rows = rows(args)?;
    let text = match args.format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => Document::new("heights", args.n, &rows).to_json()?,
        Format::Svg => return Err(Failure::Usage("heights writes csv or json".into())),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(())
}
