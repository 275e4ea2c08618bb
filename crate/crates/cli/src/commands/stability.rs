use minhyp::catenoid::Catenoid;
use minhyp::jacobi::{assemble_mode_operator, certify_index, eigen_bottom, IndexReport, JacobiAnalysis, ModeDomain, StabilityThresholds};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{CommonArgs, Format};
use crate::output::{emit, to_csv, Document, Failure, Outcome};

pub const DEFAULT_A: [f64; 1] = [1.0];
pub const DEFAULT_MESH: [f64; 2] = [1e-2, 5e-3];

/// Fractions of `T(a)` at which `β(α)` is sampled.
const ALPHA_FRACTIONS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

#[derive(Debug, Clone, Serialize)]
pub struct BetaSample {
    pub alpha: f64,
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub h: f64,
    pub lambda_coarse: f64,
    pub lambda_fine: f64,
    pub richardson: f64,
    pub richardson_err: f64,
    pub zero_mode: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityEntry {
    pub a: f64,
    pub half_height: f64,
    pub thresholds: StabilityThresholds,
    pub beta: Vec<BetaSample>,
    /// `λ₁` of mode 0 on `(-σ, σ)` for each mesh.
    pub convergence: Vec<ConvergenceRow>,
    pub report: IndexReport,
    pub verdict: String,
}

#[derive(Debug, Clone, Serialize)]
struct ModeRow {
    a: f64,
    s: f64,
    h: f64,
    k: usize,
    mu_k: f64,
    multiplicity: usize,
    lambda1: f64,
    lambda2: Option<f64>,
    richardson: f64,
    richardson_err: f64,
    zero_mode: bool,
    negative_count: usize,
    expected_count: usize,
    pass: bool,
}

pub fn analyse(n: usize, a: f64, meshes: &[f64], k_max: usize) -> minhyp::Result<StabilityEntry> {
    let c = Catenoid::new(n, a)?;
    let j = JacobiAnalysis::new(&c)?;
    let th = j.thresholds;
    let big_t = c.half_height();
    let beta = ALPHA_FRACTIONS
        .iter()
        .map(|&f| Ok(BetaSample { alpha: f * big_t, beta: j.beta(f * big_t)? }))
        .collect::<minhyp::Result<Vec<_>>>()?;
    let convergence = meshes
        .iter()
        .map(|&h| {
            let op = assemble_mode_operator(&c, ModeDomain::symmetric(th.sigma), 0, h)?;
            let r = eigen_bottom(&op, 1)?;
            Ok(ConvergenceRow {
                h,
                lambda_coarse: r.coarse_eigenvalues[0],
                lambda_fine: r.eigenvalues[0],
                richardson: r.richardson[0],
                richardson_err: r.richardson_errors[0],
                zero_mode: r.zero_mode,
            })
        })
        .collect::<minhyp::Result<Vec<_>>>()?;
    let s_list = [0.5 * th.sigma, th.sigma, 0.5 * (th.sigma + big_t), 0.95 * big_t];
    let report = certify_index(&c, &s_list, meshes, k_max)?;
    let verdict = if report.certified { format!("index={}", report.index) } else { "uncertified".to_string() };
    Ok(StabilityEntry { a, half_height: big_t, thresholds: th, beta, convergence, report, verdict })
}

pub fn run(args: &CommonArgs) -> Outcome {
    let meshes = args.mesh_or(&DEFAULT_MESH);
    let entries = args
        .a_or(&DEFAULT_A)
        .par_iter()
        .map(|&a| analyse(args.n, a, &meshes, args.k_max))
        .collect::<minhyp::Result<Vec<_>>>()?;
    let text = match args.format {
        Format::Json => Document::new("stability", args.n, &entries).to_json()?,
        Format::Csv => {
            let rows: Vec<ModeRow> = entries
                .iter()
                .flat_map(|e| {
                    e.report.entries.iter().map(move |m| ModeRow {
                        a: e.a,
                        s: m.s,
                        h: m.h,
                        k: m.k,
                        mu_k: m.mu_k,
                        multiplicity: m.multiplicity,
                        lambda1: m.eigenvalues[0],
                        lambda2: m.eigenvalues.get(1).copied(),
                        richardson: m.richardson_estimate,
                        richardson_err: m.richardson_error,
                        zero_mode: m.zero_mode,
                        negative_count: m.negative_count,
                        expected_count: m.expected_count,
                        pass: m.pass,
                    })
                })
                .collect();
            to_csv(&rows)?
        }
        Format::Svg => return Err(Failure::Usage("stability writes csv or json".into())),
    };
    emit(args.out.as_deref(), &text)?;
    let failed: Vec<String> = entries.iter().filter(|e| !e.report.certified).map(|e| format!("a = {}", e.a)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Certification(format!("index not certified for {}", failed.join(", "))))
    }
}
