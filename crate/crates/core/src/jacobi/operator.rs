//! One spherical mode of the Jacobi operator of `C_a` as a Sturm–Liouville
//! problem with Dirichlet ends.
//!
//! On a node grid with density `D`, half-node flux `p` and potential `Q` the
//! operator is
//!
//! ```text
//! (L u)_i = -(p_{i+1/2} (u_{i+1} - u_i) - p_{i-1/2} (u_i - u_{i-1})) / (h² D_i) + Q_i u_i,
//! ```
//!
//! which becomes symmetric after conjugation by `D^{1/2}`.

use serde::Serialize;

use super::tridiag::SymTridiagonal;
use crate::catenoid::{Catenoid, ProfileSample};
use crate::error::{ensure_finite, Error, Result};
use crate::hgeom::{curvatures_rotation, jacobi_potential, metric_rotation};
use crate::ode::{Dopri5, OdeTolerance};
use crate::roots;
use crate::special::{coth, ln_sinh};

/// Zero band for eigenvalues, in units of the Richardson error.
pub const ZERO_FACTOR: f64 = 5.0;

const MIN_INTERVALS: usize = 8;

/// Eigenvalue `k(k + n - 2)` of `-Δ` on `S^{n-1}`.
pub fn sphere_eigenvalue(n: usize, k: usize) -> f64 {
    (k * (k + n - 2)) as f64
}

/// Dimension of the degree-`k` spherical harmonics on `S^{n-1}`.
pub fn sphere_multiplicity(n: usize, k: usize) -> usize {
    fn binom(top: usize, bottom: usize) -> usize {
        (0..bottom).fold(1usize, |acc, i| acc * (top - i) / (i + 1))
    }
    if k == 0 {
        return 1;
    }
    let upper = binom(k + n - 1, n - 1);
    let lower = if k >= 2 { binom(k + n - 3, n - 1) } else { 0 };
    upper - lower
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModeDomain {
    /// `D_a(alpha, beta)` on a uniform grid in `t`.
    Interval { alpha: f64, beta: f64 },
    /// `D_a(alpha, T(a))` on a uniform grid in arclength, cut off where the
    /// upper branch reaches `rho_max`.
    Tail { alpha: f64, rho_max: f64 },
}

impl ModeDomain {
    pub fn symmetric(s: f64) -> Self {
        Self::Interval { alpha: -s, beta: s }
    }
}

/// Geometry carried by a grid node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodeGeometry {
    pub t: f64,
    pub f: f64,
    pub v: f64,
    /// `∂f/∂a` where the variational equation was integrated.
    pub f_a: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperator {
    catenoid: Catenoid,
    pub domain: ModeDomain,
    pub k: usize,
    pub mu_k: f64,
    pub h: f64,
    /// Grid coordinate (`t` or arclength) of every node, ends included.
    pub coords: Vec<f64>,
    pub nodes: Vec<NodeGeometry>,
    pub density: Vec<f64>,
    /// Flux at the half nodes.
    pub flux: Vec<f64>,
    pub potential: Vec<f64>,
    /// Symmetrised interior matrix.
    pub matrix: SymTridiagonal,
}

impl ModeOperator {
    pub fn catenoid(&self) -> &Catenoid {
        &self.catenoid
    }

    pub fn intervals(&self) -> usize {
        self.coords.len() - 1
    }

    /// The same operator on a grid with half the spacing.
    pub fn refined(&self) -> Result<Self> {
        assemble_with_intervals(&self.catenoid, self.domain, self.k, 2 * self.intervals())
    }

    /// `(L u)_i` at interior node `i`.
    pub fn apply_at(&self, u: &[f64], i: usize) -> f64 {
        let h2 = self.h * self.h;
        let plus = self.flux[i] * (u[i + 1] - u[i]);
        let minus = self.flux[i - 1] * (u[i] - u[i - 1]);
        -(plus - minus) / (h2 * self.density[i]) + self.potential[i] * u[i]
    }
}

/// Discretises mode `k` of the Jacobi operator on `domain` with spacing close
/// to `h`.
pub fn assemble_mode_operator(catenoid: &Catenoid, domain: ModeDomain, k: usize, h: f64) -> Result<ModeOperator> {
    ensure_finite("h", h)?;
    if h <= 0.0 {
        return Err(Error::Domain(format!("grid spacing must be positive, got {h}")));
    }
    let length = domain_length(catenoid, domain)?;
    let intervals = ((length / h).round() as usize).max(MIN_INTERVALS);
    assemble_with_intervals(catenoid, domain, k, intervals)
}

fn domain_length(catenoid: &Catenoid, domain: ModeDomain) -> Result<f64> {
    let big_t = catenoid.half_height();
    match domain {
        ModeDomain::Interval { alpha, beta } => {
            ensure_finite("alpha", alpha)?;
            ensure_finite("beta", beta)?;
            if !(alpha < beta) {
                return Err(Error::Domain(format!("empty domain ({alpha}, {beta})")));
            }
            if alpha <= -big_t || beta >= big_t {
                return Err(Error::Domain(format!(
                    "domain ({alpha}, {beta}) reaches the ends of the catenoid at ±{big_t}; use the tail variant"
                )));
            }
            Ok(beta - alpha)
        }
        ModeDomain::Tail { alpha, rho_max } => {
            let arc = TailGeometry::new(catenoid, alpha, rho_max)?;
            Ok(arc.s_max - arc.s_start)
        }
    }
}

fn assemble_with_intervals(catenoid: &Catenoid, domain: ModeDomain, k: usize, intervals: usize) -> Result<ModeOperator> {
    let n = catenoid.n();
    let mu_k = sphere_eigenvalue(n, k);
    let (coords, h, nodes, density, flux, potential) = match domain {
        ModeDomain::Interval { alpha, beta } => {
            domain_length(catenoid, domain)?;
            interval_grid(catenoid, alpha, beta, intervals, mu_k)?
        }
        ModeDomain::Tail { alpha, rho_max } => TailGeometry::new(catenoid, alpha, rho_max)?.grid(intervals, mu_k)?,
    };
    let h2 = h * h;
    let interior = intervals - 1;
    let mut diag = Vec::with_capacity(interior);
    let mut off = Vec::with_capacity(interior.saturating_sub(1));
    for i in 1..intervals {
        diag.push((flux[i] + flux[i - 1]) / (h2 * density[i]) + potential[i]);
        if i + 1 < intervals {
            off.push(-flux[i] / (h2 * (density[i] * density[i + 1]).sqrt()));
        }
    }
    let matrix = SymTridiagonal::new(diag, off)?;
    Ok(ModeOperator { catenoid: *catenoid, domain, k, mu_k, h, coords, nodes, density, flux, potential, matrix })
}

type Grid = (Vec<f64>, f64, Vec<NodeGeometry>, Vec<f64>, Vec<f64>, Vec<f64>);

fn mode_potential(n: usize, f: f64, norm_a2: f64, v: f64, mu_k: f64) -> f64 {
    jacobi_potential(n, norm_a2, v) + mu_k / f.sinh().powi(2)
}

fn interval_grid(catenoid: &Catenoid, alpha: f64, beta: f64, intervals: usize, mu_k: f64) -> Result<Grid> {
    let n = catenoid.n();
    let h = (beta - alpha) / intervals as f64;
    let fine: Vec<f64> = (0..=2 * intervals).map(|j| alpha + 0.5 * h * j as f64).collect();
    let samples = catenoid.profile_ode(&fine)?;
    let mut coords = Vec::with_capacity(intervals + 1);
    let mut nodes = Vec::with_capacity(intervals + 1);
    let mut density = Vec::with_capacity(intervals + 1);
    let mut potential = Vec::with_capacity(intervals + 1);
    let mut flux = Vec::with_capacity(intervals);
    for (j, s) in samples.iter().enumerate() {
        let metric = metric_rotation(&s.point, n)?;
        if j % 2 == 1 {
            flux.push(metric.density / metric.g_tt);
            continue;
        }
        let c = curvatures_rotation(&s.point, n)?;
        coords.push(fine[j]);
        nodes.push(node_from_sample(s, c.v));
        density.push(metric.density);
        potential.push(mode_potential(n, s.point.f, c.norm_a2, c.v, mu_k));
    }
    Ok((coords, h, nodes, density, flux, potential))
}

fn node_from_sample(s: &ProfileSample, v: f64) -> NodeGeometry {
    NodeGeometry { t: s.point.t, f: s.point.f, v, f_a: Some(s.f_a) }
}

/// Arclength parametrisation of the catenary starting at height `alpha` and
/// running up the upper branch.
struct TailGeometry {
    n: usize,
    a: f64,
    s_start: f64,
    s_max: f64,
}

impl TailGeometry {
    fn rhs(n: usize, a: f64) -> impl Fn(f64, &[f64; 3]) -> [f64; 3] {
        let m = (n - 1) as f64;
        let ln_sa = ln_sinh(a);
        move |_s, y| {
            // y = [f, f_s, t]; 1 - f_s² = (sinh a / sinh f)^{2n-2} on the catenoid.
            let log_r = ln_sa - ln_sinh(y[0]);
            [y[1], m * coth(y[0]) * (2.0 * m * log_r).exp(), (m * log_r).exp()]
        }
    }

    fn new(catenoid: &Catenoid, alpha: f64, rho_max: f64) -> Result<Self> {
        let (n, a) = (catenoid.n(), catenoid.a());
        ensure_finite("alpha", alpha)?;
        ensure_finite("rho_max", rho_max)?;
        let big_t = catenoid.half_height();
        if alpha.abs() >= big_t {
            return Err(Error::Domain(format!("alpha = {alpha} is not inside (-{big_t}, {big_t})")));
        }
        if rho_max <= a + 1.0 {
            return Err(Error::Domain(format!("rho_max = {rho_max} is too close to the neck radius {a}")));
        }
        // Arclength from the neck to height |alpha|, integrated in t.
        let m = (n - 1) as f64;
        let by_t = move |_t: f64, y: &[f64; 3]| {
            let g = 1.0 + y[1] * y[1];
            [y[1], m * coth(y[0]) * g, g.sqrt()]
        };
        let mut y = [a, 0.0, 0.0];
        let reached = Dopri5::<3>::new(OdeTolerance::default()).advance(&by_t, 0.0, &mut y, alpha.abs(), |_, y| y[1] > 1e3)?;
        if reached < alpha.abs() {
            return Err(Error::Domain(format!("alpha = {alpha} is too close to the end of the catenoid")));
        }
        let s_start = y[2].copysign(alpha);

        let rhs = Self::rhs(n, a);
        let f_at = |s: f64| -> Result<f64> {
            let mut y = [a, 0.0, 0.0];
            Dopri5::<3>::new(OdeTolerance::default()).advance(&rhs, 0.0, &mut y, s, |_, _| false)?;
            Ok(y[0] - rho_max)
        };
        let (lo, hi) = roots::expand_bracket(f_at, 0.0, rho_max - a, 4.0 * rho_max + 10.0)?;
        let s_max = roots::brent(f_at, lo, hi, 1e-10)?;
        Ok(Self { n, a, s_start, s_max })
    }

    fn grid(&self, intervals: usize, mu_k: f64) -> Result<Grid> {
        let (n, a) = (self.n, self.a);
        let h = (self.s_max - self.s_start) / intervals as f64;
        let fine: Vec<f64> = (0..=2 * intervals).map(|j| self.s_start + 0.5 * h * j as f64).collect();
        let mut order: Vec<usize> = (0..fine.len()).collect();
        order.sort_by(|&i, &j| fine[i].abs().total_cmp(&fine[j].abs()));
        let rhs = Self::rhs(n, a);
        let mut solver = Dopri5::<3>::new(OdeTolerance::default());
        let mut y = [a, 0.0, 0.0];
        let mut s_now = 0.0;
        let mut states = vec![[0.0; 3]; fine.len()];
        for &i in &order {
            s_now = solver.advance(&rhs, s_now, &mut y, fine[i].abs(), |_, _| false)?;
            let sign = if fine[i] < 0.0 { -1.0 } else { 1.0 };
            states[i] = [y[0], sign * y[1], sign * y[2]];
        }
        let m = (n - 1) as f64;
        let nf = n as f64;
        let ln_sa = ln_sinh(a);
        let mut coords = Vec::with_capacity(intervals + 1);
        let mut nodes = Vec::with_capacity(intervals + 1);
        let mut density = Vec::with_capacity(intervals + 1);
        let mut potential = Vec::with_capacity(intervals + 1);
        let mut flux = Vec::with_capacity(intervals);
        for (j, st) in states.iter().enumerate() {
            let (f, v, t) = (st[0], st[1], st[2]);
            let log_r = ln_sa - ln_sinh(f);
            let d = (-m * log_r).exp();
            if j % 2 == 1 {
                flux.push(d);
                continue;
            }
            let norm_a2 = nf * m * coth(f).powi(2) * (2.0 * m * log_r).exp();
            coords.push(fine[j]);
            nodes.push(NodeGeometry { t, f, v, f_a: None });
            density.push(d);
            potential.push(mode_potential(n, f, norm_a2, v, mu_k));
        }
        Ok((coords, h, nodes, density, flux, potential))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    /// Lowest eigenvalues on the finer grid.
    pub eigenvalues: Vec<f64>,
    pub coarse_eigenvalues: Vec<f64>,
    pub richardson: Vec<f64>,
    pub richardson_errors: Vec<f64>,
    pub negative_count: usize,
    pub h_used: f64,
    /// Extrapolated lowest eigenvalue.
    pub richardson_estimate: f64,
    /// Whether the lowest eigenvalue is zero within the band.
    pub zero_mode: bool,
}

/// Lowest `m` eigenvalues of `op` and of its refinement, with Richardson
/// extrapolation and the inertia below the zero band.
pub fn eigen_bottom(op: &ModeOperator, m: usize) -> Result<SpectralResult> {
    if m == 0 {
        return Err(Error::Domain("at least one eigenvalue must be requested".into()));
    }
    let fine = op.refined()?;
    let coarse_vals = op.matrix.lowest(m)?;
    let fine_vals = fine.matrix.lowest(m)?;
    let count = coarse_vals.len().min(fine_vals.len());
    let mut richardson = Vec::with_capacity(count);
    let mut errors = Vec::with_capacity(count);
    let mut band: f64 = 0.0;
    for j in 0..count {
        let r = (4.0 * fine_vals[j] - coarse_vals[j]) / 3.0;
        let err = (fine_vals[j] - coarse_vals[j]).abs() / 3.0;
        if r.abs() < ZERO_FACTOR * err {
            band = band.max(ZERO_FACTOR * err);
        }
        richardson.push(r);
        errors.push(err);
    }
    let negative_count = fine.matrix.count_below(-band);
    let zero_mode = richardson[0].abs() < ZERO_FACTOR * errors[0];
    Ok(SpectralResult {
        richardson_estimate: richardson[0],
        eigenvalues: fine_vals,
        coarse_eigenvalues: coarse_vals,
        richardson,
        richardson_errors: errors,
        negative_count,
        h_used: fine.h,
        zero_mode,
    })
}

/// Max-norm of the discrete operator applied to `field` over the interior,
/// skipping two nodes at each end.
pub fn jacobi_residual(field: &[f64], op: &ModeOperator) -> Result<f64> {
    let nodes = op.coords.len();
    if field.len() != nodes {
        return Err(Error::GridMismatch(format!("field has {} samples, operator has {nodes} nodes", field.len())));
    }
    let mut worst: f64 = 0.0;
    for i in 2..nodes - 2 {
        worst = worst.max(op.apply_at(field, i).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_data() {
        assert_eq!(sphere_eigenvalue(2, 1), 1.0);
        assert_eq!(sphere_eigenvalue(3, 1), 2.0);
        assert_eq!(sphere_eigenvalue(4, 2), 8.0);
        assert_eq!(sphere_multiplicity(2, 0), 1);
        assert_eq!(sphere_multiplicity(2, 3), 2);
        assert_eq!(sphere_multiplicity(3, 2), 5);
        assert_eq!(sphere_multiplicity(4, 1), 4);
    }

    #[test]
    fn neck_potential_mode_zero() {
        let c = Catenoid::new(2, 1.0).unwrap();
        let op = assemble_mode_operator(&c, ModeDomain::symmetric(0.5), 0, 0.05).unwrap();
        let mid = op.coords.len() / 2;
        assert_eq!(op.coords[mid], 0.0);
        let expected = 1.0 - 2.0 * coth(1.0).powi(2);
        assert!((op.potential[mid] - expected).abs() < 1e-12);
    }

    #[test]
    fn flux_is_constant_on_catenoid() {
        let c = Catenoid::new(3, 0.7).unwrap();
        let op = assemble_mode_operator(&c, ModeDomain::symmetric(0.4), 0, 0.02).unwrap();
        let p0 = 0.7f64.sinh().powi(2);
        assert!(op.flux.iter().all(|p| (p - p0).abs() < 1e-10 * p0));
    }

    #[test]
    fn domains_reaching_the_end_are_rejected() {
        let c = Catenoid::new(2, 1.0).unwrap();
        let t = c.half_height();
        assert!(assemble_mode_operator(&c, ModeDomain::Interval { alpha: -0.5, beta: t }, 0, 0.01).is_err());
        assert!(assemble_mode_operator(&c, ModeDomain::Interval { alpha: 0.5, beta: 0.5 }, 0, 0.01).is_err());
        assert!(assemble_mode_operator(&c, ModeDomain::symmetric(0.5), 0, 0.0).is_err());
    }

    #[test]
    fn residual_rejects_grid_mismatch() {
        let c = Catenoid::new(2, 1.0).unwrap();
        let op = assemble_mode_operator(&c, ModeDomain::symmetric(0.5), 0, 0.05).unwrap();
        assert!(matches!(jacobi_residual(&[0.0; 3], &op), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn tail_grid_reaches_rho_max() {
        let c = Catenoid::new(2, 1.0).unwrap();
        let op = assemble_mode_operator(&c, ModeDomain::Tail { alpha: -0.3, rho_max: 12.0 }, 0, 0.02).unwrap();
        let first = op.nodes.first().unwrap();
        let last = op.nodes.last().unwrap();
        assert!((first.t + 0.3).abs() < 1e-9, "{first:?}");
        assert!((last.f - 12.0).abs() < 1e-8, "{last:?}");
        assert!(op.flux.iter().zip(op.density.iter()).all(|(p, d)| p.is_finite() && *d > 0.0));
    }
}
