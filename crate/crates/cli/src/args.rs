use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "minhyp", version, about = "Catenoids and translation-invariant minimal hypersurfaces in H^n x R")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample generating curves to CSV/JSON, with an SVG of the family.
    Profile(CommonArgs),
    /// Tabulate h_R(a) and h_T(d) against pi/(n-1).
    Heights(CommonArgs),
    /// Sweep sigma(a) and the envelope of the catenaries.
    Envelope(CommonArgs),
    /// Stability thresholds, mode spectra and the index verdict.
    Stability(CommonArgs),
    /// Total curvature integrals and their growth.
    Curvature(CommonArgs),
    /// Regimes, heights and curvature decay of the translation family.
    Translation(CommonArgs),
    /// Run the invariant suite; nonzero exit on any failure.
    Check(CommonArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Profile(_) => "profile",
            Self::Heights(_) => "heights",
            Self::Envelope(_) => "envelope",
            Self::Stability(_) => "stability",
            Self::Curvature(_) => "curvature",
            Self::Translation(_) => "translation",
            Self::Check(_) => "check",
        }
    }

    pub fn args(&self) -> &CommonArgs {
        match self {
            Self::Profile(a)
            | Self::Heights(a)
            | Self::Envelope(a)
            | Self::Stability(a)
            | Self::Curvature(a)
            | Self::Translation(a)
            | Self::Check(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Catenoid,
    Translation,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Dimension of the hypersurface (ambient H^n x R).
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Neck radii, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<f64>,
    /// First-integral constants of the translation family, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub d: Vec<f64>,
    /// Mesh sizes for the mode operators, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub mesh: Vec<f64>,
    /// Tolerance for pass/fail decisions.
    #[arg(long, default_value_t = 1e-8, allow_hyphen_values = true)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (tables) or directory (profile, envelope). Tables go to
    /// stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Samples per generating curve.
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    /// Highest sphere mode certified by `stability`.
    #[arg(long, default_value_t = 5)]
    pub k_max: usize,
    /// Offset added to f before the first-integral check (sensitivity canary).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub perturb: f64,
}

impl CommonArgs {
    pub fn validate(&self) -> Result<(), String> {
        if self.n < 2 {
            return Err(format!("--n must be at least 2, got {}", self.n));
        }
        if let Some(a) = self.a.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
            return Err(format!("--a values must be positive, got {a}"));
        }
        if let Some(d) = self.d.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
            return Err(format!("--d values must be positive, got {d}"));
        }
        if let Some(h) = self.mesh.iter().find(|h| !(h.is_finite() && **h > 0.0 && **h < 1.0)) {
            return Err(format!("--mesh values must lie in (0, 1), got {h}"));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(format!("--tol must be positive, got {}", self.tol));
        }
        if self.samples < 3 {
            return Err(format!("--samples must be at least 3, got {}", self.samples));
        }
        if !self.perturb.is_finite() {
            return Err("--perturb must be finite".into());
        }
        Ok(())
    }

    pub fn a_or(&self, default: &[f64]) -> Vec<f64> {
        if self.a.is_empty() {
            default.to_vec()
        } else {
            self.a.clone()
        }
    }

    pub fn d_or(&self, default: &[f64]) -> Vec<f64> {
        if self.d.is_empty() {
            default.to_vec()
        } else {
            self.d.clone()
        }
    }

    pub fn mesh_or(&self, default: &[f64]) -> Vec<f64> {
        if self.mesh.is_empty() {
            default.to_vec()
        } else {
            self.mesh.clone()
        }
    }
}
