use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

pub const SCHEMA: u32 = 1;

/// Why a run stopped; mapped onto the exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numeric(anyhow::Error),
    Certification(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 1,
            Self::Numeric(_) => 2,
            Self::Certification(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "usage error: {m}"),
            Self::Numeric(e) => write!(f, "numeric failure: {e:#}"),
            Self::Certification(m) => write!(f, "certification failure: {m}"),
        }
    }
}

impl From<minhyp::Error> for Failure {
    fn from(e: minhyp::Error) -> Self {
        Self::Numeric(e.into())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Self::Numeric(e)
    }
}

pub type Outcome<T = ()> = std::result::Result<T, Failure>;

/// Top-level JSON document.
#[derive(Debug, Serialize)]
pub struct Document<'a, T: Serialize> {
    pub schema: u32,
    pub command: &'a str,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<&'a str>,
    pub results: T,
}

impl<'a, T: Serialize> Document<'a, T> {
    pub fn new(command: &'a str, n: usize, results: T) -> Self {
        Self { schema: SCHEMA, command, n, family: None, regime: None, results }
    }

    pub fn with_family(mut self, family: &'a str) -> Self {
        self.family = Some(family);
        self
    }

    pub fn with_regime(mut self, regime: &'a str) -> Self {
        self.regime = Some(regime);
        self
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| anyhow::anyhow!("csv buffer: {e}"))?;
    Ok(String::from_utf8(bytes)?)
}

/// Writes to `out` when given, otherwise to stdout.
pub fn emit(out: Option<&Path>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
            }
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes()).context("writing to stdout")
        }
    }
}

/// Output directory for multi-file commands.
pub fn out_dir(out: Option<&Path>) -> anyhow::Result<PathBuf> {
    let dir = out.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("minhyp-out"));
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok(dir)
}

pub fn write_file(dir: &Path, name: &str, content: &str) -> anyhow::Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// File-name-safe rendering of a parameter value.
pub fn param_tag(x: f64) -> String {
    format!("{x}").replace('-', "m")
}

/// Least-squares slope of `ln y` against `x`.
pub fn log_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = x.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = x.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let den: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exponential() {
        let x = [10.0, 20.0, 30.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * (0.7 * v).exp()).collect();
        assert!((log_slope(&x, &y) - 0.7).abs() < 1e-12);
    }

    #[test]
    fn tags_are_stable() {
        assert_eq!(param_tag(0.5), "0.5");
        assert_eq!(param_tag(1.0), "1");
        assert_eq!(param_tag(2.0), "2");
    }

    #[test]
    fn csv_round_trips_floats() {
        #[derive(Serialize)]
        struct R {
            x: f64,
        }
        let s = to_csv(&[R { x: 0.1 + 0.2 }]).unwrap();
        let v: f64 = s.lines().nth(1).unwrap().parse().unwrap();
        assert_eq!(v, 0.1 + 0.2);
    }
}
