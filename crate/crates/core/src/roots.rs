//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Brent's method on a sign-changing bracket `[lo, hi]`, stopping once the
/// bracket is narrower than `xtol` (plus a relative round-off allowance).
pub fn brent<F>(mut f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo, hi, f_lo: fa, f_hi: fb });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Err(Error::Accuracy { best: b, error_estimate: (c - b).abs() })
}

/// Grows `hi` geometrically from `lo` until `f` changes sign, returning the
/// bracket. `step` is the first increment.
pub fn expand_bracket<F>(mut f: F, lo: f64, step: f64, limit: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let f_lo = f(lo)?;
    let mut prev = lo;
    let mut width = step;
    loop {
        let hi = (lo + width).min(limit);
        let f_hi = f(hi)?;
        if f_hi.signum() != f_lo.signum() || f_hi == 0.0 {
            return Ok((prev, hi));
        }
        if hi >= limit {
            return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
        }
        prev = hi;
        width *= 2.0;
    }
}

/// Indices `i` where `values[i]` and `values[i + 1]` have strictly opposite
/// signs (zeros count as a change into the next sign).
pub fn sign_changes(values: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut last: Option<(usize, f64)> = None;
    for (i, &y) in values.iter().enumerate() {
        if y == 0.0 {
            continue;
        }
        if let Some((j, s)) = last {
            if s != y.signum() {
                out.push(j.max(i.saturating_sub(1)));
            }
        }
        last = Some((i, y.signum()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = brent(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn handles_flat_then_steep() {
        let r = brent(|x: f64| Ok((x - 0.3).powi(3)), -1.0, 1.0, 1e-12).unwrap();
        assert!((r - 0.3).abs() < 1e-6);
    }

    #[test]
    fn rejects_missing_sign_change() {
        assert!(matches!(brent(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-12), Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn expands_until_sign_change() {
        let (lo, hi) = expand_bracket(|x| Ok(x - 13.5), 0.0, 1.0, 100.0).unwrap();
        assert!(lo < 13.5 && 13.5 <= hi);
        assert!(expand_bracket(|x| Ok(x - 500.0), 0.0, 1.0, 100.0).is_err());
    }

    #[test]
    fn counts_sign_changes() {
        assert_eq!(sign_changes(&[-1.0, -0.5, 0.2, 0.3]), vec![1]);
        assert_eq!(sign_changes(&[-1.0, 0.0, 1.0, -1.0]), vec![1, 2]);
        assert!(sign_changes(&[1.0, 2.0]).is_empty());
    }
}
