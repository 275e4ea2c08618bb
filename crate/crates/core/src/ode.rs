//! Dormand–Prince 5(4) integrator with adaptive steps for small autonomous
//! systems.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeTolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for OdeTolerance {
    fn default() -> Self {
        Self { rel: 1e-13, abs: 1e-13 }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<const N: usize>(y: &[f64; N], terms: &[(f64, &[f64; N])], h: f64) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// Adaptive integrator state; reuse it across consecutive output points so
/// the step size carries over.
#[derive(Debug, Clone)]
pub struct Dopri5<const N: usize> {
    pub tol: OdeTolerance,
    pub max_steps: usize,
    step: f64,
    pub steps_taken: usize,
}

impl<const N: usize> Dopri5<N> {
    pub fn new(tol: OdeTolerance) -> Self {
        Self { tol, max_steps: 200_000, step: 0.0, steps_taken: 0 }
    }

    /// Advances `y` from `t0` to `t1` (either direction). `abort` is checked
    /// after each accepted step and stops the march early, returning the
    /// reached time.
    pub fn advance<F, S>(&mut self, rhs: &F, t0: f64, y: &mut [f64; N], t1: f64, mut abort: S) -> Result<f64>
    where
        F: Fn(f64, &[f64; N]) -> [f64; N],
        S: FnMut(f64, &[f64; N]) -> bool,
    {
        let span = t1 - t0;
        if span == 0.0 {
            return Ok(t0);
        }
        let dir = span.signum();
        let mut t = t0;
        if self.step == 0.0 {
            self.step = (1e-3 * span.abs()).max(1e-8);
        }
        let mut k1 = rhs(t, y);
        let mut local_steps = 0usize;
        while (t1 - t) * dir > 0.0 {
            if local_steps > self.max_steps {
                return Err(Error::Accuracy { best: t, error_estimate: (t1 - t).abs() });
            }
            let remaining = (t1 - t).abs();
            let mut h = self.step.min(remaining);
            let last = h >= remaining;
            if last {
                h = remaining;
            }
            let hs = h * dir;
            let k2 = rhs(t + C2 * hs, &axpy(y, &[(A21, &k1)], hs));
            let k3 = rhs(t + C3 * hs, &axpy(y, &[(A31, &k1), (A32, &k2)], hs));
            let k4 = rhs(t + C4 * hs, &axpy(y, &[(A41, &k1), (A42, &k2), (A43, &k3)], hs));
            let k5 = rhs(t + C5 * hs, &axpy(y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], hs));
            let k6 = rhs(t + hs, &axpy(y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], hs));
            let y_new = axpy(y, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], hs);
            let k7 = rhs(t + hs, &y_new);

            let mut err = 0.0;
            let mut finite = true;
            for i in 0..N {
                let e = hs * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = self.tol.abs + self.tol.rel * y[i].abs().max(y_new[i].abs());
                err += (e / scale).powi(2);
                finite &= y_new[i].is_finite();
            }
            let err = (err / N as f64).sqrt();
            if !finite || !err.is_finite() {
                self.step = 0.25 * h;
                if self.step < 1e-14 * (1.0 + t.abs()) {
                    return Err(Error::Domain(format!("solution ceased to be finite near t = {t}")));
                }
                continue;
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if err <= 1.0 {
                t = if last { t1 } else { t + hs };
                *y = y_new;
                k1 = k7;
                self.steps_taken += 1;
                local_steps += 1;
                if !last || factor < 1.0 {
                    self.step = h * factor;
                }
                if abort(t, y) {
                    return Ok(t);
                }
            } else {
                self.step = h * factor.min(1.0);
                if self.step < 1e-14 * (1.0 + t.abs()) {
                    return Err(Error::Accuracy { best: t, error_estimate: err });
                }
            }
        }
        Ok(t1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_period() {
        let rhs = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let mut y = [1.0, 0.0];
        let mut solver = Dopri5::new(OdeTolerance::default());
        let t = solver.advance(&rhs, 0.0, &mut y, 2.0 * std::f64::consts::PI, |_, _| false).unwrap();
        assert!((t - 2.0 * std::f64::consts::PI).abs() < 1e-15);
        assert!((y[0] - 1.0).abs() < 1e-11 && y[1].abs() < 1e-11, "{y:?}");
    }

    #[test]
    fn integrates_backwards() {
        let rhs = |_t: f64, y: &[f64; 1]| [y[0]];
        let mut y = [1.0];
        Dopri5::new(OdeTolerance::default()).advance(&rhs, 0.0, &mut y, -1.0, |_, _| false).unwrap();
        assert!((y[0] - (-1.0f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn abort_predicate_stops_early() {
        let rhs = |_t: f64, _y: &[f64; 1]| [1.0];
        let mut y = [0.0];
        let t = Dopri5::new(OdeTolerance::default()).advance(&rhs, 0.0, &mut y, 10.0, |_, y| y[0] > 3.0).unwrap();
        assert!(t > 3.0 && t < 10.0);
    }

    #[test]
    fn blow_up_is_reported() {
        // y' = y^2, y(0) = 1 blows up at t = 1.
        let rhs = |_t: f64, y: &[f64; 1]| [y[0] * y[0]];
        let mut y = [1.0];
        assert!(Dopri5::new(OdeTolerance::default()).advance(&rhs, 0.0, &mut y, 2.0, |_, _| false).is_err());
    }
}
