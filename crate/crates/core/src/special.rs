//! Hyperbolic-function helpers that stay accurate where the naive forms
//! cancel or overflow.

use std::f64::consts::{LN_2, PI};

/// `ln(sinh x)` for `x > 0`, without overflow for large `x`.
pub fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// `ln(cosh x)`, without overflow for large `|x|`.
pub fn ln_cosh(x: f64) -> f64 {
    let x = x.abs();
    if x > 20.0 {
        x - LN_2 + (-2.0 * x).exp().ln_1p()
    } else {
        x.cosh().ln()
    }
}

pub fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// `sinh(a) / sinh(b)` for positive arguments.
pub fn sinh_ratio(a: f64, b: f64) -> f64 {
    if a.max(b) > 20.0 {
        (ln_sinh(a) - ln_sinh(b)).exp()
    } else {
        a.sinh() / b.sinh()
    }
}

/// `cosh(a) / cosh(b)`.
pub fn cosh_ratio(a: f64, b: f64) -> f64 {
    if a.abs().max(b.abs()) > 20.0 {
        (ln_cosh(a) - ln_cosh(b)).exp()
    } else {
        a.cosh() / b.cosh()
    }
}

/// `sinh(u) - sinh(a)` given `delta = u - a` exactly.
pub fn sinh_diff(a: f64, delta: f64) -> f64 {
    2.0 * (a + 0.5 * delta).cosh() * (0.5 * delta).sinh()
}

/// `cosh(u) - cosh(a)` given `delta = u - a` exactly.
pub fn cosh_diff(a: f64, delta: f64) -> f64 {
    2.0 * (a + 0.5 * delta).sinh() * (0.5 * delta).sinh()
}

/// `(1 - q^m) / (1 - q)` as a finite geometric sum; `m >= 1`.
pub fn geometric_sum(q: f64, m: u32) -> f64 {
    let mut acc = 0.0;
    let mut term = 1.0;
    for _ in 0..m {
        acc += term;
        term *= q;
    }
    acc
}

/// `1 - q^m` for `q` close to one, given `one_minus_q = 1 - q` exactly.
pub fn one_minus_pow(q: f64, one_minus_q: f64, m: u32) -> f64 {
    one_minus_q * geometric_sum(q, m)
}

/// `(1 + x)^m - 1` for small `x`, without cancellation.
pub fn pow1p_minus_one(x: f64, m: u32) -> f64 {
    ((m as f64) * x.ln_1p()).exp_m1()
}

/// `cosh^m(x) - 1`, accurate for small `|x|`.
pub fn cosh_pow_minus_one(x: f64, m: u32) -> f64 {
    let x = x.abs();
    if x > 20.0 {
        ((m as f64) * ln_cosh(x)).exp() - 1.0
    } else {
        let half = (0.5 * x).sinh();
        ((m as f64) * (2.0 * half * half).ln_1p()).exp_m1()
    }
}

/// Area of the unit sphere `S^{n-1}` in `R^n`.
pub fn sphere_area(n: usize) -> f64 {
    // |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2)
    let half = n as f64 / 2.0;
    2.0 * PI.powf(half) / gamma_half_integer(n)
}

/// `Gamma(k/2)` for a positive integer `k`.
fn gamma_half_integer(k: usize) -> f64 {
    let (mut value, mut x) = if k % 2 == 0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    let target = k as f64 / 2.0;
    while x < target - 0.25 {
        value *= x;
        x += 1.0;
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_forms_match_direct_evaluation() {
        for &x in &[0.1, 1.0, 5.0, 19.9, 20.1, 30.0] {
            assert!((ln_sinh(x) - x.sinh().ln()).abs() < 1e-13 * x.max(1.0));
            assert!((ln_cosh(x) - x.cosh().ln()).abs() < 1e-13 * x.max(1.0));
        }
        assert!(ln_sinh(800.0).is_finite());
        assert!((sinh_ratio(700.0, 710.0) - (-10.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn cosh_power_near_zero() {
        let x: f64 = 1e-9;
        assert!((cosh_pow_minus_one(x, 2) - x * x).abs() < 1e-30);
        assert!((cosh_pow_minus_one(1.0, 3) - (1f64.cosh().powi(3) - 1.0)).abs() < 1e-14);
        assert!(cosh_pow_minus_one(30.0, 2).is_finite());
    }

    #[test]
    fn differences_are_accurate_for_tiny_offsets() {
        let a: f64 = 1.3;
        let d = 1e-12;
        let exact = a.cosh() * d;
        assert!((sinh_diff(a, d) - exact).abs() < 1e-24);
        assert!((cosh_diff(a, d) - a.sinh() * d).abs() < 1e-24);
        assert!((pow1p_minus_one(1e-14, 4) - 4e-14).abs() < 1e-26);
    }

    #[test]
    fn sphere_areas() {
        assert!((sphere_area(2) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-13);
        assert!((sphere_area(4) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((sphere_area(5) - 8.0 * PI * PI / 3.0).abs() < 1e-12);
    }
}
