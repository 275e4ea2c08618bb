//! Library values against an independent double-exponential integrator and
//! against frozen high-precision references.

use std::f64::consts::FRAC_PI_2;

use minhyp::catenoid::{half_height, height, lambda, Catenoid};
use minhyp::transinv::{mu_plus, mu_zero, TranslationSurface};

/// `∫_0^∞ g(δ) dδ` by the exp-sinh rule `δ = exp(π/2 sinh s)`.
fn exp_sinh<G: Fn(f64) -> f64>(g: G) -> f64 {
    let term = |s: f64| {
        let delta = (FRAC_PI_2 * s.sinh()).exp();
        let w = delta * FRAC_PI_2 * s.cosh();
        let y = g(delta);
        if y == 0.0 || !w.is_finite() {
            0.0
        } else {
            w * y
        }
    };
    let limit: f64 = 4.6;
    let mut h = 0.5;
    let mut prev = f64::NAN;
    loop {
        let steps = (limit / h).ceil() as i64;
        let sum: f64 = (-steps..=steps).map(|k| term(k as f64 * h)).sum::<f64>() * h;
        if (sum - prev).abs() < 1e-15 * sum.abs() || h < 1e-3 {
            return sum;
        }
        prev = sum;
        h *= 0.5;
    }
}

/// `∫_0^width g(δ) dδ` by the tanh-sinh rule, with `δ` formed directly so a
/// singularity at `0` is resolved.
fn tanh_sinh<G: Fn(f64) -> f64>(g: G, width: f64) -> f64 {
    let term = |s: f64| {
        let u = FRAC_PI_2 * s.sinh();
        let delta = width / (1.0 + (-2.0 * u).exp());
        let w = FRAC_PI_2 * s.cosh() / u.cosh().powi(2);
        if w < 1e-300 || delta <= 0.0 || delta >= width {
            0.0
        } else {
            0.5 * width * w * g(delta)
        }
    };
    let limit: f64 = 4.5;
    let mut h = 0.5;
    let mut prev = f64::NAN;
    loop {
        let steps = (limit / h).ceil() as i64;
        let sum: f64 = (-steps..=steps).map(|k| term(k as f64 * h)).sum::<f64>() * h;
        if (sum - prev).abs() < 1e-15 * sum.abs().max(1e-300) || h < 1e-3 {
            return sum;
        }
        prev = sum;
        h *= 0.5;
    }
}

/// `ln(sinh(a + δ) / sinh a)` without cancellation.
fn ln_sinh_ratio(a: f64, delta: f64) -> f64 {
    (2.0 * (0.5 * delta).sinh().powi(2) + delta.sinh() / a.tanh()).ln_1p()
}

/// `ln(cosh(a + δ) / cosh a)` without cancellation.
fn ln_cosh_ratio(a: f64, delta: f64) -> f64 {
    (2.0 * (0.5 * delta).sinh().powi(2) + delta.sinh() * a.tanh()).ln_1p()
}

/// `T(a) = ∫_a^∞ ((sinh ρ / sinh a)^{2(n-1)} - 1)^{-1/2} dρ`.
fn oracle_half_height(n: usize, a: f64) -> f64 {
    let m2 = 2.0 * (n - 1) as f64;
    exp_sinh(|d| (m2 * ln_sinh_ratio(a, d)).exp_m1().powf(-0.5))
}

/// `λ(a, ρ)` on the finite range `[a, ρ]`, in `δ = ρ' - a`.
fn oracle_lambda(n: usize, a: f64, rho: f64) -> f64 {
    let m2 = 2.0 * (n - 1) as f64;
    tanh_sinh(|d| (m2 * ln_sinh_ratio(a, d)).exp_m1().powf(-0.5), rho - a)
}

/// `h_T = 2 ∫_a^∞ ((cosh ρ / cosh a)^{2(n-1)} - 1)^{-1/2} dρ`.
fn oracle_bigraph_height(n: usize, a: f64) -> f64 {
    let m2 = 2.0 * (n - 1) as f64;
    2.0 * exp_sinh(|d| (m2 * ln_cosh_ratio(a, d)).exp_m1().powf(-0.5))
}

/// Height of the entire graph, `2 ∫_0^∞ d (cosh^{2(n-1)} ρ - d²)^{-1/2} dρ`.
fn oracle_entire_height(n: usize, d: f64) -> f64 {
    let m2 = 2 * (n - 1) as i32;
    2.0 * exp_sinh(|r| {
        let c = r.cosh().powi(m2);
        if c.is_finite() {
            d / (c - d * d).sqrt()
        } else {
            0.0
        }
    })
}

fn close(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs().max(1e-300)
}

#[test]
fn oracle_reproduces_known_integral() {
    // ∫_0^∞ (e^{2δ} - 1)^{-1/2} dδ = π/2.
    let v = exp_sinh(|d| (2.0 * d).exp_m1().powf(-0.5));
    assert!((v - FRAC_PI_2).abs() < 1e-13, "{v}");
    // ∫_0^1 δ^{-1/2} (2 - δ)^{-1/2} dδ = π/2.
    let w = tanh_sinh(|d| (d * (2.0 - d)).sqrt().recip(), 1.0);
    assert!((w - FRAC_PI_2).abs() < 1e-13, "{w}");
}

#[test]
fn half_height_matches_oracle() {
    for n in [2, 3, 4] {
        for a in [1e-3, 0.05, 0.3, 1.0, 2.5, 7.0, 15.0] {
            let got = half_height(n, a).unwrap();
            let want = oracle_half_height(n, a);
            assert!(close(got, want, 1e-9), "n={n} a={a}: {got} vs {want}");
        }
    }
}

#[test]
fn lambda_matches_oracle() {
    for n in [2, 3, 4] {
        for a in [0.1, 1.0, 3.0] {
            for off in [1e-4, 0.2, 1.5, 6.0] {
                let got = lambda(n, a, a + off).unwrap();
                let want = oracle_lambda(n, a, a + off);
                assert!(close(got, want, 1e-9), "n={n} a={a} rho=a+{off}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn bigraph_height_matches_oracle() {
    for n in [2, 3, 4] {
        for a in [0.01, 0.2, 1.0, 3.0, 8.0] {
            let got = TranslationSurface::from_neck(n, a).unwrap().height().unwrap().value;
            let want = oracle_bigraph_height(n, a);
            assert!(close(got, want, 1e-9), "n={n} a={a}: {got} vs {want}");
        }
    }
}

#[test]
fn entire_graph_height_matches_oracle() {
    for n in [2, 3, 4] {
        for d in [0.1, 0.5, 0.9, 0.99] {
            let got = TranslationSurface::new(n, d).unwrap().height().unwrap().value;
            let want = oracle_entire_height(n, d);
            assert!(close(got, want, 1e-9), "n={n} d={d}: {got} vs {want}");
        }
    }
}

// Frozen from 30-digit mpmath quadrature.

#[test]
fn frozen_bigraph_heights() {
    let cases = [
        (2, 1e-4, 21.1932695208381721),
        (2, 1e-2, 11.98324533115267),
        (2, 1.0, 3.583263292246504),
        (3, 1.0, 1.855848361056203),
        (3, 1e-4, 14.22958320178063),
        (4, 0.5, 1.712102487967015),
    ];
    for (n, a, want) in cases {
        let got = TranslationSurface::from_neck(n, a).unwrap().height().unwrap().value;
        assert!(close(got, want, 1e-10), "n={n} a={a}: {got} vs {want}");
    }
    let excess = TranslationSurface::from_neck(2, 20.0).unwrap().height().unwrap().excess.unwrap();
    assert!(close(excess, 1.3346e-17, 1e-3), "{excess}");
}

#[test]
fn frozen_entire_heights() {
    for (n, d, want) in [(2, 0.5, 1.6857503548125960), (3, 0.9, 2.6788605671233484)] {
        let got = TranslationSurface::new(n, d).unwrap().height().unwrap().value;
        assert!(close(got, want, 1e-10), "n={n} d={d}: {got} vs {want}");
    }
}

#[test]
fn frozen_profiles() {
    let zero = [(2, 3.0, 0.672280300388861), (3, 0.1, -1.495029315878150), (2, 0.01, -4.526388866927454)];
    for (n, rho, want) in zero {
        let got = mu_zero(n, rho, 1.0).unwrap();
        assert!(close(got, want, 1e-11), "n={n} rho={rho}: {got} vs {want}");
    }
    let got = mu_plus(3, 0.7, 2.5).unwrap();
    assert!(close(got, 1.0370122732427, 1e-11), "{got}");
}

#[test]
fn frozen_small_neck_heights() {
    for (n, want) in [(2, 0.016588098), (3, 0.0026200586), (4, 0.0014021750)] {
        let got = height(n, 1e-3).unwrap();
        assert!(close(got, want, 1e-7), "n={n}: {got} vs {want}");
    }
}

#[test]
fn constant_c_is_height_slope() {
    for n in [2, 3] {
        for a in [0.3, 1.0, 2.0] {
            let c = Catenoid::new(n, a).unwrap().c_const();
            let step = 1e-4;
            let fd = (half_height(n, a + step).unwrap() - half_height(n, a - step).unwrap()) / (2.0 * step);
            assert!((c - fd).abs() < 1e-7 * c.abs().max(1.0), "n={n} a={a}: {c} vs {fd}");
        }
    }
}
