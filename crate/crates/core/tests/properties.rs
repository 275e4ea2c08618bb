use std::f64::consts::PI;

use minhyp::catenoid::{height, intersect_catenaries, lambda, lambda_vform, Catenoid};
use minhyp::hgeom::{curvatures_rotation, curvatures_translation};
use minhyp::jacobi::{assemble_mode_operator, eigen_bottom, sample_fields, ModeDomain};
use minhyp::transinv::{Regime, TranslationSurface};
use proptest::prelude::*;

fn dims() -> impl Strategy<Value = usize> {
    2usize..=4
}

fn bound(n: usize) -> f64 {
    PI / (n - 1) as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn height_increases_with_neck(n in dims(), a in 0.01f64..6.0, step in 1.05f64..2.0) {
        let lo = height(n, a).unwrap();
        let hi = height(n, a * step).unwrap();
        prop_assert!(lo < hi, "h_R({a}) = {lo}, h_R({}) = {hi}", a * step);
        prop_assert!(hi < bound(n));
    }

    #[test]
    fn heights_straddle_the_bound(n in dims(), a in 0.01f64..10.0) {
        let h_r = height(n, a).unwrap();
        let h_t = TranslationSurface::from_neck(n, a).unwrap().height().unwrap();
        prop_assert!(h_r < bound(n));
        prop_assert!(h_t.excess.unwrap() > 0.0);
        prop_assert!(h_t.value >= bound(n));
    }

    #[test]
    fn lambda_forms_agree(n in dims(), a in 0.05f64..5.0, off in 1e-6f64..8.0) {
        let u = lambda(n, a, a + off).unwrap();
        let v = lambda_vform(n, a, a + off).unwrap();
        prop_assert!((u - v).abs() < 1e-9 * u.max(1.0), "{u} vs {v}");
    }

    #[test]
    fn lambda_is_increasing_and_bounded(n in dims(), a in 0.05f64..5.0, off in 1e-3f64..8.0) {
        let c = Catenoid::new(n, a).unwrap();
        let l1 = c.lambda(a + off).unwrap();
        let l2 = c.lambda(a + 1.1 * off).unwrap();
        prop_assert!(0.0 < l1 && l1 < l2 && l2 < c.half_height());
    }

    #[test]
    fn catenoid_profile_is_minimal(n in dims(), a in 0.1f64..4.0, frac in -0.95f64..0.95) {
        let c = Catenoid::new(n, a).unwrap();
        let s = c.profile_ode(&[frac * c.half_height()]).unwrap()[0];
        let r = curvatures_rotation(&s.point, n).unwrap();
        prop_assert!(r.mean.abs() < 1e-8, "H = {}", r.mean);
        let target = a.sinh().powi(n as i32 - 1);
        prop_assert!(c.first_integral_residual(&s.point).abs() < 1e-9 * target);
    }

    #[test]
    fn jacobi_fields_have_parity(n in 2usize..=3, a in 0.2f64..3.0, frac in 0.01f64..0.95) {
        let c = Catenoid::new(n, a).unwrap();
        let t = frac * c.half_height();
        let s = sample_fields(&c, &[-t, t]).unwrap();
        prop_assert!((s[0].v + s[1].v).abs() < 1e-10);
        prop_assert!((s[0].e - s[1].e).abs() < 1e-10);
        prop_assert!((s[0].h_gamma - s[1].h_gamma).abs() < 1e-10);
        prop_assert!(s[1].v > 0.0);
    }

    #[test]
    fn translation_profile_is_minimal(n in dims(), d in 0.05f64..20.0, off in 0.01f64..25.0) {
        prop_assume!((d - 1.0).abs() > 1e-3);
        let s = TranslationSurface::new(n, d).unwrap();
        let rho = s.rho_min().max(0.0) + off;
        let p = s.profile_point(rho).unwrap();
        let r = curvatures_translation(&p, n).unwrap();
        prop_assert!(r.mean.abs() < 1e-8, "H = {}", r.mean);
        prop_assert!(s.first_integral_residual(rho, p.mu_dot).abs() < 1e-9);
    }

    #[test]
    fn translation_height_decreases(n in dims(), a in 0.01f64..8.0, step in 1.05f64..2.0) {
        let lo = TranslationSurface::from_neck(n, a).unwrap().height().unwrap();
        let hi = TranslationSurface::from_neck(n, a * step).unwrap().height().unwrap();
        prop_assert!(hi.excess.unwrap() < lo.excess.unwrap());
    }

    #[test]
    fn regimes_follow_d(d in 0.01f64..10.0) {
        let expected = if d < 1.0 { Regime::GraphEntire } else if d == 1.0 { Regime::GraphHalf } else { Regime::Bigraph };
        prop_assert_eq!(Regime::of(d), expected);
        let s = TranslationSurface::new(3, d).unwrap();
        prop_assert_eq!(s.a.is_some(), d > 1.0);
    }

    #[test]
    fn catenaries_cross_once(n in dims(), a in 0.1f64..3.0, ratio in 1.2f64..4.0) {
        let r = intersect_catenaries(n, a, a * ratio).unwrap();
        prop_assert_eq!(r.count, 1);
        prop_assert!(r.t_star > 0.0 && r.rho_star > a * ratio);
        let gap = lambda(n, a, r.rho_star).unwrap() - lambda(n, a * ratio, r.rho_star).unwrap();
        prop_assert!(gap.abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn eigenvalue_decreases_with_domain(n in 2usize..=3, a in 0.3f64..2.0, f1 in 0.2f64..0.6, grow in 0.05f64..0.3) {
        let c = Catenoid::new(n, a).unwrap();
        let big_t = c.half_height();
        let lam = |f: f64| eigen_bottom(&assemble_mode_operator(&c, ModeDomain::symmetric(f * big_t), 0, 1e-2).unwrap(), 1).unwrap().eigenvalues[0];
        prop_assert!(lam(f1 + grow) < lam(f1));
    }
}
