use heliumd::closed_form::{
    derivative, energy, energy_2d, energy_3d, energy_4d, energy_5d, energy_uncorrelated,
    mean_r12_2d, norm_2d,
};
use heliumd::optimize::{optimize_at, ModelFamily};
use heliumd::quadrature::{expectation_h, QuadratureConfig};
use heliumd::{cusps, hydrogen_ground_energy, SystemSpec, TrialParams};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hydrogen_three_dimensions(z in 0.01f64..50.0) {
        prop_assert_eq!(hydrogen_ground_energy(z, 3).unwrap(), -z * z / 2.0);
    }

    #[test]
    fn cusps_scale_linearly(a in 0.1f64..3.0, b in -1.0f64..1.0, z in 0.5f64..10.0, k in 0.1f64..5.0) {
        let c = cusps(&TrialParams::symmetric(a, b), z);
        let ck = cusps(&TrialParams::symmetric(k * a, k * b), z);
        prop_assert!((ck.nu1[0] - k * c.nu1[0]).abs() <= 1e-12 * ck.nu1[0].abs());
        prop_assert!((ck.nu1[1] - k * c.nu1[1]).abs() <= 1e-12 * ck.nu1[1].abs());
        prop_assert!((ck.nu2 - k * c.nu2).abs() <= 1e-12 * ck.nu2.abs().max(1e-300));
    }

    #[test]
    fn zero_correlation_matches_uncorrelated(d in 2u32..=5, a in 0.2f64..3.0, z in 0.5f64..10.0) {
        let e = energy(d, a, 0.0, z).unwrap();
        let u = energy_uncorrelated(d, a, z).unwrap();
        prop_assert!((e - u).abs() <= 1e-12 * u.abs().max(1.0), "{} vs {}", e, u);
    }

    #[test]
    fn mean_r12_is_log_derivative_of_norm(a in 0.5f64..2.0, f in -0.8f64..0.8, z in 1.0f64..6.0) {
        let b = f * a * z;
        let r = mean_r12_2d(a, b, z).unwrap();
        let ln_norm = |x: f64| norm_2d(a, x, z).map(f64::ln);
        let fd = -0.5 * derivative(&ln_norm, b, 1, 1e-3 * a * z).unwrap();
        prop_assert!((r - fd).abs() <= 1e-7 * r.abs(), "{} vs {}", r, fd);
    }

    #[test]
    fn inverse_cosine_equals_inverse_secant(x in -0.999f64..0.999) {
        prop_assume!(x.abs() > 1e-6);
        let asec = |y: f64| (1.0 / y).acos();
        prop_assert!((x.acos() - asec(1.0 / x)).abs() <= 1e-14);
    }
}

#[test]
fn trivial_and_anchor_values() {
    assert!((energy_3d(1.0, 0.0, 2.0).unwrap() + 2.75).abs() < 1e-14);
    assert!((energy_3d(0.929044, -0.254746, 2.0).unwrap() + 2.889618).abs() < 1e-6);
    assert!((energy_2d(1.876383, -0.537171, 2.0).unwrap() + 11.8350).abs() < 1e-4);
    assert!((energy_4d(0.6160175, -0.1650859, 2.0).unwrap() + 1.26809).abs() < 1e-5);
    assert!((energy_5d(0.460444, -0.121678, 2.0).unwrap() + 0.7077).abs() < 1e-4);
    let pi = std::f64::consts::PI;
    assert!((energy_2d(1.0, 0.0, 2.0).unwrap() - (-12.0 + 3.0 * pi / 4.0)).abs() < 1e-12);
    assert!((energy_4d(1.0, 0.0, 2.0).unwrap() - (-4.0 / 3.0 + 35.0 * pi / 128.0)).abs() < 1e-12);
    assert!((energy_uncorrelated(5, 1.0, 2.0).unwrap() - 0.65625).abs() < 1e-14);
}

#[test]
fn domain_errors() {
    assert!(energy_2d(0.3, 1.0, 2.0).is_err());
    assert!(energy_4d(0.3, -1.0, 2.0).is_err());
    assert!(energy_3d(-1.0, 0.0, 2.0).is_err());
    assert!(energy(6, 1.0, 0.0, 2.0).is_err());
}

#[test]
fn helium_optimum_respects_exact_bound() {
    let r = optimize_at(&ModelFamily::Correlated { d: 3 }, 2.0, &QuadratureConfig::default()).unwrap();
    assert!(r.energy >= -2.903724);
}

#[test]
fn closed_forms_match_quadrature_at_optima() {
    let cfg = QuadratureConfig::default();
    for (d, a, b) in [
        (2, 1.876383, -0.537171),
        (3, 0.929044, -0.254746),
        (4, 0.6160175, -0.1650859),
        (5, 0.460444, -0.121678),
    ] {
        let cf = energy(d, a, b, 2.0).unwrap();
        let q = expectation_h(&TrialParams::symmetric(a, b), &SystemSpec::helium_like(d, 2.0), &cfg).unwrap();
        assert!(((cf - q) / cf).abs() < 1e-8, "d={d}: {cf} vs {q}");
    }
}
