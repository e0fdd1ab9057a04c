use heliumd::hamiltonian::overlap_terms;
use heliumd::quadrature::{bare_integral, expectation_h, expectation_monomial, QuadratureConfig, Scheme};
use heliumd::{ExponentTriple, SystemSpec, TrialParams};

const OPTIMA: [(u32, f64, f64); 4] = [
    (2, 1.876383, -0.537171),
    (3, 0.929044, -0.254746),
    (4, 0.6160175, -0.1650859),
    (5, 0.460444, -0.121678),
];

#[test]
fn node_doubling_converges_at_table_optima() {
    for (d, a, b) in OPTIMA {
        let sys = SystemSpec::helium_like(d, 2.0);
        let trial = TrialParams::symmetric(a, b);
        let base = QuadratureConfig::default().unchecked();
        let e1 = expectation_h(&trial, &sys, &base).unwrap();
        let e2 = expectation_h(&trial, &sys, &base.with_nodes(2 * base.nodes_per_axis)).unwrap();
        let tol = if d % 2 == 1 { 1e-8 } else { 1e-6 };
        assert!((e1 - e2).abs() < tol, "d={d}: {e1} vs {e2}");
    }
}

#[test]
fn symmetric_trial_is_invariant_under_relabelling() {
    let cfg = QuadratureConfig::default();
    for (d, a, b) in OPTIMA {
        let sys = SystemSpec::helium_like(d, 2.0);
        let trial = TrialParams::symmetric(a, b);
        let x = expectation_monomial(&trial, &sys, 2, 0, 1, &cfg).unwrap();
        let y = expectation_monomial(&trial, &sys, 0, 2, 1, &cfg).unwrap();
        assert!((x - y).abs() < 1e-10 * x.abs(), "d={d}: {x} vs {y}");
    }
}

#[test]
fn two_dimensional_norm_converges_at_least_quadratically() {
    let t = ExponentTriple::new(3.0, 3.0, -0.8);
    let p = overlap_terms();
    let at = |n: usize| {
        let cfg = QuadratureConfig::default()
            .with_scheme(Scheme::RadialSimplex)
            .with_nodes(n)
            .unchecked();
        bare_integral(&p, &t, 2, &cfg).unwrap()
    };
    let exact = at(256);
    let errs: Vec<f64> = [8, 16, 32].iter().map(|&n| (at(n) - exact).abs()).collect();
    for w in errs.windows(2) {
        if w[0] > 1e-13 * exact.abs() {
            assert!(w[0] / w[1].max(1e-300) >= 4.0, "errors {errs:?}");
        }
    }
}

#[test]
fn schemes_agree_in_odd_dimension() {
    let t = ExponentTriple::new(2.1, 1.7, -0.3);
    let p = overlap_terms();
    let lag = QuadratureConfig::default().with_scheme(Scheme::PerimetricLaguerre);
    let sim = QuadratureConfig::default().with_scheme(Scheme::RadialSimplex);
    for d in [3, 5] {
        let x = bare_integral(&p, &t, d, &lag).unwrap();
        let y = bare_integral(&p, &t, d, &sim).unwrap();
        assert!((x - y).abs() < 1e-9 * x.abs(), "d={d}: {x} vs {y}");
    }
}
