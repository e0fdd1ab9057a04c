use heliumd::closed_form::energy;
use heliumd::optimize::{default_starts, minimize, scan_z, Layout, ModelFamily};
use heliumd::quadrature::QuadratureConfig;
use heliumd::TrialParams;

#[test]
fn extra_starts_never_worsen_the_minimum() {
    let cfg = QuadratureConfig::default();
    for d in 2..=5 {
        let fam = ModelFamily::Correlated { d };
        let lattice = default_starts(d, Layout::AlphaBeta);
        let one = minimize(&fam.problem(3.0, lattice[..1].to_vec(), &cfg)).unwrap();
        let all = minimize(&fam.problem(3.0, lattice, &cfg)).unwrap();
        assert!(all.energy <= one.energy, "d={d}: {} > {}", all.energy, one.energy);
    }
}

#[test]
fn warm_start_scans_are_path_independent() {
    let cfg = QuadratureConfig::default();
    let up: Vec<f64> = (2..=10).map(f64::from).collect();
    let down: Vec<f64> = up.iter().rev().copied().collect();
    for d in 2..=5 {
        let fam = ModelFamily::Correlated { d };
        let a = scan_z(&fam, &up, true, false, &cfg);
        let b = scan_z(&fam, &down, true, false, &cfg);
        for (x, y) in a.iter().zip(b.iter().rev()) {
            let (x, y) = (x.as_ref().unwrap(), y.as_ref().unwrap());
            assert_eq!(x.z, y.z);
            assert!(
                (x.result.energy - y.result.energy).abs() <= 1e-7,
                "d={d} Z={}: {} vs {}",
                x.z,
                x.result.energy,
                y.result.energy
            );
        }
    }
}

#[test]
fn optimum_is_a_local_minimum() {
    let cfg = QuadratureConfig::default();
    for d in 2..=5 {
        let fam = ModelFamily::Correlated { d };
        let r = minimize(&fam.problem(2.0, default_starts(d, Layout::AlphaBeta), &cfg)).unwrap();
        let f = |a: f64, b: f64| energy(d, a, b, 2.0).unwrap();
        let (a, b) = (r.params.alpha1, r.params.beta);
        let h = 1e-5;
        let ga = (f(a + h, b) - f(a - h, b)) / (2.0 * h);
        let gb = (f(a, b + h) - f(a, b - h)) / (2.0 * h);
        assert!(ga.abs() <= 1e-5 && gb.abs() <= 1e-5, "d={d}: gradient ({ga}, {gb})");
        let k = 1e-3;
        let f0 = f(a, b);
        let haa = (f(a + k, b) - 2.0 * f0 + f(a - k, b)) / (k * k);
        let hbb = (f(a, b + k) - 2.0 * f0 + f(a, b - k)) / (k * k);
        let hab = (f(a + k, b + k) - f(a + k, b - k) - f(a - k, b + k) + f(a - k, b - k)) / (4.0 * k * k);
        assert!(haa > 0.0 && haa * hbb - hab * hab > 0.0, "d={d}: Hessian not positive definite");
    }
}

#[test]
fn three_parameter_helium_matches_finite_mass_table() {
    let fam = ModelFamily::FiniteMass {
        m: 1.0,
        big_m: 7294.261824,
        e: -1.0,
        asymmetric: true,
    };
    let cfg = QuadratureConfig::default();
    let r = minimize(&fam.problem(2.0, default_starts(3, Layout::Full), &cfg)).unwrap();
    assert!((r.energy + 2.89911).abs() < 1e-5);
    let p: TrialParams = r.params;
    let (hi, lo) = if p.alpha1 > p.alpha2 { (p.alpha1, p.alpha2) } else { (p.alpha2, p.alpha1) };
    assert!((hi - 1.103123).abs() < 1e-3 && (lo - 0.720106).abs() < 1e-3);
    assert!((p.beta + 0.207182).abs() < 1e-3);
}
