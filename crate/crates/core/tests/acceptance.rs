//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use heliumd::analysis::{
    constants, critical_charge, entropy_interpolation, exact_leading_coefficients,
    large_z_expansion, large_z_fit, taylor_at_zb, CriticalChargeConfig,
};
use heliumd::closed_form::{energy, energy_2d, energy_3d, energy_4d, energy_5d, UncorrelatedEnergy};
use heliumd::finitemass::{energy_appendix, energy_general, symmetrized};
use heliumd::optimize::{optimize_at, ModelFamily};
use heliumd::quadrature::{expectation_h, QuadratureConfig};
use heliumd::reference;
use heliumd::tables::{reproduce, Cell, Table, TableOptions};
use heliumd::{SystemSpec, TrialParams};

const ANCHOR_TOL: f64 = 1e-4;
const ORACLE_TOL_EVEN: f64 = 1e-6;
const ORACLE_TOL_ODD: f64 = 1e-8;
const ORACLE_POINTS: usize = 50;
const SERIES_TOL: f64 = 1e-5;
const TAYLOR_TOL: f64 = 1e-5;
const CRITICAL_TOL: f64 = 5e-4;
const INTERPOLATION_TOL: f64 = 2e-3;
const SECTION_FIVE_TOL: f64 = 1e-6;
const APPENDIX_POINTS: usize = 100;
const APPENDIX_TOL: f64 = 1e-10;
const SLOPE_TARGET: f64 = -1.0;
const SLOPE_TOL: f64 = 0.05;
const HELIUM_MASS: f64 = 7294.261824;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: &str, pass: bool, detail: String, started: Instant) {
        if !pass {
            self.failed += 1;
        }
        println!(
            "{} criterion {id}: {detail} [{:.2?}]",
            if pass { "PASS" } else { "FAIL" },
            started.elapsed()
        );
    }
}

fn failing_cells(cells: &[Cell]) -> Vec<String> {
    cells
        .iter()
        .filter(|c| !c.pass)
        .map(|c| match (c.computed, &c.error) {
            (Some(v), _) => format!("{} d={} Z={} {v:.7} vs {}", c.quantity, c.d, c.z, c.reference),
            (None, Some(e)) => format!("{} d={} Z={}: {e}", c.quantity, c.d, c.z),
            _ => format!("{} d={} Z={}", c.quantity, c.d, c.z),
        })
        .collect()
}

fn anchors(rep: &mut Report) {
    let t = Instant::now();
    let cases = [
        ("d=3", energy_3d(0.929044, -0.254746, 2.0), -2.889618),
        ("d=2", energy_2d(1.876383, -0.537171, 2.0), -11.8350),
        ("d=4", energy_4d(0.6160175, -0.1650859, 2.0), -1.26809),
        ("d=5", energy_5d(0.460444, -0.121678, 2.0), -0.7077),
    ];
    let mut worst = 0.0f64;
    let mut ok = true;
    for (_, e, target) in &cases {
        match e {
            Ok(v) => worst = worst.max((v - target).abs()),
            Err(_) => ok = false,
        }
    }
    let pass = ok && worst <= ANCHOR_TOL;
    rep.line("1 (closed-form anchors)", pass, format!("max |Δ| = {worst:.2e} (tol {ANCHOR_TOL:e})"), t);
}

fn table1(rep: &mut Report) {
    let t = Instant::now();
    let cells = reproduce(Table::Table1, &TableOptions::default());
    let fails = failing_cells(&cells);
    let energies = cells.iter().filter(|c| c.quantity == "energy").count();
    let detail = format!(
        "{} of {} cells ({energies} energies at 5e-5, {} ⟨r12⟩ at 5e-4) pass; failing: [{}]",
        cells.len() - fails.len(),
        cells.len(),
        cells.len() - energies,
        fails.join("; ")
    );
    rep.line("2 (energy table)", fails.is_empty(), detail, t);

    // Printed entries carry fewer digits than the tolerance in several cells;
    // confirm each printed value agrees with the computation to its last digit.
    let t = Instant::now();
    let mut off = Vec::new();
    for c in &cells {
        let r = reference::find(&c.quantity, c.d, c.z, "").expect("table entry");
        match c.computed {
            Some(v) if (v - r.value).abs() < r.resolution() => {}
            _ => off.push(format!("{} d={} Z={}", c.quantity, c.d, c.z)),
        }
    }
    rep.line(
        "2s (energy table printed-digit agreement)",
        off.is_empty(),
        format!("every cell within one unit of its last printed digit; off: {off:?}"),
        t,
    );
}

fn oracle(rep: &mut Report) {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let cfg = QuadratureConfig::default();
    let mut worst = [0.0f64; 4];
    let mut errors = Vec::new();
    for (i, d) in (2..=5u32).enumerate() {
        let mut n = 0;
        while n < ORACLE_POINTS {
            let z: f64 = rng.gen_range(0.8..10.0);
            let a: f64 = rng.gen_range(0.3..2.0);
            let b: f64 = rng.gen_range(-0.95..0.95) * a * z;
            let Ok(cf) = energy(d, a, b, z) else { continue };
            n += 1;
            match expectation_h(&TrialParams::symmetric(a, b), &SystemSpec::helium_like(d, z), &cfg) {
                Ok(q) => worst[i] = worst[i].max(((cf - q) / cf).abs()),
                Err(e) => errors.push(format!("d={d} ({a},{b},{z}): {e}")),
            }
        }
    }
    let pass = errors.is_empty()
        && worst[0] <= ORACLE_TOL_EVEN
        && worst[2] <= ORACLE_TOL_EVEN
        && worst[1] <= ORACLE_TOL_ODD
        && worst[3] <= ORACLE_TOL_ODD;
    rep.line(
        "3 (oracle equivalence)",
        pass,
        format!(
            "max relative deviation d=2..5: {}; errors: {errors:?}",
            worst.map(|w| format!("{w:.2e}")).join(", ")
        ),
        t,
    );
}

fn expansions(rep: &mut Report) {
    let t = Instant::now();
    let cases = [
        (3, 0.929044, -0.254746),
        (2, 1.876383, -0.537171),
        (4, 0.6160175, -0.1650859),
    ];
    let mut worst = 0.0f64;
    let mut ok = true;
    for (d, a, b) in cases {
        let target = [
            reference::value("large_z", d, 0, "c0").unwrap(),
            reference::value("large_z", d, 0, "c1").unwrap(),
            reference::value("large_z", d, 0, "c2").unwrap(),
        ];
        match (large_z_expansion(d, a, b, 2), large_z_fit(d, a, b)) {
            (Ok(s), Ok(fit)) => {
                for j in 0..3 {
                    worst = worst.max((s.coeffs[j] - target[j]).abs());
                    worst = worst.max((fit[j] - target[j]).abs());
                }
            }
            _ => ok = false,
        }
    }
    let exact = [(3, 1.0, 0.625), (2, 4.0, 3.0 * PI / 4.0), (4, 4.0 / 9.0, 35.0 * PI / 384.0)];
    let mut exact_dev = 0.0f64;
    for (d, b0, b1) in exact {
        match exact_leading_coefficients(d) {
            Ok((c0, c1)) => {
                exact_dev = exact_dev.max((c0 - b0).abs() / b0).max((c1 - b1).abs() / b1);
                // Leading coefficients of the optimized uncorrelated energy.
                let u = UncorrelatedEnergy::new(d).unwrap();
                let z = 1e3;
                let e = u.evaluate(u.optimal_alpha(z), z);
                let tail = -(u.r * u.r) / (4.0 * u.p);
                exact_dev = exact_dev.max(((-c0 * z * z + c1 * z + tail) - e).abs() / e.abs());
            }
            Err(_) => ok = false,
        }
    }
    let pass = ok && worst <= SERIES_TOL && exact_dev <= 4.0 * f64::EPSILON;
    rep.line(
        "4 (1/Z expansions)",
        pass,
        format!("max |Δ| analytic and fit = {worst:.2e}; exact pairs relative error {exact_dev:.1e}"),
        t,
    );
}

fn taylor(rep: &mut Report) {
    let t = Instant::now();
    let target = [-0.380745, -1.20635, -0.984326];
    let r = taylor_at_zb(0.929044, -0.254746, constants::Z_B, 2);
    let (pass, detail) = match r {
        Ok(s) => {
            let w = (0..3).map(|j| (s.coeffs[j] - target[j]).abs()).fold(0.0, f64::max);
            (w <= TAYLOR_TOL, format!("coefficients {:?}, max |Δ| = {w:.2e}", s.coeffs))
        }
        Err(e) => (false, e.to_string()),
    };
    rep.line("5 (Taylor at Z_B)", pass, detail, t);
}

fn critical(rep: &mut Report) {
    let t = Instant::now();
    let mut pass = true;
    let mut found = Vec::new();
    for d in 2..=5 {
        let target = reference::value("critical_charge", d, 0, "").unwrap();
        match critical_charge(&CriticalChargeConfig::new(ModelFamily::Correlated { d })) {
            Ok(c) => {
                pass &= (c.z_c - target).abs() <= CRITICAL_TOL;
                found.push(format!("d={d}: {:.6}", c.z_c));
            }
            Err(e) => {
                pass = false;
                found.push(format!("d={d}: {e}"));
            }
        }
    }
    rep.line("6 (critical charges)", pass, found.join(", "), t);

    let t = Instant::now();
    let asym = critical_charge(&CriticalChargeConfig::new(ModelFamily::FiniteMass {
        m: 1.0,
        big_m: f64::INFINITY,
        e: -1.0,
        asymmetric: true,
    }));
    let detail = match &asym {
        Ok(c) => format!(
            "three-parameter Z_c = {:.6}, exact {} (difference {:.4})",
            c.z_c,
            constants::EXACT_CRITICAL_CHARGE,
            c.z_c - constants::EXACT_CRITICAL_CHARGE
        ),
        Err(e) => e.to_string(),
    };
    rep.line("6i (three-parameter critical charge, reported)", asym.is_ok(), detail, t);
}

fn entropies(rep: &mut Report) {
    let t = Instant::now();
    let cells = reproduce(Table::Table2, &TableOptions::default());
    let fails = failing_cells(&cells);
    let s = |d: u32, z: u32| {
        cells
            .iter()
            .find(|c| c.d == d && c.z == z)
            .and_then(|c| c.computed)
            .unwrap_or(f64::NAN)
    };
    let mut mono = true;
    for d in 2..=5 {
        for z in 2..10 {
            mono &= s(d, z + 1) < s(d, z);
        }
    }
    for z in 2..=10 {
        for d in 2..5 {
            mono &= s(d + 1, z) > s(d, z);
        }
    }
    let mut interp = 0.0f64;
    for d in 3..=5 {
        for z in 2..=10 {
            let v = entropy_interpolation(d, f64::from(z), s(2, z)).unwrap();
            interp = interp.max((v - s(d, z)).abs());
        }
    }
    let pass = fails.is_empty() && mono && interp <= INTERPOLATION_TOL;
    let worst = cells.iter().filter_map(|c| c.deviation).fold(0.0, f64::max);
    rep.line(
        "7 (entropy table entropies)",
        pass,
        format!(
            "max |Δ| = {worst:.2e} (tol 5e-3), failing [{}]; monotone: {mono}; interpolation max |Δ| = {interp:.2e} (tol {INTERPOLATION_TOL:e})",
            fails.join("; ")
        ),
        t,
    );
}

fn finite_mass(rep: &mut Report) {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut pass = true;
    for (a1, a2, b, target) in [
        (0.92887416, 0.92887416, -0.2546058, -2.8891879),
        (1.1031235, 0.72010632, -0.207181825, -2.8991105),
    ] {
        let e = energy_appendix(a1, a2, b, 2.0, 1.0, HELIUM_MASS, -1.0);
        let ok = e.as_ref().is_ok_and(|v| (v - target).abs() <= SECTION_FIVE_TOL);
        pass &= ok;
        notes.push(format!("helium {e:?} vs {target}"));
    }
    let t4 = reproduce(Table::Table4, &TableOptions::default());
    pass &= t4.iter().all(|c| c.pass);
    notes.push(format!("Three-body table failing [{}]", failing_cells(&t4).join("; ")));
    let opts = TableOptions {
        strict_z2_only: true,
        ..TableOptions::default()
    };
    let t3 = reproduce(Table::Table3, &opts);
    pass &= t3.iter().all(|c| c.pass);
    notes.push(format!("Finite-mass table failing [{}]", failing_cells(&t3).join("; ")));

    let mut rng = ChaCha8Rng::seed_from_u64(0xa99e);
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < APPENDIX_POINTS {
        let a1: f64 = rng.gen_range(0.2..1.5);
        let a2: f64 = rng.gen_range(0.2..1.5);
        let z: f64 = rng.gen_range(0.5..6.0);
        let b: f64 = rng.gen_range(-0.9..0.9) * a1.min(a2) * z;
        let m: f64 = rng.gen_range(0.5..2.0);
        let big_m = 10f64.powf(rng.gen_range(-0.5..4.0));
        let e: f64 = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
        let Ok(app) = energy_appendix(a1, a2, b, z, m, big_m, e) else { continue };
        n += 1;
        let (t1, t2) = symmetrized(a1, a2, b, z);
        let sys = SystemSpec::three_body(z, e, e, m, m, big_m);
        match energy_general(&t1, &t2, &sys) {
            Ok(g) => worst = worst.max(((app - g) / g).abs()),
            Err(_) => worst = f64::INFINITY,
        }
    }
    pass &= worst <= APPENDIX_TOL;
    notes.push(format!("appendix vs general max relative {worst:.1e}"));
    rep.line("8 (finite mass)", pass, notes.join("; "), t);
}

fn static_limit(rep: &mut Report) {
    let t = Instant::now();
    let (a, b, z) = (0.929044, -0.254746, 2.0);
    let e_static = energy_3d(a, b, z).unwrap();
    let pts: Vec<(f64, f64)> = (4..=10)
        .map(|k| {
            let e = energy_appendix(a, a, b, z, 1.0, 10f64.powi(k), -1.0).unwrap();
            (f64::from(k), (e - e_static).abs().log10())
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    rep.line(
        "9 (static limit)",
        (slope - SLOPE_TARGET).abs() <= SLOPE_TOL,
        format!("fitted slope {slope:.4} (target -1 ± {SLOPE_TOL})"),
        t,
    );
}

fn variational_bound(rep: &mut Report) {
    let t = Instant::now();
    let cfg = QuadratureConfig::default();
    let mut checks = Vec::new();
    for d in 2..=5 {
        let bound = reference::value("lower_bound", d, 2, "").unwrap();
        let e = optimize_at(&ModelFamily::Correlated { d }, 2.0, &cfg).map(|r| r.energy);
        checks.push((format!("d={d}"), e, bound));
    }
    for z in 2..=10u32 {
        let exact = reference::value("finite_mass", 3, z, "exact").unwrap();
        let big_m = reference::value("finite_mass", 3, z, "nuclear_mass").unwrap();
        let fam = ModelFamily::FiniteMass {
            m: 1.0,
            big_m,
            e: -1.0,
            asymmetric: true,
        };
        let e = optimize_at(&fam, f64::from(z), &cfg).map(|r| r.energy);
        checks.push((format!("Finite-mass table Z={z}"), e, exact));
    }
    let bad: Vec<String> = checks
        .iter()
        .filter(|(_, e, b)| !e.as_ref().is_ok_and(|v| *v > *b))
        .map(|(n, e, b)| format!("{n}: {e:?} vs {b}"))
        .collect();
    rep.line(
        "10 (variational bound)",
        bad.is_empty(),
        format!("{} optimized energies strictly above their exact values; violations {bad:?}", checks.len() - bad.len()),
        t,
    );
}

fn main() -> ExitCode {
    let mut rep = Report { failed: 0 };
    anchors(&mut rep);
    table1(&mut rep);
    oracle(&mut rep);
    expansions(&mut rep);
    taylor(&mut rep);
    critical(&mut rep);
    entropies(&mut rep);
    finite_mass(&mut rep);
    static_limit(&mut rep);
    variational_bound(&mut rep);
    println!("acceptance: {} failing line(s)", rep.failed);
    if rep.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
