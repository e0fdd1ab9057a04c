//! `heliumd`: variational energies, scans, series, critical charges,
//! entropies and table reproduction from the command line.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use heliumd::analysis::{
    constants, critical_charge, exact_leading_coefficients, large_z_expansion, shannon_entropy,
    taylor_at_zb, CriticalChargeConfig, EntropyConfig, SeriesVariable,
};
use heliumd::closed_form::energy_any_d;
use heliumd::finitemass::{energy_general, symmetrized};
use heliumd::optimize::{default_starts, minimize, scan_z, ModelFamily};
use heliumd::quadrature::QuadratureConfig;
use heliumd::tables::{reproduce, Table, TableOptions};
use heliumd::{cusps, SystemSpec, TrialParams};

use output::{emit, field, num, opt_num, Body, Fields, Format, Record, Status};

#[derive(Parser)]
#[command(name = "heliumd", version, about = "Variational solver for d-dimensional helium-like ions and three-body Coulomb systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Override the solver tolerance (optimizer energy spread, critical-charge
    /// residual, quadrature node-doubling check). Table tolerances are fixed.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Quadrature nodes per axis.
    #[arg(long = "quad-nodes", global = true)]
    quad_nodes: Option<usize>,
}

#[derive(Args, Clone, Copy)]
struct SystemArgs {
    /// Spatial dimension.
    #[arg(long, default_value_t = 3)]
    d: u32,
    /// Charge of the third particle.
    #[arg(long = "Z", default_value_t = 2.0, allow_hyphen_values = true)]
    z: f64,
    /// Mass of particle 1.
    #[arg(long, default_value_t = 1.0)]
    m1: f64,
    /// Mass of particle 2.
    #[arg(long, default_value_t = 1.0)]
    m2: f64,
    /// Mass of the third particle; `inf` clamps it.
    #[arg(long = "M", default_value_t = f64::INFINITY)]
    big_m: f64,
    /// Charge of particle 1.
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    e1: f64,
    /// Charge of particle 2.
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    e2: f64,
}

impl SystemArgs {
    fn spec(&self) -> SystemSpec {
        SystemSpec {
            d: self.d,
            z: self.z,
            e1: self.e1,
            e2: self.e2,
            m1: self.m1,
            m2: self.m2,
            big_m: self.big_m,
        }
    }

    fn is_helium_like(&self) -> bool {
        self.big_m.is_infinite() && self.m1 == 1.0 && self.m2 == 1.0 && self.e1 == -1.0 && self.e2 == -1.0
    }

    fn inputs(&self) -> Fields {
        vec![
            field("d", self.d),
            field("Z", num(self.z)),
            field("m1", num(self.m1)),
            field("m2", num(self.m2)),
            field("M", num(self.big_m)),
            field("e1", num(self.e1)),
            field("e2", num(self.e2)),
        ]
    }
}

#[derive(Args, Clone, Copy)]
struct TrialArgs {
    /// Orbital exponent scale, `a = αZ`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Second orbital exponent scale; defaults to `--alpha`.
    #[arg(long, allow_hyphen_values = true)]
    alpha2: Option<f64>,
    /// Correlation exponent.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
}

impl TrialArgs {
    fn params(&self) -> Option<TrialParams> {
        let a = self.alpha?;
        Some(TrialParams {
            alpha1: a,
            alpha2: self.alpha2.unwrap_or(a),
            beta: self.beta.unwrap_or(0.0),
        })
    }
}

#[derive(Args, Clone, Copy)]
struct FamilyArgs {
    /// Release `α₁ = α₂` (three dimensions only).
    #[arg(long)]
    asymmetric: bool,
    /// Fix `β = 0`.
    #[arg(long)]
    uncorrelated: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Table1,
    Table2,
    Table3,
    Table4,
}

#[derive(Subcommand)]
enum Command {
    /// Energy and cusps at fixed trial parameters.
    Energy {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        trial: TrialArgs,
        /// Also report ⟨r12⟩.
        #[arg(long)]
        moments: bool,
    },
    /// Minimize the energy over the trial parameters.
    Optimize {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        family: FamilyArgs,
        /// Also report ⟨r12⟩.
        #[arg(long)]
        moments: bool,
    },
    /// Optimize over a grid of charges with warm starts.
    Scan {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 2.0)]
        z_from: f64,
        #[arg(long, default_value_t = 10.0)]
        z_to: f64,
        #[arg(long, default_value_t = 1.0)]
        z_step: f64,
        /// Start every charge from the default lattice.
        #[arg(long)]
        cold: bool,
        /// Also report ⟨r12⟩.
        #[arg(long)]
        moments: bool,
    },
    /// Series coefficients of the energy at fixed trial parameters.
    Series {
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[command(flatten)]
        trial: TrialArgs,
        /// Highest order.
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Expand in `Z - Z_B` at the branch point instead of in `1/Z`.
        #[arg(long)]
        at_zb: bool,
        /// Expansion point for `--at-zb`.
        #[arg(long)]
        point: Option<f64>,
    },
    /// Critical charge where the two-particle energy meets the threshold.
    Zc {
        #[arg(long, default_value_t = 3)]
        d: u32,
        /// Three-parameter trial (three dimensions, clamped nucleus).
        #[arg(long)]
        asymmetric: bool,
    },
    /// Shannon entropy of the one-particle density.
    Entropy {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        trial: TrialArgs,
        /// Radial grid points.
        #[arg(long, default_value_t = 400)]
        points: usize,
    },
    /// Recompute a published table and compare cell by cell.
    Reproduce {
        #[arg(value_enum)]
        table: TableArg,
        /// Finite-mass table: strict tolerance only for the row with a printed mass.
        #[arg(long)]
        strict_z2_only: bool,
    },
}

type Outcome = Result<Record, String>;

fn quadrature(o: &OutputArgs) -> QuadratureConfig {
    let mut cfg = QuadratureConfig::default();
    if let Some(n) = o.quad_nodes {
        cfg = cfg.with_nodes(n);
    }
    if let Some(t) = o.tol {
        cfg.tol = Some(t);
    }
    cfg
}

fn quad_tolerances(cfg: &QuadratureConfig) -> Fields {
    vec![
        field("quad_nodes", cfg.nodes_per_axis),
        field("quad_doubling", opt_num(cfg.tol)),
    ]
}

fn family(s: &SystemArgs, f: &FamilyArgs) -> Result<ModelFamily, String> {
    if f.uncorrelated {
        if !s.is_helium_like() || f.asymmetric {
            return Err("--uncorrelated needs a clamped nucleus, unit masses and charges -1".into());
        }
        return Ok(ModelFamily::Uncorrelated { d: s.d });
    }
    if f.asymmetric || !s.is_helium_like() {
        if s.d != 3 {
            return Err("finite-mass and three-parameter models are three-dimensional".into());
        }
        if s.m1 != s.m2 || s.e1 != s.e2 {
            return Err("optimization needs equal light masses and charges".into());
        }
        return Ok(ModelFamily::FiniteMass {
            m: s.m1,
            big_m: s.big_m,
            e: s.e1,
            asymmetric: f.asymmetric,
        });
    }
    Ok(ModelFamily::Correlated { d: s.d })
}

fn param_fields(p: &TrialParams, z: f64) -> Fields {
    let c = cusps(p, z);
    vec![
        field("alpha1", num(p.alpha1)),
        field("alpha2", num(p.alpha2)),
        field("beta", num(p.beta)),
        field("nu1", vec![num(c.nu1[0]), num(c.nu1[1])]),
        field("nu2", num(c.nu2)),
    ]
}

fn trial_inputs(t: &TrialArgs) -> Fields {
    vec![
        field("alpha", opt_num(t.alpha)),
        field("alpha2", opt_num(t.alpha2)),
        field("beta", opt_num(t.beta)),
    ]
}

fn cmd_energy(s: SystemArgs, t: TrialArgs, moments: bool, o: &OutputArgs) -> Outcome {
    let p = t.params().ok_or("--alpha is required")?;
    let cfg = quadrature(o);
    let sym = p.is_symmetric();
    let energy = if s.is_helium_like() && sym {
        energy_any_d(s.d, p.alpha1, p.beta, s.z, &cfg)
    } else {
        let (t1, t2) = symmetrized(p.alpha1, p.alpha2, p.beta, s.z);
        energy_general(&t1, &t2, &s.spec())
    }
    .map_err(|e| e.to_string())?;
    let mut results = vec![field("energy", num(energy))];
    results.extend(param_fields(&p, s.z));
    if moments {
        if !(s.is_helium_like() && sym) {
            return Err("⟨r12⟩ is available for clamped-nucleus symmetric trials".into());
        }
        let r12 = ModelFamily::Correlated { d: s.d }.mean_r12(&p, s.z, &cfg);
        results.push(field("mean_r12", opt_num(r12)));
    }
    let mut inputs = s.inputs();
    inputs.extend(trial_inputs(&t));
    Ok(Record {
        command: "energy".into(),
        inputs,
        tolerances: quad_tolerances(&cfg),
        status: Status::Ok,
        body: Body::Single(results),
    })
}

fn optimizer_tolerances(tol: f64, cfg: &QuadratureConfig) -> Fields {
    let mut t = vec![field("energy_spread", num(tol))];
    t.extend(quad_tolerances(cfg));
    t
}

fn cmd_optimize(s: SystemArgs, f: FamilyArgs, moments: bool, o: &OutputArgs) -> Outcome {
    let fam = family(&s, &f)?;
    let cfg = quadrature(o);
    let mut problem = fam.problem(s.z, default_starts(fam.dimension(), fam.layout()), &cfg);
    if let Some(t) = o.tol {
        problem.tol = t;
    }
    let tol = problem.tol;
    let r = minimize(&problem).map_err(|e| e.to_string())?;
    let mut results = vec![field("energy", num(r.energy))];
    results.extend(param_fields(&r.params, s.z));
    results.push(field("iterations", r.iterations));
    results.push(field("converged", r.converged));
    if moments {
        results.push(field("mean_r12", opt_num(fam.mean_r12(&r.params, s.z, &cfg))));
    }
    let mut inputs = s.inputs();
    inputs.push(field("asymmetric", f.asymmetric));
    inputs.push(field("uncorrelated", f.uncorrelated));
    Ok(Record {
        command: "optimize".into(),
        inputs,
        tolerances: optimizer_tolerances(tol, &cfg),
        status: Status::Ok,
        body: Body::Single(results),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    s: SystemArgs,
    f: FamilyArgs,
    z_from: f64,
    z_to: f64,
    z_step: f64,
    cold: bool,
    moments: bool,
    o: &OutputArgs,
) -> Outcome {
    if !(z_step > 0.0) || !(z_to >= z_from) {
        return Err("need --z-step > 0 and --z-to >= --z-from".into());
    }
    let fam = family(&s, &f)?;
    let cfg = quadrature(o);
    let n = ((z_to - z_from) / z_step + 1e-9).floor() as usize + 1;
    let zs: Vec<f64> = (0..n).map(|i| z_from + i as f64 * z_step).collect();
    let mut rows = Vec::with_capacity(n);
    for row in scan_z(&fam, &zs, !cold, moments, &cfg) {
        let row = row.map_err(|e| e.to_string())?;
        let mut r = vec![field("Z", num(row.z)), field("energy", num(row.result.energy))];
        r.extend(param_fields(&row.result.params, row.z));
        if moments {
            r.push(field("mean_r12", opt_num(row.mean_r12)));
        }
        rows.push(r);
    }
    let mut inputs = s.inputs();
    inputs.extend([
        field("z_from", num(z_from)),
        field("z_to", num(z_to)),
        field("z_step", num(z_step)),
        field("warm_start", !cold),
    ]);
    Ok(Record {
        command: "scan".into(),
        inputs,
        tolerances: optimizer_tolerances(1e-13, &cfg),
        status: Status::Ok,
        body: Body::Rows {
            rows,
            summary: vec![],
        },
    })
}

fn cmd_series(d: u32, t: TrialArgs, order: usize, at_zb: bool, point: Option<f64>) -> Outcome {
    let a = t.alpha.ok_or("--alpha is required")?;
    let b = t.beta.unwrap_or(0.0);
    let s = if at_zb {
        if d != 3 {
            return Err("the branch-point expansion is three-dimensional".into());
        }
        taylor_at_zb(a, b, point.unwrap_or(constants::Z_B), order)
    } else {
        large_z_expansion(d, a, b, order)
    }
    .map_err(|e| e.to_string())?;
    let variable = match s.variable {
        SeriesVariable::InverseZ => "1/Z",
        SeriesVariable::ZMinusPoint => "Z-Z_B",
    };
    let mut results = vec![
        field("variable", variable),
        field("point", num(s.point)),
        field("coefficients", s.coeffs.iter().map(|c| num(*c)).collect::<Vec<Value>>()),
    ];
    if !at_zb {
        if let Ok((b0, b1)) = exact_leading_coefficients(d) {
            results.push(field("uncorrelated_b0_b1", vec![num(b0), num(b1)]));
        }
    }
    Ok(Record {
        command: "series".into(),
        inputs: vec![
            field("d", d),
            field("alpha", num(a)),
            field("beta", num(b)),
            field("order", order),
            field("at_zb", at_zb),
        ],
        tolerances: vec![],
        status: Status::Ok,
        body: Body::Single(results),
    })
}

fn cmd_zc(d: u32, asymmetric: bool, o: &OutputArgs) -> Outcome {
    let fam = if asymmetric {
        if d != 3 {
            return Err("the three-parameter critical charge is three-dimensional".into());
        }
        ModelFamily::FiniteMass {
            m: 1.0,
            big_m: f64::INFINITY,
            e: -1.0,
            asymmetric: true,
        }
    } else {
        ModelFamily::Correlated { d }
    };
    let mut cfg = CriticalChargeConfig::new(fam);
    cfg.quadrature = quadrature(o);
    if let Some(t) = o.tol {
        cfg.tol = t;
    }
    let c = critical_charge(&cfg).map_err(|e| e.to_string())?;
    let mut results = vec![field("z_c", num(c.z_c)), field("g", num(c.g)), field("energy", num(c.energy))];
    results.extend(param_fields(&c.params, c.z_c));
    results.push(field("steps", c.steps));
    Ok(Record {
        command: "zc".into(),
        inputs: vec![field("d", d), field("asymmetric", asymmetric)],
        tolerances: vec![field("residual", num(cfg.tol))],
        status: Status::Ok,
        body: Body::Single(results),
    })
}

fn cmd_entropy(s: SystemArgs, t: TrialArgs, points: usize, o: &OutputArgs) -> Outcome {
    if !s.is_helium_like() {
        return Err("entropy needs a clamped nucleus, unit masses and charges -1".into());
    }
    let cfg = quadrature(o);
    let p = match t.params() {
        Some(p) => p,
        None => {
            let fam = ModelFamily::Correlated { d: s.d };
            let problem = fam.problem(s.z, default_starts(s.d, fam.layout()), &cfg);
            minimize(&problem).map_err(|e| e.to_string())?.params
        }
    };
    let ecfg = EntropyConfig {
        grid_points: points,
        quadrature: cfg,
        ..EntropyConfig::default()
    };
    let prof = shannon_entropy(s.d, s.z, &p, &ecfg).map_err(|e| e.to_string())?;
    let mut results = vec![
        field("entropy", num(prof.entropy)),
        field("normalization", num(prof.normalization)),
    ];
    results.extend(param_fields(&p, s.z));
    let mut inputs = s.inputs();
    inputs.extend(trial_inputs(&t));
    inputs.push(field("points", points));
    let mut tolerances = vec![field("normalization", num(ecfg.norm_tol))];
    tolerances.extend(quad_tolerances(&cfg));
    Ok(Record {
        command: "entropy".into(),
        inputs,
        tolerances,
        status: Status::Ok,
        body: Body::Single(results),
    })
}

fn cmd_reproduce(table: TableArg, strict_z2_only: bool, o: &OutputArgs) -> Outcome {
    let table = match table {
        TableArg::Table1 => Table::Table1,
        TableArg::Table2 => Table::Table2,
        TableArg::Table3 => Table::Table3,
        TableArg::Table4 => Table::Table4,
    };
    let mut opts = TableOptions {
        strict_z2_only,
        ..TableOptions::default()
    };
    if let Some(n) = o.quad_nodes {
        opts.quadrature = opts.quadrature.with_nodes(n);
        opts.entropy.quadrature = opts.quadrature;
    }
    let cells = reproduce(table, &opts);
    let failed = cells.iter().filter(|c| !c.pass).count();
    let mut tols: Vec<(String, f64)> = Vec::new();
    for c in &cells {
        if !tols.iter().any(|(q, t)| *q == c.quantity && *t == c.tolerance) {
            tols.push((c.quantity.clone(), c.tolerance));
        }
    }
    let rows = cells
        .iter()
        .map(|c| {
            vec![
                field("quantity", c.quantity.as_str()),
                field("d", c.d),
                field("Z", c.z),
                field("label", c.label.as_str()),
                field("computed", opt_num(c.computed)),
                field("reference", num(c.reference)),
                field("deviation", opt_num(c.deviation)),
                field("tolerance", num(c.tolerance)),
                field("status", if c.pass { "PASS" } else { "FAIL" }),
                field("error", c.error.clone().map_or(Value::Null, Value::from)),
            ]
        })
        .collect();
    Ok(Record {
        command: "reproduce".into(),
        inputs: vec![field("table", table.name()), field("strict_z2_only", strict_z2_only)],
        tolerances: tols
            .into_iter()
            .enumerate()
            .map(|(i, (q, t))| {
                let key = if tols_unique(&cells, &q) { q } else { format!("{q}#{i}") };
                (key, num(t))
            })
            .collect(),
        status: if failed == 0 { Status::Ok } else { Status::Fail },
        body: Body::Rows {
            rows,
            summary: vec![field("cells", cells.len()), field("failed", failed)],
        },
    })
}

/// True when every cell of `quantity` shares one tolerance.
fn tols_unique(cells: &[heliumd::tables::Cell], quantity: &str) -> bool {
    let mut it = cells.iter().filter(|c| c.quantity == quantity).map(|c| c.tolerance);
    let first = it.next();
    it.all(|t| Some(t) == first)
}

fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("HELIUMD_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| format!("HELIUMD_THREADS must be a positive integer, got {v:?}"))?;
        if n == 0 {
            return Err("HELIUMD_THREADS must be positive".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Status, String> {
    configure_threads()?;
    let o = cli.output.clone();
    let record = match cli.command {
        Command::Energy { system, trial, moments } => cmd_energy(system, trial, moments, &o),
        Command::Optimize { system, family, moments } => cmd_optimize(system, family, moments, &o),
        Command::Scan {
            system,
            family,
            z_from,
            z_to,
            z_step,
            cold,
            moments,
        } => cmd_scan(system, family, z_from, z_to, z_step, cold, moments, &o),
        Command::Series {
            d,
            trial,
            order,
            at_zb,
            point,
        } => cmd_series(d, trial, order, at_zb, point),
        Command::Zc { d, asymmetric } => cmd_zc(d, asymmetric, &o),
        Command::Entropy { system, trial, points } => cmd_entropy(system, trial, points, &o),
        Command::Reproduce { table, strict_z2_only } => cmd_reproduce(table, strict_z2_only, &o),
    }?;
    emit(&record.render(o.format)?, o.out.as_deref())?;
    Ok(record.status)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
