//! Derivative-free minimization of energy functionals over trial parameters.

use rayon::prelude::*;

use crate::closed_form::{self, energy_uncorrelated, mean_monomial, mean_r12_2d};
use crate::error::{Error, Result};
use crate::finitemass::energy_appendix;
use crate::quadrature::QuadratureConfig;
use crate::system::{cusps, EnergyResult, TrialParams};

/// How a parameter vector maps onto [`TrialParams`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// `(α)` with `β = 0`.
    Alpha,
    /// `(α, β)` with `α₁ = α₂ = α`.
    AlphaBeta,
    /// `(α₁, α₂, β)`.
    Full,
}

impl Layout {
    pub fn dim(&self) -> usize {
        match self {
            Layout::Alpha => 1,
            Layout::AlphaBeta => 2,
            Layout::Full => 3,
        }
    }

    pub fn to_params(&self, x: &[f64]) -> TrialParams {
        match self {
            Layout::Alpha => TrialParams::symmetric(x[0], 0.0),
            Layout::AlphaBeta => TrialParams::symmetric(x[0], x[1]),
            Layout::Full => TrialParams {
                alpha1: x[0],
                alpha2: x[1],
                beta: x[2],
            },
        }
    }

    pub fn from_params(&self, p: &TrialParams) -> Vec<f64> {
        match self {
            Layout::Alpha => vec![p.alpha1],
            Layout::AlphaBeta => vec![p.alpha1, p.beta],
            Layout::Full => vec![p.alpha1, p.alpha2, p.beta],
        }
    }
}

pub type Model<'a> = Box<dyn Fn(&TrialParams) -> Result<f64> + Send + Sync + 'a>;

/// Energy model, parameter layout, admissible box and start points.
pub struct OptimizationProblem<'a> {
    pub model: Model<'a>,
    pub layout: Layout,
    pub bounds: Vec<(f64, f64)>,
    pub starts: Vec<TrialParams>,
    /// Convergence tolerance on the energy spread of the simplex (a.u.).
    pub tol: f64,
    /// Convergence tolerance on the simplex diameter.
    pub xtol: f64,
    pub max_iter: usize,
    /// Charge used to report cusp values.
    pub z: f64,
}

impl<'a> OptimizationProblem<'a> {
    pub fn new(model: Model<'a>, layout: Layout, starts: Vec<TrialParams>, z: f64) -> Self {
        Self {
            model,
            layout,
            bounds: vec![(f64::NEG_INFINITY, f64::INFINITY); layout.dim()],
            starts,
            tol: 1e-13,
            xtol: 1e-8,
            max_iter: 20_000,
            z,
        }
    }

    fn objective(&self, x: &[f64]) -> f64 {
        if x
            .iter()
            .zip(&self.bounds)
            .any(|(v, (lo, hi))| !(v >= lo && v <= hi))
        {
            return f64::INFINITY;
        }
        match (self.model)(&self.layout.to_params(x)) {
            Ok(e) if e.is_finite() => e,
            _ => f64::INFINITY,
        }
    }
}

struct Run {
    x: Vec<f64>,
    f: f64,
    iterations: usize,
    converged: bool,
}

fn nelder_mead(p: &OptimizationProblem, x0: &[f64], budget: usize) -> Run {
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut v = x0.to_vec();
        let step = 0.05 * x0[i].abs().max(0.1);
        v[i] += step;
        if !p.objective(&v).is_finite() {
            v[i] = x0[i] - step;
        }
        simplex.push(v);
    }
    let mut fs: Vec<f64> = simplex.iter().map(|v| p.objective(v)).collect();
    let mut it = 0;
    let mut converged = false;
    while it < budget {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| fs[a].total_cmp(&fs[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        fs = order.iter().map(|&i| fs[i]).collect();
        let spread = fs[n] - fs[0];
        let diameter = simplex[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread <= p.tol && diameter <= p.xtol {
            converged = true;
            break;
        }
        it += 1;
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = p.objective(&xr);
        if fr < fs[0] {
            let xe = along(-2.0);
            let fe = p.objective(&xe);
            if fe < fr {
                simplex[n] = xe;
                fs[n] = fe;
            } else {
                simplex[n] = xr;
                fs[n] = fr;
            }
            continue;
        }
        if fr < fs[n - 1] {
            simplex[n] = xr;
            fs[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < fs[n] {
            let xc = along(-0.5);
            let fc = p.objective(&xc);
            (xc, fc)
        } else {
            let xc = along(0.5);
            let fc = p.objective(&xc);
            (xc, fc)
        };
        if fc < fs[n].min(fr) {
            simplex[n] = xc;
            fs[n] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=n {
            simplex[i] = simplex[i]
                .iter()
                .zip(&best)
                .map(|(v, b)| b + 0.5 * (v - b))
                .collect();
            fs[i] = p.objective(&simplex[i]);
        }
    }
    let (ib, _) = fs
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &f)| if f < acc.1 { (i, f) } else { acc });
    Run {
        x: simplex[ib].clone(),
        f: fs[ib],
        iterations: it,
        converged,
    }
}

/// Nelder–Mead restarted at its own optimum until the energy improves by less
/// than `tol/10`.
fn polish(p: &OptimizationProblem, x0: &[f64]) -> Run {
    let mut run = nelder_mead(p, x0, p.max_iter);
    let mut total = run.iterations;
    for _ in 0..20 {
        if total >= p.max_iter {
            break;
        }
        let next = nelder_mead(p, &run.x, p.max_iter - total);
        total += next.iterations;
        let gain = run.f - next.f;
        let done = gain < p.tol / 10.0;
        if next.f <= run.f {
            run = Run {
                converged: next.converged,
                ..next
            };
        }
        if done {
            break;
        }
    }
    run.iterations = total;
    run
}

/// Best local minimum over all feasible starts.
pub fn minimize(problem: &OptimizationProblem) -> Result<EnergyResult> {
    let starts: Vec<Vec<f64>> = problem
        .starts
        .iter()
        .map(|s| problem.layout.from_params(s))
        .filter(|x| problem.objective(x).is_finite())
        .collect();
    if starts.is_empty() {
        return Err(Error::Config("no feasible start point".into()));
    }
    let runs: Vec<Run> = starts.par_iter().map(|x| polish(problem, x)).collect();
    let best = runs
        .into_iter()
        .reduce(|a, b| if b.f < a.f { b } else { a })
        .expect("at least one run");
    let params = problem.layout.to_params(&best.x);
    Ok(EnergyResult {
        energy: best.f,
        params,
        cusps: cusps(&params, problem.z),
        iterations: best.iterations,
        converged: best.converged,
    })
}

/// Deterministic five-point lattice around the hydrogenic length scale of
/// dimension `d`.
pub fn default_starts(d: u32, layout: Layout) -> Vec<TrialParams> {
    let a0 = 2.0 / (f64::from(d) - 1.0);
    let b0 = -0.25 * a0;
    match layout {
        Layout::Alpha => [1.0, 0.9, 1.1, 0.8, 1.2]
            .iter()
            .map(|k| TrialParams::symmetric(k * a0, 0.0))
            .collect(),
        Layout::AlphaBeta => [(1.0, 1.0), (1.1, 1.0), (0.9, 1.0), (1.0, 1.5), (1.0, 0.5)]
            .iter()
            .map(|(ka, kb)| TrialParams::symmetric(ka * a0, kb * b0))
            .collect(),
        Layout::Full => [(1.0, 1.0, 1.0), (1.2, 0.8, 1.0), (1.3, 0.6, 0.8), (1.1, 0.9, 1.5), (1.0, 1.0, 0.5)]
            .iter()
            .map(|(k1, k2, kb)| TrialParams {
                alpha1: k1 * a0,
                alpha2: k2 * a0,
                beta: kb * b0,
            })
            .collect(),
    }
}

/// Energy functional families that can be scanned over the charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelFamily {
    /// Symmetric correlated trial, closed form for d = 2..5, quadrature otherwise.
    Correlated { d: u32 },
    /// `β = 0` trial.
    Uncorrelated { d: u32 },
    /// d = 3 symmetrized trial with equal light masses `m` and charges `e`,
    /// third mass `big_m`; `asymmetric` releases `α₁ = α₂`.
    FiniteMass {
        m: f64,
        big_m: f64,
        e: f64,
        asymmetric: bool,
    },
}

impl ModelFamily {
    pub fn dimension(&self) -> u32 {
        match self {
            ModelFamily::Correlated { d } | ModelFamily::Uncorrelated { d } => *d,
            ModelFamily::FiniteMass { .. } => 3,
        }
    }

    pub fn layout(&self) -> Layout {
        match self {
            ModelFamily::Correlated { .. } => Layout::AlphaBeta,
            ModelFamily::Uncorrelated { .. } => Layout::Alpha,
            ModelFamily::FiniteMass { asymmetric, .. } => {
                if *asymmetric {
                    Layout::Full
                } else {
                    Layout::AlphaBeta
                }
            }
        }
    }

    pub fn energy(&self, p: &TrialParams, z: f64, cfg: &QuadratureConfig) -> Result<f64> {
        match *self {
            ModelFamily::Correlated { d } => closed_form::energy_any_d(d, p.alpha1, p.beta, z, cfg),
            ModelFamily::Uncorrelated { d } => energy_uncorrelated(d, p.alpha1, z),
            ModelFamily::FiniteMass { m, big_m, e, .. } => {
                energy_appendix(p.alpha1, p.alpha2, p.beta, z, m, big_m, e)
            }
        }
    }

    pub fn problem<'a>(&'a self, z: f64, starts: Vec<TrialParams>, cfg: &'a QuadratureConfig) -> OptimizationProblem<'a> {
        OptimizationProblem::new(
            Box::new(move |p: &TrialParams| self.energy(p, z, cfg)),
            self.layout(),
            starts,
            z,
        )
    }

    /// `⟨r₁₂⟩` where the family supports it.
    pub fn mean_r12(&self, p: &TrialParams, z: f64, cfg: &QuadratureConfig) -> Option<f64> {
        match *self {
            ModelFamily::Correlated { d: 2 } => mean_r12_2d(p.alpha1, p.beta, z).ok(),
            ModelFamily::Correlated { d } => mean_monomial(d, p.alpha1, p.beta, z, 0, 1, cfg).ok(),
            _ => None,
        }
    }
}

/// One optimized point of a charge scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub z: f64,
    pub result: EnergyResult,
    pub mean_r12: Option<f64>,
}

/// Optimizes at each charge, optionally starting from the previous optimum.
pub fn scan_z(
    family: &ModelFamily,
    zs: &[f64],
    warm_start: bool,
    with_moments: bool,
    cfg: &QuadratureConfig,
) -> Vec<Result<ScanRow>> {
    let lattice = default_starts(family.dimension(), family.layout());
    let mut out = Vec::with_capacity(zs.len());
    let mut previous: Option<TrialParams> = None;
    for &z in zs {
        let starts = match (warm_start, previous) {
            (true, Some(p)) => vec![p],
            _ => lattice.clone(),
        };
        let row = minimize(&family.problem(z, starts, cfg)).map(|result| ScanRow {
            z,
            result,
            mean_r12: if with_moments {
                family.mean_r12(&result.params, z, cfg)
            } else {
                None
            },
        });
        previous = row.as_ref().ok().map(|r| r.result.params).or(previous);
        out.push(row);
    }
    out
}

/// Optimum of `family` at a single charge from the default lattice.
pub fn optimize_at(family: &ModelFamily, z: f64, cfg: &QuadratureConfig) -> Result<EnergyResult> {
    let starts = default_starts(family.dimension(), family.layout());
    minimize(&family.problem(z, starts, cfg))
}
