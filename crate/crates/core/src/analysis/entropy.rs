use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::quadrature::{DensityEvaluator, QuadratureConfig};
use crate::system::{sphere_area, SystemSpec, TrialParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyConfig {
    /// Points of the log-spaced radial grid.
    pub grid_points: usize,
    /// Tolerated deviation of `∫ρ` from one.
    pub norm_tol: f64,
    /// Largest relative tail contribution left beyond the grid.
    pub tail_tol: f64,
    pub quadrature: QuadratureConfig,
}

impl Default for EntropyConfig {
    fn default() -> Self {
        Self {
            grid_points: 400,
            norm_tol: 1e-5,
            tail_tol: 1e-8,
            quadrature: QuadratureConfig::default(),
        }
    }
}

/// Normalized one-particle density on a radial grid and its Shannon entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub d: u32,
    pub r_grid: Vec<f64>,
    pub rho: Vec<f64>,
    pub entropy: f64,
    /// `∫ ρ ω_d r^{d-1} dr` on the grid.
    pub normalization: f64,
}

/// Trapezoid rule in `u = ln r`, spectrally accurate for integrands that vanish
/// at both ends of the grid.
fn trapezoid(h: f64, f: &[f64]) -> f64 {
    let n = f.len();
    h * (f.iter().sum::<f64>() - 0.5 * (f[0] + f[n - 1]))
}

/// `S = -∫ ρ ln ρ ω_d r^{d-1} dr` for a static symmetric trial.
pub fn shannon_entropy(d: u32, z: f64, trial: &TrialParams, cfg: &EntropyConfig) -> Result<DensityProfile> {
    if cfg.grid_points < 16 {
        return Err(Error::Config("entropy grid needs at least 16 points".into()));
    }
    let system = SystemSpec::helium_like(d, z);
    let dens = DensityEvaluator::new(trial, &system, &cfg.quadrature)?;
    let kappa = dens.decay_rate();
    if !(kappa > 0.0) {
        return domain("density does not decay");
    }
    let omega = sphere_area(d);
    let r_min = 1e-7 / kappa;
    let mut r_max = 40.0 / kappa;
    // Extend the grid until the neglected tail is below tolerance.
    for _ in 0..20 {
        let rho = dens.density(r_max)?;
        let tail = rho * omega * r_max.powi(d as i32) / kappa * (1.0 + rho.ln().abs());
        if tail < cfg.tail_tol * 1e-2 {
            break;
        }
        r_max *= 1.5;
    }
    let n = cfg.grid_points;
    let (u0, u1) = (r_min.ln(), r_max.ln());
    let h = (u1 - u0) / (n - 1) as f64;
    let r_grid: Vec<f64> = (0..n).map(|i| (u0 + i as f64 * h).exp()).collect();
    let rho = r_grid
        .par_iter()
        .map(|&r| dens.density(r))
        .collect::<Result<Vec<f64>>>()?;
    let mass: Vec<f64> = r_grid
        .iter()
        .zip(&rho)
        .map(|(r, p)| p * omega * r.powi(d as i32))
        .collect();
    let normalization = trapezoid(h, &mass);
    if (normalization - 1.0).abs() > cfg.norm_tol {
        return Err(Error::Accuracy(format!(
            "density integrates to {normalization}, expected 1"
        )));
    }
    let info: Vec<f64> = mass
        .iter()
        .zip(&rho)
        .map(|(m, p)| if *p > 0.0 { -m * p.ln() } else { 0.0 })
        .collect();
    Ok(DensityProfile {
        d,
        r_grid,
        rho,
        entropy: trapezoid(h, &info),
        normalization,
    })
}

/// Empirical interpolation of `S^{(d)}(Z)` from the two-dimensional entropy.
pub fn entropy_interpolation(d: u32, z: f64, s2: f64) -> Result<f64> {
    let s0 = match d {
        3 => 2.5455,
        4 => 5.4919,
        5 => 8.7805,
        _ => return domain(format!("interpolation covers d = 3, 4, 5, got {d}")),
    };
    let df = f64::from(d);
    Ok(s0 + df / 2.0 * s2 + ((df - 1.0) * (df - 2.0) + 2.0) / (200.0 * z))
}
