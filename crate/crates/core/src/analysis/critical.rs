use crate::error::{Error, Result};
use crate::optimize::{default_starts, minimize, ModelFamily};
use crate::quadrature::QuadratureConfig;
use crate::system::{hydrogen_ground_energy, TrialParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalChargeConfig {
    pub family: ModelFamily,
    pub bracket: (f64, f64),
    /// Bracket used once if the first shows no sign change.
    pub wide_bracket: (f64, f64),
    /// Target `|g(Z_c)|`.
    pub tol: f64,
    pub max_steps: usize,
    /// Optima with an orbital exponent below this are treated as detached.
    pub detach_floor: f64,
    pub quadrature: QuadratureConfig,
}

impl CriticalChargeConfig {
    pub fn new(family: ModelFamily) -> Self {
        Self {
            family,
            bracket: (0.8, 1.2),
            wide_bracket: (0.5, 1.5),
            tol: 1e-8,
            max_steps: 200,
            detach_floor: 1e-3,
            quadrature: QuadratureConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalCharge {
    pub z_c: f64,
    /// `E(Z_c) - E_H(Z_c)` after re-optimization.
    pub g: f64,
    pub energy: f64,
    pub params: TrialParams,
    pub steps: usize,
}

struct Probe {
    g: f64,
    energy: f64,
    params: TrialParams,
}

impl Probe {
    /// Optimum with one electron at zero exponent: the two-electron state has
    /// dissolved into the one-electron threshold.
    fn detached(&self, floor: f64) -> bool {
        self.params.alpha1.min(self.params.alpha2) < floor
    }

    fn above_threshold(&self, floor: f64) -> bool {
        self.g > 0.0 || self.detached(floor)
    }
}

/// Charge at which the optimized two-particle energy meets the one-particle
/// threshold, by bisection with re-optimization at every probe.
///
/// The bound branch is followed downward from the upper bracket end by warm
/// starts only, since below threshold the global optimum of an asymmetric
/// trial is the detached configuration with `g = 0`.
pub fn critical_charge(cfg: &CriticalChargeConfig) -> Result<CriticalCharge> {
    let family = cfg.family;
    let d = family.dimension();
    let floor = cfg.detach_floor;
    let probe = |z: f64, warm: Option<TrialParams>| -> Result<Probe> {
        let starts = match warm {
            Some(w) => vec![w],
            None => default_starts(d, family.layout()),
        };
        let r = minimize(&family.problem(z, starts, &cfg.quadrature))?;
        Ok(Probe {
            g: r.energy - hydrogen_ground_energy(z, d)?,
            energy: r.energy,
            params: r.params,
        })
    };
    let mut brackets = vec![cfg.bracket, cfg.wide_bracket].into_iter();
    let (mut lo, mut hi, mut p_hi) = loop {
        let (lo, hi) = brackets.next().ok_or_else(|| {
            Error::Bracketing(format!(
                "no sign change of E - E_H on {:?} or {:?}",
                cfg.bracket, cfg.wide_bracket
            ))
        })?;
        let b = probe(hi, None)?;
        if b.above_threshold(floor) {
            continue;
        }
        let a = probe(lo, Some(b.params))?;
        if a.above_threshold(floor) {
            break (lo, hi, b);
        }
    };
    let mut steps = 0;
    loop {
        steps += 1;
        let mid = 0.5 * (lo + hi);
        let p = probe(mid, Some(p_hi.params))?;
        let bound = !p.detached(floor);
        if bound && p.g.abs() <= cfg.tol {
            return Ok(CriticalCharge {
                z_c: mid,
                g: p.g,
                energy: p.energy,
                params: p.params,
                steps,
            });
        }
        if steps >= cfg.max_steps || hi - lo < 1e-15 {
            return Err(Error::Accuracy(format!(
                "bisection stalled at Z = {mid} with g = {:e}",
                p.g
            )));
        }
        if p.above_threshold(floor) {
            lo = mid;
        } else {
            hi = mid;
            p_hi = p;
        }
    }
}
