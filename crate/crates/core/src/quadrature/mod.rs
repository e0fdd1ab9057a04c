//! Numerical evaluation of the variational integrals for any dimension d ≥ 2.
//!
//! The measure is `r₁r₂r₁₂ S^{d-3} dr₁dr₂dr₁₂` with `S` the area of the
//! triangle `(r₁, r₂, r₁₂)`. Integrands are polynomial prefactors times a single
//! exponential, so the Hamiltonian is applied analytically and only the
//! integration is numerical.
//!
//! Two schemes are available:
//! - product Gauss–Laguerre in perimetric coordinates, exact for odd d;
//! - a radial/simplex split `(η, σ, τ/2) = s·x`, where the radial integral over
//!   `s` is a Gamma function and the simplex is collapsed to the unit square and
//!   integrated with tanh–sinh, which absorbs the `S^{-1}` edge singularities of
//!   even d.

pub mod rules;

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::hamiltonian::{blocks, overlap_terms, reduced_h_terms, Couplings, Poly3};
use crate::system::{factorial, sphere_area, ExponentTriple, SystemSpec, TrialParams};

use rules::{gauss_laguerre, gauss_legendre, tanh_sinh_unit};

/// Integration scheme for the three-dimensional integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Perimetric Gauss–Laguerre for odd d, radial/simplex for even d.
    Auto,
    PerimetricLaguerre,
    RadialSimplex,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub nodes_per_axis: usize,
    pub scheme: Scheme,
    /// Multiplier on the exact decay rates used to scale Laguerre nodes.
    pub scale: f64,
    /// Largest relative change tolerated when the node count is doubled;
    /// `None` skips the check.
    pub tol: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            nodes_per_axis: 40,
            scheme: Scheme::Auto,
            scale: 1.0,
            tol: Some(1e-8),
        }
    }
}

impl QuadratureConfig {
    pub fn with_nodes(mut self, n: usize) -> Self {
        self.nodes_per_axis = n;
        self
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn unchecked(mut self) -> Self {
        self.tol = None;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.nodes_per_axis < 8 {
            return Err(Error::Config(format!(
                "nodes_per_axis must be >= 8, got {}",
                self.nodes_per_axis
            )));
        }
        if !(self.scale > 0.0) {
            return Err(Error::Config("node scale must be positive".into()));
        }
        Ok(())
    }

    fn resolve(&self, d: u32) -> Scheme {
        match self.scheme {
            Scheme::Auto if d % 2 == 1 => Scheme::PerimetricLaguerre,
            Scheme::Auto => Scheme::RadialSimplex,
            s => s,
        }
    }
}

/// Point in perimetric coordinates; every nonnegative point is a valid triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerimetricPoint {
    pub eta: f64,
    pub sigma: f64,
    pub tau: f64,
}

impl PerimetricPoint {
    pub fn from_distances(r1: f64, r2: f64, r12: f64) -> Self {
        Self {
            eta: -r1 + r2 + r12,
            sigma: r1 - r2 + r12,
            tau: 2.0 * (r1 + r2 - r12),
        }
    }

    /// `(r₁, r₂, r₁₂)`.
    pub fn distances(&self) -> [f64; 3] {
        [
            (self.sigma + self.tau / 2.0) / 2.0,
            (self.eta + self.tau / 2.0) / 2.0,
            (self.eta + self.sigma) / 2.0,
        ]
    }
}

/// `S²` from the three side lengths (Heron).
pub fn triangle_area_squared(r1: f64, r2: f64, r12: f64) -> f64 {
    (r1 + r2 + r12) * (r1 + r2 - r12) * (r1 - r2 + r12) * (-r1 + r2 + r12) / 16.0
}

/// Volume density `(2^d π^{d-1}/(d-2)!) r₁r₂r₁₂ S^{d-3}`.
///
/// The prefactor is exact for d = 3 and cancels in every normalized quantity.
pub fn weight(r1: f64, r2: f64, r12: f64, d: u32) -> Result<f64> {
    if d < 2 {
        return domain(format!("dimension must be >= 2, got {d}"));
    }
    let tol = 1e-14 * (r1 + r2 + r12);
    if r1 < 0.0 || r2 < 0.0 || r12 < 0.0 || r12 > r1 + r2 + tol || r1 > r2 + r12 + tol || r2 > r1 + r12 + tol
    {
        return domain(format!("({r1}, {r2}, {r12}) violates the triangle inequality"));
    }
    let k = 2f64.powi(d as i32) * std::f64::consts::PI.powi(d as i32 - 1) / factorial(d - 2);
    let s2 = triangle_area_squared(r1, r2, r12).max(0.0);
    let area_factor = if d == 3 {
        1.0
    } else {
        s2.powf((f64::from(d) - 3.0) / 2.0)
    };
    Ok(k * r1 * r2 * r12 * area_factor)
}

/// Integrals of each polynomial against `S^{d-3} exp(-A r₁ - B r₂ - C r₁₂)`
/// over `dr₁dr₂dr₁₂`, with node-doubling control.
pub fn bare_integrals(
    polys: &[&Poly3],
    t: &ExponentTriple,
    d: u32,
    cfg: &QuadratureConfig,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    if d < 2 {
        return domain(format!("dimension must be >= 2, got {d}"));
    }
    t.check()?;
    let scheme = cfg.resolve(d);
    let run = |n: usize| match scheme {
        Scheme::RadialSimplex => radial_simplex(polys, t, d, n),
        _ => perimetric_laguerre(polys, t, d, n, cfg.scale),
    };
    let Some(tol) = cfg.tol else {
        return Ok(run(cfg.nodes_per_axis));
    };
    // The two-dimensional simplex rule is cheap enough to refine further.
    let doublings = match scheme {
        Scheme::RadialSimplex => 4,
        _ => 1,
    };
    let mut n = cfg.nodes_per_axis;
    let mut coarse = run(n);
    let mut last = String::new();
    for _ in 0..doublings {
        n *= 2;
        let fine = run(n);
        match coarse.iter().zip(&fine).find(|(x, y)| {
            let scale = x.abs().max(y.abs()).max(f64::MIN_POSITIVE);
            (*x - *y).abs() > tol * scale
        }) {
            None => return Ok(fine),
            Some((x, y)) => last = format!("node doubling to {n} changed an integral from {x:e} to {y:e}"),
        }
        coarse = fine;
    }
    Err(Error::Accuracy(last))
}

/// Single-polynomial form of [`bare_integrals`].
pub fn bare_integral(p: &Poly3, t: &ExponentTriple, d: u32, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(bare_integrals(&[p], t, d, cfg)?[0])
}

fn perimetric_laguerre(polys: &[&Poly3], t: &ExponentTriple, d: u32, n: usize, scale: f64) -> Vec<f64> {
    let (a, b, c) = (t.a, t.b, t.c);
    let gamma = (f64::from(d) - 3.0) / 2.0;
    let odd = d % 2 == 1;
    let alpha = if odd { 0.0 } else { gamma };
    let rule = gauss_laguerre(n, alpha);
    // Decay rates along η, σ, τ.
    let rates = [(b + c) / 2.0, (a + c) / 2.0, (a + b) / 4.0];
    let axes: Vec<Vec<(f64, f64)>> = rates
        .iter()
        .map(|&k| {
            let ks = k * scale;
            rule.nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&x, &w)| {
                    let y = x / ks;
                    (y, w * (x * (1.0 - 1.0 / scale)).exp() / ks.powf(alpha + 1.0))
                })
                .collect()
        })
        .collect();
    let partials: Vec<Vec<f64>> = axes[0]
        .par_iter()
        .map(|&(eta, we)| {
            let mut acc = vec![0.0; polys.len()];
            for &(sigma, ws) in &axes[1] {
                for &(tau, wt) in &axes[2] {
                    let p = PerimetricPoint { eta, sigma, tau };
                    let r = p.distances();
                    let extra = (eta + sigma + tau / 2.0) / 32.0;
                    let area = if odd {
                        (extra * eta * sigma * tau).powi(gamma as i32)
                    } else {
                        extra.powf(gamma)
                    };
                    let w = we * ws * wt * area / 8.0;
                    for (out, poly) in acc.iter_mut().zip(polys) {
                        *out += w * poly.eval(r);
                    }
                }
            }
            acc
        })
        .collect();
    sum_partials(&partials, polys.len())
}

fn radial_simplex(polys: &[&Poly3], t: &ExponentTriple, d: u32, n: usize) -> Vec<f64> {
    let (a, b, c) = (t.a, t.b, t.c);
    let gamma = (f64::from(d) - 3.0) / 2.0;
    let nodes = tanh_sinh_unit(n);
    let prefactor = 0.25 / 4f64.powi(d as i32 - 3);
    let partials: Vec<Vec<f64>> = nodes
        .par_iter()
        .map(|nu| {
            let mut acc = vec![0.0; polys.len()];
            let (u, uc) = (nu.x, nu.xc);
            for nv in &nodes {
                let (v, vc) = (nv.x, nv.xc);
                // Duffy collapse: x₁ = u, x₂ = (1-u)v, x₃ = (1-u)(1-v).
                let one_minus = [uc, u + uc * vc, u + uc * v];
                let r = [one_minus[0] / 2.0, one_minus[1] / 2.0, one_minus[2] / 2.0];
                let lambda = (a * one_minus[0] + b * one_minus[1] + c * one_minus[2]) / 2.0;
                let singular = if d == 3 {
                    uc
                } else {
                    u.powf(gamma) * uc.powf(2.0 * gamma + 1.0) * v.powf(gamma) * vc.powf(gamma)
                };
                let w = nu.w * nv.w * singular * prefactor;
                for (out, poly) in acc.iter_mut().zip(polys) {
                    let mut s = 0.0;
                    for m in &poly.terms {
                        let g = m.pow[0] + m.pow[1] + m.pow[2];
                        let p = g + 2 * d - 4;
                        let mono = r[0].powi(m.pow[0] as i32)
                            * r[1].powi(m.pow[1] as i32)
                            * r[2].powi(m.pow[2] as i32);
                        s += m.coef * mono * factorial(p) / lambda.powi(p as i32 + 1);
                    }
                    *out += w * s;
                }
            }
            acc
        })
        .collect();
    sum_partials(&partials, polys.len())
}

fn sum_partials(partials: &[Vec<f64>], k: usize) -> Vec<f64> {
    let mut out = vec![0.0; k];
    for p in partials {
        for (o, x) in out.iter_mut().zip(p) {
            *o += x;
        }
    }
    out
}

fn check_static(system: &SystemSpec) -> Result<()> {
    system.validate()?;
    if !system.is_static() {
        return domain("quadrature handles the static-nucleus Hamiltonian only");
    }
    Ok(())
}

fn trial_blocks(trial: &TrialParams, system: &SystemSpec) -> Vec<(ExponentTriple, ExponentTriple)> {
    let t = trial.exponents(system.z);
    blocks(&t, &t.swapped())
}

/// `⟨ψ|H|ψ⟩/⟨ψ|ψ⟩` for the (symmetrized) static trial in `system.d` dimensions.
pub fn expectation_h(trial: &TrialParams, system: &SystemSpec, cfg: &QuadratureConfig) -> Result<f64> {
    check_static(system)?;
    let k = Couplings::of(system);
    let overlap = overlap_terms();
    let mut num = 0.0;
    let mut den = 0.0;
    for (ti, tj) in trial_blocks(trial, system) {
        let h = reduced_h_terms(&tj, &k, system.d);
        let v = bare_integrals(&[&h, &overlap], &ti.add(&tj), system.d, cfg)?;
        num += v[0];
        den += v[1];
    }
    Ok(num / den)
}

/// Normalized `⟨r₁ⁿ r₂ᵐ r₁₂ᵏ⟩`.
pub fn expectation_monomial(
    trial: &TrialParams,
    system: &SystemSpec,
    n: u32,
    m: u32,
    k: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_static(system)?;
    let top = Poly3::monomial(1.0, [n + 1, m + 1, k + 1]);
    let overlap = overlap_terms();
    let mut num = 0.0;
    let mut den = 0.0;
    for (ti, tj) in trial_blocks(trial, system) {
        let v = bare_integrals(&[&top, &overlap], &ti.add(&tj), system.d, cfg)?;
        num += v[0];
        den += v[1];
    }
    Ok(num / den)
}

/// Normalized one-particle radial density of a static trial.
///
/// Holds the norm and the inner rules so repeated evaluations on a grid only
/// pay for the two-dimensional inner integral.
#[derive(Debug, Clone)]
pub struct DensityEvaluator {
    d: u32,
    pairs: Vec<ExponentTriple>,
    decay: f64,
    norm: f64,
    theta: Vec<(f64, f64)>,
    unit: Vec<(f64, f64)>,
    tail: Vec<(f64, f64)>,
}

impl DensityEvaluator {
    pub fn new(trial: &TrialParams, system: &SystemSpec, cfg: &QuadratureConfig) -> Result<Self> {
        check_static(system)?;
        cfg.validate()?;
        let d = system.d;
        let overlap = overlap_terms();
        let mut pairs = Vec::new();
        let mut bare = 0.0;
        for (ti, tj) in trial_blocks(trial, system) {
            let s = ti.add(&tj);
            bare += bare_integral(&overlap, &s, d, cfg)?;
            pairs.push(s);
        }
        let decay = pairs
            .iter()
            .map(|p| p.b + p.c)
            .fold(f64::INFINITY, f64::min);
        // True volume constant is ω_d ω_{d-1} 2^{d-3}; the ω_{d-1} of the inner
        // angular integral cancels against it.
        let norm = sphere_area(d) * 2f64.powi(d as i32 - 3) * bare;
        let n = cfg.nodes_per_axis.max(48);
        let gl = gauss_legendre(n);
        let half_pi = std::f64::consts::FRAC_PI_2;
        let theta = gl
            .nodes
            .iter()
            .zip(&gl.weights)
            .map(|(x, w)| ((x + 1.0) * half_pi, w * half_pi))
            .collect();
        let unit = gl
            .nodes
            .iter()
            .zip(&gl.weights)
            .map(|(x, w)| ((x + 1.0) / 2.0, w / 2.0))
            .collect();
        let lag = gauss_laguerre(n, 0.0);
        let tail = lag
            .nodes
            .iter()
            .zip(&lag.weights)
            .map(|(&x, &w)| (x, w * x.exp()))
            .collect();
        Ok(Self {
            d,
            pairs,
            decay,
            norm,
            theta,
            unit,
            tail,
        })
    }

    fn inner(&self, r1: f64, r2: f64) -> f64 {
        let mut acc = 0.0;
        for &(th, wt) in &self.theta {
            let r12 = (r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * th.cos()).max(0.0).sqrt();
            let ang = if self.d == 2 {
                1.0
            } else {
                th.sin().powi(self.d as i32 - 2)
            };
            let psi2: f64 = self
                .pairs
                .iter()
                .map(|p| (-p.a * r1 - p.b * r2 - p.c * r12).exp())
                .sum();
            acc += wt * ang * psi2;
        }
        acc * r2.powi(self.d as i32 - 1)
    }

    /// `ρ(r₁)`, normalized so that `∫ ρ ω_d r^{d-1} dr = 1`.
    pub fn density(&self, r1: f64) -> Result<f64> {
        if !(r1 > 0.0) {
            return domain(format!("radius must be positive, got {r1}"));
        }
        let mut acc = 0.0;
        for &(x, w) in &self.unit {
            acc += w * r1 * self.inner(r1, x * r1);
        }
        for &(x, w) in &self.tail {
            acc += w / self.decay * self.inner(r1, r1 + x / self.decay);
        }
        Ok(acc / self.norm)
    }

    /// Slowest decay rate of the density's exponential tail.
    pub fn decay_rate(&self) -> f64 {
        self.pairs.iter().map(|p| p.a + p.c).fold(f64::INFINITY, f64::min)
    }
}

/// `ρ(r₁)` for a single radius.
pub fn density(r1: f64, trial: &TrialParams, system: &SystemSpec, cfg: &QuadratureConfig) -> Result<f64> {
    DensityEvaluator::new(trial, system, cfg)?.density(r1)
}
