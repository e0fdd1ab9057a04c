//! Domain types and the elementary relations shared by every solver stage.

use crate::error::{domain, Result};

/// Three charged particles: two light particles (1, 2) and a third particle of
/// charge magnitude `z` and mass `big_m`.
///
/// Charges are signed. A helium-like ion is `e1 = e2 = -1`, `z > 0`.
/// `big_m = f64::INFINITY` selects the static-nucleus Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSpec {
    pub d: u32,
    pub z: f64,
    pub e1: f64,
    pub e2: f64,
    pub m1: f64,
    pub m2: f64,
    pub big_m: f64,
}

impl SystemSpec {
    /// Two electrons around a clamped nucleus of charge `z` in `d` dimensions.
    pub fn helium_like(d: u32, z: f64) -> Self {
        Self {
            d,
            z,
            e1: -1.0,
            e2: -1.0,
            m1: 1.0,
            m2: 1.0,
            big_m: f64::INFINITY,
        }
    }

    /// General three-body system in three dimensions.
    pub fn three_body(z: f64, e1: f64, e2: f64, m1: f64, m2: f64, big_m: f64) -> Self {
        Self {
            d: 3,
            z,
            e1,
            e2,
            m1,
            m2,
            big_m,
        }
    }

    pub fn is_static(&self) -> bool {
        self.big_m.is_infinite()
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return domain(format!("dimension must be >= 2, got {}", self.d));
        }
        for (name, m) in [("m1", self.m1), ("m2", self.m2), ("M", self.big_m)] {
            if !(m > 0.0) {
                return domain(format!("mass {name} must be positive, got {m}"));
            }
        }
        if !self.z.is_finite() || !self.e1.is_finite() || !self.e2.is_finite() {
            return domain("charges must be finite");
        }
        Ok(())
    }
}

/// Nonlinear parameters of `exp(-α₁Z r₁ - α₂Z r₂ - β r₁₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialParams {
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta: f64,
}

impl TrialParams {
    pub fn symmetric(alpha: f64, beta: f64) -> Self {
        Self {
            alpha1: alpha,
            alpha2: alpha,
            beta,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha1 == self.alpha2
    }

    /// Decay rates `(α₁Z, α₂Z, β)`.
    pub fn exponents(&self, z: f64) -> ExponentTriple {
        ExponentTriple::new(self.alpha1 * z, self.alpha2 * z, self.beta)
    }
}

/// Literal decay rates `(a, b, c)` for `(r₁, r₂, r₁₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentTriple {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ExponentTriple {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    /// Exchange of particles 1 and 2.
    pub fn swapped(&self) -> Self {
        Self::new(self.b, self.a, self.c)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c)
    }

    /// Pairwise sums `(a+b, a+c, b+c)`; all must be positive for square integrability.
    pub fn pair_sums(&self) -> (f64, f64, f64) {
        (self.a + self.b, self.a + self.c, self.b + self.c)
    }

    pub fn is_convergent(&self) -> bool {
        let (p, q, r) = self.pair_sums();
        p > 0.0 && q > 0.0 && r > 0.0
    }

    pub fn check(&self) -> Result<()> {
        if self.is_convergent() {
            Ok(())
        } else {
            domain(format!(
                "exponents ({}, {}, {}) violate a+b>0, a+c>0, b+c>0",
                self.a, self.b, self.c
            ))
        }
    }
}

/// Coalescence cusp values of the trial function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cusps {
    /// Particle-1 and particle-2 cusps at the third particle.
    pub nu1: [f64; 2],
    /// Cusp at the 1-2 coalescence.
    pub nu2: f64,
}

/// Outcome of a variational optimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    pub energy: f64,
    pub params: TrialParams,
    pub cusps: Cusps,
    pub iterations: usize,
    pub converged: bool,
}

/// Ground-state energy of the one-electron ion, `-2Z²/(d-1)²`.
pub fn hydrogen_ground_energy(z: f64, d: u32) -> Result<f64> {
    if d < 2 {
        return domain(format!("dimension must be >= 2, got {d}"));
    }
    let n = f64::from(d - 1);
    Ok(-2.0 * z * z / (n * n))
}

/// `nu1 = (-α₁Z, -α₂Z)`, `nu2 = -β`.
pub fn cusps(params: &TrialParams, z: f64) -> Cusps {
    Cusps {
        nu1: [-params.alpha1 * z, -params.alpha2 * z],
        nu2: -params.beta,
    }
}

/// Surface area of the unit sphere in `d` dimensions, `2π^{d/2}/Γ(d/2)`.
pub fn sphere_area(d: u32) -> f64 {
    2.0 * std::f64::consts::PI.powf(f64::from(d) / 2.0) / gamma_half(d)
}

/// `Γ(n/2)` for positive integer `n`.
pub fn gamma_half(n: u32) -> f64 {
    assert!(n > 0);
    let (mut g, mut k) = if n % 2 == 0 {
        (1.0, 2)
    } else {
        (std::f64::consts::PI.sqrt(), 1)
    };
    while k < n {
        g *= f64::from(k) / 2.0;
        k += 2;
    }
    g
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * f64::from(k))
}
