//! Analytic variational energy of a three-body Coulomb system in three
//! dimensions with the (1 + P₁₂)-symmetrized correlated exponential trial.
//!
//! Two independent routes are provided: the rational function `P₁₀(Z)/P₈(Z)`
//! with tabulated coefficients (equal light masses and charges only), and a
//! matrix-element builder on exact exponential moments valid for any masses
//! and charges.

use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::hamiltonian::{blocks, overlap_terms, reduced_h_terms, Couplings, Poly3};
pub use crate::system::ExponentTriple;
use crate::system::{factorial, SystemSpec};

/// `16/((a+b)(a+c)(b+c))`: the integral of `exp(-a r₁ - b r₂ - c r₁₂)` over
/// perimetric volume `dη dσ dτ`, which is 8 times the volume `dr₁ dr₂ dr₁₂`.
pub fn base_integral(t: &ExponentTriple) -> Result<f64> {
    t.check()?;
    let (p, q, r) = t.pair_sums();
    Ok(16.0 / (p * q * r))
}

fn binomial(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(-1)^{n+m+k} ∂ⁿ_a ∂ᵐ_b ∂ᵏ_c I(a,b,c)`, i.e. the perimetric-volume integral
/// of `r₁ⁿ r₂ᵐ r₁₂ᵏ exp(-a r₁ - b r₂ - c r₁₂)`.
///
/// Leibniz expansion over the three simple poles `a+b`, `a+c`, `b+c`; every
/// term is positive.
pub fn moment(n: u32, m: u32, k: u32, t: &ExponentTriple) -> Result<f64> {
    t.check()?;
    Ok(moment_unchecked(n, m, k, t))
}

fn moment_unchecked(n: u32, m: u32, k: u32, t: &ExponentTriple) -> f64 {
    let (p, q, r) = t.pair_sums();
    let mut acc = 0.0;
    for n1 in 0..=n {
        let n2 = n - n1;
        for m1 in 0..=m {
            let m2 = m - m1;
            for k1 in 0..=k {
                let k2 = k - k1;
                let (ep, eq, er) = (n1 + m1, n2 + k1, m2 + k2);
                acc += binomial(n, n1) * binomial(m, m1) * binomial(k, k1) * factorial(ep)
                    / p.powi(ep as i32 + 1)
                    * factorial(eq)
                    / q.powi(eq as i32 + 1)
                    * factorial(er)
                    / r.powi(er as i32 + 1);
            }
        }
    }
    16.0 * acc
}

/// Integral of a polynomial prefactor against `exp(-a r₁ - b r₂ - c r₁₂)`.
pub fn poly_integral(p: &Poly3, t: &ExponentTriple) -> Result<f64> {
    t.check()?;
    Ok(p.terms
        .iter()
        .map(|x| x.coef * moment_unchecked(x.pow[0], x.pow[1], x.pow[2], t))
        .sum())
}

/// `E = P₁₀(Z)/P₈(Z)`; coefficients indexed by the power of `Z`.
///
/// All coefficients are divided by the third-particle mass `M`, so the
/// static-nucleus limit `M = ∞` is represented exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalEnergy {
    pub numerator: [f64; 11],
    pub denominator: [f64; 9],
    num: [Dd; 11],
    den: [Dd; 9],
}

impl RationalEnergy {
    /// Coefficients for `α_s = α₁+α₂`, `α_p = α₁α₂`, light masses `m`, third
    /// mass `big_m` and light charges `e`.
    pub fn new(alpha1: f64, alpha2: f64, beta: f64, m: f64, big_m: f64, e: f64) -> Result<Self> {
        if !(m > 0.0) || !(big_m > 0.0) {
            return domain("masses must be positive");
        }
        let s = Dd::from(alpha1) + alpha2;
        let p = Dd::from(alpha1) * alpha2;
        let b = Dd::from(beta);
        // Every coefficient carries one power of M; it is divided out here.
        let big = Dd::from(1.0);
        let small = Dd::from(if big_m.is_infinite() { 0.0 } else { m / big_m });
        let both = Dd::from(m);
        let e = Dd::from(e);
        let e2 = e * e;
        let sum = small + big;
        let (s2, s3, s4, s6) = (s * s, s * s * s, s.powi(4), s.powi(6));
        let (p2, p3, p4) = (p * p, p * p * p, p.powi(4));

        let mut c = [Dd::default(); 11];
        c[10] = s2
            * (s6 * (s * (2.0 * e * both + sum * s) - 2.0 * sum * p)
                + 128.0 * p3 * e * both * s
                + 128.0 * p4 * sum);
        c[9] = s
            * (s3
                * (p * s2 * (s * (2.0 * e2 * both - 23.0 * b * small - 21.0 * b * big)
                    + 4.0 * b * e * both)
                    + 2.0 * p2 * (s * (b * big + e2 * both) + 192.0 * b * e * both)
                    + b * s4 * (28.0 * e * both + 13.0 * sum * s))
                + 8.0 * p3 * s * (s * (5.0 * e2 * both + 58.0 * b * sum) + 40.0 * b * e * both)
                + 160.0 * p4 * b * big);
        c[8] = b
            * (s3
                * (2.0
                    * p
                    * s2
                    * (s * (13.0 * e2 * both - 55.0 * b * small - 42.0 * b * big)
                        + 212.0 * b * e * both)
                    + 4.0
                        * p2
                        * (s * (35.0 * e2 * both + 156.0 * b * small + 161.0 * b * big)
                            + 336.0 * b * e * both)
                    + s4 * (s * (2.0 * e2 * both + 73.0 * b * small + 75.0 * b * big)
                        + 172.0 * b * e * both))
                + 16.0
                    * p3
                    * s
                    * (s * (9.0 * e2 * both + 26.0 * b * small + 64.0 * b * big) + 8.0 * b * e * both)
                + 64.0 * p4 * b * big);
        c[7] = b
            * b
            * s
            * (32.0 * p3 * (26.0 * b * big + 5.0 * e2 * both)
                + s * (8.0
                    * p
                    * s2
                    * (s * (33.0 * e2 * both + 11.0 * b * small + 29.0 * b * big)
                        + 236.0 * b * e * both)
                    + 8.0
                        * p2
                        * (s * (79.0 * e2 * both + 138.0 * b * small + 256.0 * b * big)
                            + 168.0 * b * e * both)
                    + s4 * (s * (26.0 * e2 * both + 231.0 * b * small + 257.0 * b * big)
                        + 732.0 * b * e * both)));
        c[6] = 2.0
            * b.powi(3)
            * (32.0 * p3 * (4.0 * b * big + e2 * both)
                + s * (4.0
                    * p
                    * s2
                    * (s * (139.0 * e2 * both + 70.0 * b * small + 193.0 * b * big)
                        + 376.0 * b * e * both)
                    + 8.0
                        * p2
                        * (s * (67.0 * e2 * both + 30.0 * b * small + 166.0 * b * big)
                            + 24.0 * b * e * both)
                    + s4 * (s * (93.0 * e2 * both + 265.0 * b * small + 338.0 * b * big)
                        + 1012.0 * b * e * both)));
        c[5] = 2.0
            * b.powi(4)
            * s
            * (16.0 * p2 * (53.0 * b * big + 26.0 * e2 * both)
                + 4.0
                    * p
                    * s
                    * (s * (283.0 * e2 * both + 64.0 * b * small + 388.0 * b * big)
                        + 256.0 * b * e * both)
                + s3 * (s * (363.0 * e2 * both + 412.0 * b * small + 707.0 * b * big)
                    + 1648.0 * b * e * both));
        c[4] = 4.0
            * b.powi(5)
            * (16.0 * p2 * (7.0 * b * big + 4.0 * e2 * both)
                + 4.0
                    * p
                    * s
                    * (s * (153.0 * e2 * both + 8.0 * b * (small + 25.0 * big))
                        + 32.0 * b * e * both)
                + s3 * (s * (403.0 * e2 * both + 188.0 * b * small + 549.0 * b * big)
                    + 752.0 * b * e * both));
        c[3] = 8.0
            * b.powi(6)
            * s
            * (4.0 * p * (54.0 * b * big + 43.0 * e2 * both)
                + s * (s * (265.0 * e2 * both + 44.0 * b * small + 298.0 * b * big)
                    + 176.0 * b * e * both));
        c[2] = 16.0
            * b.powi(7)
            * (4.0 * p * (6.0 * b * big + 5.0 * e2 * both)
                + s * (s * (103.0 * e2 * both + 4.0 * b * small + 106.0 * b * big)
                    + 16.0 * b * e * both));
        c[1] = 704.0 * b.powi(8) * s * (b * big + e2 * both);
        c[0] = 128.0 * b.powi(9) * (b * big + e2 * both);

        let mut d = [Dd::default(); 9];
        d[8] = 2.0 * both * s2 * (64.0 * p3 + s6);
        d[7] = 2.0 * b * both * s * (80.0 * p3 + p * s4 + 192.0 * p2 * s2 + 13.0 * s6);
        d[6] = 2.0 * b * b * both * (32.0 * p3 + 202.0 * p * s4 + 432.0 * p2 * s2 + 73.0 * s6);
        d[5] = 2.0 * b.powi(3) * both * s * (336.0 * p2 + 664.0 * p * s2 + 295.0 * s4);
        d[4] = 4.0 * b.powi(4) * both * (48.0 * p2 + 424.0 * p * s2 + 361.0 * s4);
        d[3] = 16.0 * b.powi(5) * both * s * (64.0 * p + 127.0 * s2);
        d[2] = 32.0 * b.powi(6) * both * (8.0 * p + 51.0 * s2);
        d[1] = 704.0 * b.powi(7) * both * s;
        d[0] = 128.0 * b.powi(8) * both;

        Ok(Self {
            numerator: c.map(Dd::to_f64),
            denominator: d.map(Dd::to_f64),
            num: c,
            den: d,
        })
    }

    pub fn evaluate(&self, z: f64) -> Result<f64> {
        let horner = |c: &[Dd], z: f64| c.iter().rev().fold(Dd::default(), |acc, x| acc * z + *x);
        let scale = horner(&self.den.map(Dd::abs), z.abs()).to_f64();
        let den = horner(&self.den, z).to_f64();
        if den.abs() <= 1e-12 * scale.abs() || scale == 0.0 {
            return Err(Error::Singular(format!("P8({z}) vanishes")));
        }
        Ok(horner(&self.num, z).to_f64() / den)
    }
}

/// Symmetrized trial `φ(α₁Z, α₂Z, β) + φ(α₂Z, α₁Z, β)`.
pub fn symmetrized(alpha1: f64, alpha2: f64, beta: f64, z: f64) -> (ExponentTriple, ExponentTriple) {
    let t = ExponentTriple::new(alpha1 * z, alpha2 * z, beta);
    (t, t.swapped())
}

/// Energy from the tabulated rational function (equal light masses `m`, equal
/// light charges `e`, third particle of charge `z` and mass `big_m`).
pub fn energy_appendix(
    alpha1: f64,
    alpha2: f64,
    beta: f64,
    z: f64,
    m: f64,
    big_m: f64,
    e: f64,
) -> Result<f64> {
    let (t1, t2) = symmetrized(alpha1, alpha2, beta, z);
    for (ti, tj) in blocks(&t1, &t2) {
        ti.add(&tj).check()?;
    }
    RationalEnergy::new(alpha1, alpha2, beta, m, big_m, e)?.evaluate(z)
}

/// Energy of `ψ = φ(t₁) + φ(t₂)` assembled from exact moments.
///
/// Pass `t₂ = t₁.swapped()` for the symmetrized trial; `t₂ = t₁` gives the
/// unsymmetrized one.
pub fn energy_general(t1: &ExponentTriple, t2: &ExponentTriple, system: &SystemSpec) -> Result<f64> {
    system.validate()?;
    if system.d != 3 {
        return domain(format!(
            "finite-mass energy is three-dimensional, got d = {}",
            system.d
        ));
    }
    let k = Couplings::of(system);
    let overlap = overlap_terms();
    let mut num = 0.0;
    let mut den = 0.0;
    for (ti, tj) in blocks(t1, t2) {
        let sum = ti.add(&tj);
        num += poly_integral(&reduced_h_terms(&tj, &k, 3), &sum)?;
        den += poly_integral(&overlap, &sum)?;
    }
    if den <= 0.0 {
        return Err(Error::Singular("trial norm vanishes".into()));
    }
    Ok(num / den)
}
