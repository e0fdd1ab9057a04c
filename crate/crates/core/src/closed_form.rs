//! Exact variational energies of the symmetric two-parameter trial
//! `exp(-αZ(r₁+r₂) - βr₁₂)` for d = 2, 3, 4, 5.
//!
//! Every formula is generic over [`Scalar`], so the same expression is used for
//! plain evaluation and for series expansions in `1/Z` or `Z - Z₀`.
//!
//! Inverse trigonometric factors use `acos` on its principal branch `(0, π)`.
//! For d = 4 the angle factor is `2·acos(β/(αZ)) = π − 2·csc⁻¹(αZ/β)`.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::hamiltonian::Poly3;
use crate::quadrature::{self, QuadratureConfig};
use crate::series::Scalar;
use crate::system::{ExponentTriple, SystemSpec, TrialParams};

fn guard<T: Scalar>(den: T, what: &str) -> Result<()> {
    if den.near_zero() {
        Err(Error::Singular(format!("{what} denominator vanishes")))
    } else {
        Ok(())
    }
}

/// `Σ c[i] zⁱ`.
fn poly<T: Scalar>(z: T, c: &[f64]) -> T {
    c.iter()
        .rev()
        .fold(T::lift(0.0), |acc, &x| acc * z + x)
}

pub(crate) fn e3<T: Scalar>(a: f64, b: f64, z: T) -> Result<T> {
    let num = poly(
        z,
        &[
            b * b * b + b * b,
            4.0 * a * b * b + 4.0 * a * b,
            7.0 * a * a * b + 5.0 * a * a - 4.0 * a * b,
            8.0 * a * a * a - 16.0 * a * a,
        ],
    );
    let den = poly(z, &[b * b, 5.0 * a * b, 8.0 * a * a]);
    guard(den, "d=3")?;
    Ok((z * a + b) * num / den)
}

pub(crate) fn e2<T: Scalar>(a: f64, b: f64, z: T) -> Result<T> {
    let az = z * a;
    let q = (az * az - b * b).sqrt()?;
    let ang = (T::lift(b) / az).acos()?;
    let qa = q * ang;
    let z2 = z * z;
    let z4 = z2 * z2;
    let big_a = z4 * z2 * (8.0 * (a - 4.0) * a.powi(5))
        + z4 * (a.powi(3) * b * (-9.0 * a * b - 10.0 * a + 16.0 * b))
        + z2 * (a * b.powi(3) * (3.0 * a * b + 14.0 * a + 16.0 * b))
        - z4 * qa * (3.0 * a.powi(3) * (a * (3.0 * b - 2.0) - 16.0 * b))
        - 2.0 * b.powi(5) * (b + 2.0);
    let big_b = z4 * z2 * (8.0 * a.powi(6)) + z4 * (a.powi(4) * b * b)
        - z2 * (11.0 * a * a * b.powi(4))
        - z4 * qa * (15.0 * a.powi(4) * b)
        + 2.0 * b.powi(6);
    guard(big_b, "d=2")?;
    Ok((az * az - b * b) * big_a / big_b)
}

pub(crate) fn e4<T: Scalar>(a: f64, b: f64, z: T) -> Result<T> {
    let az = z * a;
    let ratio = T::lift(b) / az;
    let q1 = (T::lift(1.0) - ratio * ratio).sqrt()?;
    let t = ratio.acos()? * 2.0;
    let z2 = z * z;
    let z4 = z2 * z2;
    let z5 = z4 * z;
    let z6 = z4 * z2;
    let z8 = z4 * z4;
    let poly_a = z8 * (256.0 * a.powi(7) * (4.0 - 3.0 * a))
        + z6 * (13.0 * a.powi(5) * b * (-303.0 * a * b + 102.0 * a + 608.0 * b))
        + z4 * (10.0 * a.powi(3) * b.powi(3) * (15.0 * a * b + 74.0 * a + 128.0 * b))
        - z2 * (8.0 * a * b.powi(5) * (27.0 * a * b + 26.0 * a + 16.0 * b))
        + 16.0 * b.powi(7) * (3.0 * b + 2.0);
    let ang_a = z5
        * 105.0
        * a.powi(4)
        * (z2 * (a * a * (21.0 * a * b - 2.0 * a - 32.0 * b))
            + 8.0 * b * b * (3.0 * a * b - 2.0 * a - 8.0 * b));
    let big_a = q1 * poly_a * 2.0 + ang_a * t;
    let poly_b = z8 * (256.0 * a.powi(8))
        + z6 * (2639.0 * a.powi(6) * b * b)
        + z4 * (690.0 * a.powi(4) * b.powi(4))
        - z2 * (136.0 * a * a * b.powi(6))
        + 16.0 * b.powi(8);
    let big_b = z5 * (945.0 * a.powi(5) * b) * (z2 * (3.0 * a * a) + 8.0 * b * b) * t
        - q1 * poly_b * 6.0;
    guard(big_b, "d=4")?;
    Ok((az * az - b * b) * big_a / big_b)
}

pub(crate) fn e5<T: Scalar>(a: f64, b: f64, z: T) -> Result<T> {
    let num = poly(
        z,
        &[
            b.powi(3) + 2.0 * b.powi(4),
            14.0 * a * b.powi(3) + 7.0 * a * b * b,
            19.0 * a * a * b + (42.0 * a - 4.0) * a * b * b,
            21.0 * a.powi(3) + 14.0 * (5.0 * a - 2.0) * a * a * b,
            64.0 * (a - 1.0) * a.powi(3),
        ],
    );
    let den = poly(
        z,
        &[
            2.0 * b.powi(3),
            16.0 * a * b * b,
            50.0 * a * a * b,
            64.0 * a.powi(3),
        ],
    );
    guard(den, "d=5")?;
    Ok((z * a + b) * num / den)
}

/// Generic dispatch on the dimension.
pub(crate) fn energy_generic<T: Scalar>(d: u32, a: f64, b: f64, z: T) -> Result<T> {
    match d {
        2 => e2(a, b, z),
        3 => e3(a, b, z),
        4 => e4(a, b, z),
        5 => e5(a, b, z),
        _ => domain(format!("no closed form for d = {d}")),
    }
}

fn check_args(d: u32, alpha: f64, beta: f64, z: f64) -> Result<()> {
    if !(alpha.is_finite() && beta.is_finite() && z.is_finite()) {
        return domain("parameters must be finite");
    }
    let az = alpha * z;
    if d % 2 == 0 {
        if az <= beta.abs() {
            return domain(format!("even d requires αZ > |β|, got αZ = {az}, β = {beta}"));
        }
    } else if !(az > 0.0 && az + beta > 0.0) {
        return domain(format!(
            "trial not square integrable: αZ = {az}, αZ + β = {}",
            az + beta
        ));
    }
    Ok(())
}

/// Rational energy for d = 3.
pub fn energy_3d(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    check_args(3, alpha, beta, z)?;
    e3(alpha, beta, z)
}

/// Energy for d = 2; requires `αZ > |β|`.
pub fn energy_2d(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    check_args(2, alpha, beta, z)?;
    e2(alpha, beta, z)
}

/// Energy for d = 4; requires `αZ > |β|`.
pub fn energy_4d(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    check_args(4, alpha, beta, z)?;
    e4(alpha, beta, z)
}

/// Energy for d = 5.
pub fn energy_5d(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    check_args(5, alpha, beta, z)?;
    e5(alpha, beta, z)
}

/// Closed-form energy for any supported dimension.
pub fn energy(d: u32, alpha: f64, beta: f64, z: f64) -> Result<f64> {
    if !(2..=5).contains(&d) {
        return domain(format!("no closed form for d = {d}"));
    }
    check_args(d, alpha, beta, z)?;
    energy_generic(d, alpha, beta, z)
}

/// Closed-form energy functional at fixed dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormEnergy {
    pub d: u32,
}

impl ClosedFormEnergy {
    pub fn new(d: u32) -> Result<Self> {
        if (2..=5).contains(&d) {
            Ok(Self { d })
        } else {
            domain(format!("no closed form for d = {d}"))
        }
    }

    pub fn evaluate(&self, alpha: f64, beta: f64, z: f64) -> Result<f64> {
        energy(self.d, alpha, beta, z)
    }
}

/// β = 0 energy, `p α²Z² + q αZ² + r αZ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncorrelatedEnergy {
    pub d: u32,
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl UncorrelatedEnergy {
    pub fn new(d: u32) -> Result<Self> {
        let (q, r) = match d {
            2 => (-4.0, 3.0 * PI / 8.0),
            3 => (-2.0, 5.0 / 8.0),
            4 => (-4.0 / 3.0, 35.0 * PI / 256.0),
            5 => (-1.0, 21.0 / 64.0),
            _ => return domain(format!("no uncorrelated closed form for d = {d}")),
        };
        Ok(Self { d, p: 1.0, q, r })
    }

    pub fn evaluate(&self, alpha: f64, z: f64) -> f64 {
        self.p * alpha * alpha * z * z + self.q * alpha * z * z + self.r * alpha * z
    }

    /// Minimizing `α` at charge `z`.
    pub fn optimal_alpha(&self, z: f64) -> f64 {
        -(self.q * z + self.r) / (2.0 * self.p * z)
    }
}

/// Energy of `exp(-αZ(r₁+r₂))`.
pub fn energy_uncorrelated(d: u32, alpha: f64, z: f64) -> Result<f64> {
    let u = UncorrelatedEnergy::new(d)?;
    if !(alpha > 0.0) {
        return domain(format!("α must be positive, got {alpha}"));
    }
    Ok(u.evaluate(alpha, z))
}

/// Two-dimensional norm `Λ(α, β)` of `exp(-2αZ(r₁+r₂) - 2βr₁₂)` against
/// `r₁r₂r₁₂/S`; equals 4 times the plain `dr₁dr₂dr₁₂` integral.
pub fn norm_2d(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    check_args(2, alpha, beta, z)?;
    let a = alpha * z;
    let b = beta;
    let w = (a - b) * (a + b);
    let q = w.sqrt();
    let s = (b / a).acos();
    Ok(PI * (q * (-2.0 * b.powi(4) + 8.0 * a.powi(4) + 9.0 * a * a * b * b)
        - 15.0 * a.powi(4) * b * s)
        / (16.0 * a * a * w.powf(3.5)))
}

/// `⟨r₁₂⟩` in two dimensions.
pub fn mean_r12_2d(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    check_args(2, alpha, beta, z)?;
    let a = alpha * z;
    let b = beta;
    let q = (a * a - b * b).sqrt();
    let qs = q * (b / a).acos();
    let num = -4.0 * b.powi(7) - 81.0 * a.powi(6) * b + 53.0 * a.powi(4) * b.powi(3)
        + 32.0 * a * a * b.powi(5)
        + 15.0 * a.powi(4) * (6.0 * b * b + a * a) * qs;
    let den = 2.0
        * (a * a - b * b)
        * (2.0 * b.powi(6) + 8.0 * a.powi(6) + a.powi(4) * b * b - 11.0 * a * a * b.powi(4)
            - 15.0 * a.powi(4) * b * qs);
    guard(den, "mean r12")?;
    Ok(num / den)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `order`-th derivative by Richardson-extrapolated central differences.
pub fn derivative(f: &dyn Fn(f64) -> Result<f64>, x: f64, order: u32, h: f64) -> Result<f64> {
    if order == 0 {
        return f(x);
    }
    let central = |h: f64| -> Result<f64> {
        let mut acc = 0.0;
        for i in 0..=order {
            let offset = f64::from(order) / 2.0 - f64::from(i);
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binomial(order, i) * f(x + offset * h)?;
        }
        Ok(acc / h.powi(order as i32))
    };
    let coarse = central(h)?;
    let fine = central(h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

fn fd_step(x: f64) -> f64 {
    1e-4 * x.abs().max(1.0)
}

/// `⟨(r₁+r₂)ⁿ r₁₂ᵏ⟩` from the generating norm `Λ(α, β)`.
///
/// Odd d differentiates `Λ` exactly through polynomial moments. d = 2 uses the
/// closed norm, other even d the quadrature norm; both with Richardson
/// differences.
pub fn mean_monomial(
    d: u32,
    alpha: f64,
    beta: f64,
    z: f64,
    n: u32,
    k: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_args(d, alpha, beta, z)?;
    if n == 0 && k == 0 {
        return Ok(1.0);
    }
    if d % 2 == 1 {
        let t = ExponentTriple::new(2.0 * alpha * z, 2.0 * alpha * z, 2.0 * beta);
        let w = Poly3::monomial(1.0, [1, 1, 1]).mul(&Poly3::sixteen_area_squared().pow((d - 3) / 2));
        let top = crate::finitemass::poly_integral(&w.mul(&Poly3::sum_power(n, k)), &t)?;
        let bottom = crate::finitemass::poly_integral(&w, &t)?;
        return Ok(top / bottom);
    }
    let lambda = |al: f64, be: f64| -> Result<f64> {
        if d == 2 {
            norm_2d(al, be, z)
        } else {
            let t = ExponentTriple::new(2.0 * al * z, 2.0 * al * z, 2.0 * be);
            quadrature::bare_integral(&Poly3::monomial(1.0, [1, 1, 1]), &t, d, cfg)
        }
    };
    let in_beta = |al: f64| derivative(&|be| lambda(al, be), beta, k, fd_step(beta));
    let mixed = derivative(&in_beta, alpha, n, fd_step(alpha))?;
    let factor = (-1.0 / (2.0 * z)).powi(n as i32) * (-0.5f64).powi(k as i32);
    Ok(factor * mixed / lambda(alpha, beta)?)
}

/// Energy of a symmetric static trial, closed form where available, otherwise
/// by quadrature.
pub fn energy_any_d(d: u32, alpha: f64, beta: f64, z: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if (2..=5).contains(&d) {
        energy(d, alpha, beta, z)
    } else {
        quadrature::expectation_h(
            &TrialParams::symmetric(alpha, beta),
            &SystemSpec::helium_like(d, z),
            cfg,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchor_values() {
        assert!((energy_3d(0.929044, -0.254746, 2.0).unwrap() + 2.889618).abs() < 1e-6);
        assert!((energy_3d(1.0, 0.0, 2.0).unwrap() + 2.75).abs() < 1e-14);
        assert!((energy_2d(1.87638, -0.53717, 2.0).unwrap() + 11.8350).abs() < 1e-4);
        assert!((energy_4d(0.6160175, -0.1650859, 2.0).unwrap() + 1.26809).abs() < 1e-5);
        assert!((energy_5d(0.460444, -0.121678, 2.0).unwrap() + 0.7077).abs() < 1e-4);
        assert!((energy_5d(1.0, 0.0, 1.0).unwrap() - 21.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn uncorrelated_reductions() {
        assert!((energy_2d(1.0, 0.0, 2.0).unwrap() - (-12.0 + 3.0 * PI / 4.0)).abs() < 1e-13);
        assert!((energy_4d(1.0, 0.0, 2.0).unwrap() - (-4.0 / 3.0 + 35.0 * PI / 128.0)).abs() < 1e-13);
        assert!((energy_uncorrelated(3, 1.0, 2.0).unwrap() + 2.75).abs() < 1e-15);
        let a = 1.0 - 5.0 / 32.0;
        assert!((energy_uncorrelated(3, a, 2.0).unwrap() + 2.84765625).abs() < 1e-14);
        assert!((energy_uncorrelated(5, 1.0, 2.0).unwrap() - 0.65625).abs() < 1e-15);
        assert!(energy_uncorrelated(6, 1.0, 2.0).is_err());
        for d in 2..=5 {
            for &(al, z) in &[(0.7, 2.0), (1.3, 5.0), (0.4, 1.0)] {
                let cf = energy(d, al, 0.0, z).unwrap();
                let un = energy_uncorrelated(d, al, z).unwrap();
                assert!((cf - un).abs() <= 1e-13 * un.abs().max(1.0), "d={d}: {cf} vs {un}");
            }
        }
    }

    #[test]
    fn domain_and_singular_errors() {
        assert!(matches!(energy_2d(0.1, -0.5, 2.0), Err(Error::Domain(_))));
        assert!(matches!(energy_4d(0.1, 0.5, 2.0), Err(Error::Domain(_))));
        assert!(matches!(norm_2d(0.1, 0.5, 2.0), Err(Error::Domain(_))));
        assert!(matches!(e3(1.0, 0.0, 0.0f64), Err(Error::Singular(_))));
    }

    #[test]
    fn branch_identity_acos_asec() {
        for i in 1..40 {
            let x = -0.975 + 0.05 * f64::from(i);
            if x.abs() < 1e-9 {
                continue;
            }
            // sec⁻¹(y) = acos(1/y)
            let asec = (1.0 / (1.0 / x)).acos();
            assert!((x.acos() - asec).abs() < 1e-14);
        }
    }

    #[test]
    fn r12_two_dimensions_table_values() {
        let r = mean_r12_2d(1.87638353, -0.53717103, 2.0).unwrap();
        assert!((r - 0.4668).abs() < 1e-4, "{r}");
    }

    #[test]
    fn norm_2d_homogeneity() {
        // Λ is homogeneous of degree -4 in (αZ, β).
        let (al, be, z) = (1.3, -0.4, 2.0);
        let base = norm_2d(al, be, z).unwrap();
        let k = 1.7;
        let scaled = norm_2d(al * k, be * k, z).unwrap();
        assert!((scaled - base * k.powi(-4)).abs() < 1e-13 * base);
    }
}
