use nalgebra::{DMatrix, DVector};

use crate::closed_form::{energy, energy_generic, UncorrelatedEnergy};
use crate::error::{domain, Error, Result};
use crate::series::Laurent;

/// Expansion variable of a [`SeriesCoefficients`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesVariable {
    /// Coefficients of `Z², Z, 1, 1/Z, …`.
    InverseZ,
    /// Coefficients of `1, (Z-Z₀), (Z-Z₀)², …`.
    ZMinusPoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    pub variable: SeriesVariable,
    pub point: f64,
    pub coeffs: Vec<f64>,
}

/// Large-charge expansion of the closed-form energy at fixed `(α, β)`.
///
/// The energy is evaluated on the Laurent variable `Z = 1/x`; for even d the
/// inverse cosine is expanded analytically.
pub fn large_z_expansion(d: u32, alpha: f64, beta: f64, order: usize) -> Result<SeriesCoefficients> {
    if !(alpha > 0.0) {
        return domain(format!("α must be positive, got {alpha}"));
    }
    let e = energy_generic(d, alpha, beta, Laurent::inverse_variable())?;
    let mut coeffs = Vec::with_capacity(order + 1);
    for j in 0..=order {
        let power = j as i32 - 2;
        if power > e.precision() {
            return Err(Error::Accuracy(format!(
                "order {order} exceeds the {} terms carried",
                e.precision() + 2
            )));
        }
        coeffs.push(e.coeff(power));
    }
    Ok(SeriesCoefficients {
        variable: SeriesVariable::InverseZ,
        point: f64::INFINITY,
        coeffs,
    })
}

/// Least-squares fit of `Z², Z, 1, 1/Z, 1/Z²` to direct evaluations on
/// `Z ∈ [10², 10⁴]`; returns the first three coefficients.
pub fn large_z_fit(d: u32, alpha: f64, beta: f64) -> Result<[f64; 3]> {
    let n = 41;
    let basis = 5;
    let mut a = DMatrix::<f64>::zeros(n, basis);
    let mut y = DVector::<f64>::zeros(n);
    for i in 0..n {
        let z = 10f64.powf(2.0 + 2.0 * i as f64 / (n - 1) as f64);
        let e = energy(d, alpha, beta, z)?;
        // Rows scaled by 1/Z² so every column is O(1).
        for j in 0..basis {
            a[(i, j)] = z.powi(-(j as i32));
        }
        y[i] = e / (z * z);
    }
    let svd = a.svd(true, true);
    let c = svd
        .solve(&y, 1e-14)
        .map_err(|e| Error::Accuracy(format!("least-squares fit failed: {e}")))?;
    Ok([c[0], c[1], c[2]])
}

/// Exact `(B₀, B₁)` of `E = -B₀Z² + B₁Z + …` from the uncorrelated energy
/// minimized at each charge.
pub fn exact_leading_coefficients(d: u32) -> Result<(f64, f64)> {
    let u = UncorrelatedEnergy::new(d)?;
    Ok((u.q * u.q / (4.0 * u.p), -u.q * u.r / (2.0 * u.p)))
}

/// Taylor coefficients of the three-dimensional energy in `Z - z_b`.
pub fn taylor_at_zb(alpha: f64, beta: f64, z_b: f64, order: usize) -> Result<SeriesCoefficients> {
    if order >= crate::series::TERMS {
        return Err(Error::Accuracy(format!("order {order} exceeds the terms carried")));
    }
    // Validates square integrability at the expansion point.
    energy(3, alpha, beta, z_b)?;
    let e = energy_generic(3, alpha, beta, Laurent::variable(z_b))?;
    Ok(SeriesCoefficients {
        variable: SeriesVariable::ZMinusPoint,
        point: z_b,
        coeffs: (0..=order).map(|j| e.coeff(j as i32)).collect(),
    })
}
