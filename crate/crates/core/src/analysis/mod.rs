//! Secondary observables derived from the optimized trial functions.

mod critical;
mod entropy;
mod expansion;

pub use critical::{critical_charge, CriticalCharge, CriticalChargeConfig};
pub use entropy::{entropy_interpolation, shannon_entropy, DensityProfile, EntropyConfig};
pub use expansion::{
    exact_leading_coefficients, large_z_expansion, large_z_fit, taylor_at_zb, SeriesCoefficients,
    SeriesVariable,
};

/// Literature constants kept for comparison only.
pub mod constants {
    /// Branch point of the exact energy as a function of the charge.
    pub const Z_B: f64 = 0.9048539992;
    /// Exact energy at the branch point.
    pub const E_B: f64 = -0.407932489;
    /// Leading Puiseux coefficients of the exact energy at `Z_B`.
    pub const PUISEUX_P1: f64 = -1.123475;
    pub const PUISEUX_Q3: f64 = -0.197785;
    pub const PUISEUX_P2: f64 = -0.752842;
    /// Exact three-dimensional critical charge.
    pub const EXACT_CRITICAL_CHARGE: f64 = 0.91102822;
    /// Exact second coefficient of the 1/Z expansion in three dimensions.
    pub const EXACT_B2: f64 = -0.15766642946915;
}
