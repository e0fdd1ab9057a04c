//! Variational ground states of d-dimensional helium-like ions and of general
//! three-body Coulomb systems with a correlated exponential trial function.

pub mod analysis;
pub mod closed_form;
mod dd;
pub mod error;
pub mod finitemass;
pub mod hamiltonian;
pub mod optimize;
pub mod quadrature;
pub mod reference;
pub mod tables;
pub mod series;
pub mod system;

pub use error::{Error, Result};
pub use system::{
    cusps, hydrogen_ground_energy, Cusps, EnergyResult, ExponentTriple, SystemSpec, TrialParams,
};
