//! Density-matrix dynamics of periodically driven two-level systems.
//!
//! The crate is `no_std` (it needs `alloc` for time series and sampled
//! drives) and is organised around a handful of pure functions:
//!
//! - [`matrix`] and [`complex`]: 2×2 complex algebra.
//! - [`state`]: validated density matrices and pure state vectors.
//! - [`liouville`]: fixed-step RK4 propagation of `dρ/dt = -i[H(t), ρ]`.
//! - [`rabi`]: closed-form Rabi dynamics under the rotating-wave
//!   approximation, pure-state extraction and the Floquet quasi-energy.
//! - [`lewis`]: the Lewis–Riesenfeld invariant of the Rabi drive and its
//!   phase.
//! - [`pulse`]: closed-form dynamics under a periodic square-pulse field.
//! - [`coherence`]: l1-norm and Frobenius-norm coherence measures.
//!
//! Units have ħ = 1 throughout.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod coherence;
pub mod complex;
pub mod error;
pub mod grid;
pub mod lewis;
pub mod liouville;
mod math;
pub mod matrix;
pub mod pulse;
pub mod rabi;
pub mod state;

pub use coherence::{frobenius_coherence, frobenius_coherence_spectral, l1_coherence, l1_pulse_closed_form};
pub use complex::Complex;
pub use error::{Error, Result};
pub use grid::{Sample, TimeGrid, TimeSeries};
pub use lewis::{
    ermakov_pinney_residual, invariance_residual, invariant_coefficients, invariant_operator, lewis_phase,
    xi_squared, InvariantCoefficients,
};
pub use liouville::{check_switch_alignment, hamiltonian_at, liouville_rhs, propagate, DriveHamiltonian, SampledDrive};
pub use matrix::{commutator, Mat2};
pub use pulse::{periodicity_t, pulse_density, pulse_f, pulse_lewis_phase, pulse_state, PulseParams};
pub use rabi::{floquet_quasienergy, floquet_solution, rabi_density, rabi_state, RabiParams};
pub use state::{DensityMatrix, StateVector, Tolerances};
