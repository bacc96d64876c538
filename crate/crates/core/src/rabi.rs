//! Rabi problem in the rotating-wave approximation,
//!
//! ```text
//! H_R(t) = [[E_g,              conj(g)·e^{iω₀t}],
//!           [g·e^{−iω₀t},      E_e            ]]
//! ```
//!
//! with complex coupling `g` (the product of field amplitude and dipole
//! element), started in the ground state `|g⟩`.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::math;
use crate::matrix::Mat2;
use crate::state::{DensityMatrix, StateVector};

/// Physical parameters of the RWA Rabi drive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RabiParams {
    pub e_g: f64,
    pub e_e: f64,
    pub omega0: f64,
    pub coupling: Complex,
}

impl RabiParams {
    /// Rejects non-finite values. A zero Rabi frequency is allowed here and
    /// rejected by the solvers that divide by it.
    pub fn new(e_g: f64, e_e: f64, omega0: f64, coupling: Complex) -> Result<Self> {
        for (name, v) in [("e_g", e_g), ("e_e", e_e), ("omega0", omega0)] {
            if !v.is_finite() {
                return Err(Error::BadParam { name, value: v });
            }
        }
        if !coupling.is_finite() {
            return Err(Error::NotFinite { what: "coupling" });
        }
        Ok(RabiParams { e_g, e_e, omega0, coupling })
    }

    /// Detuning `Θ = E_e − E_g − ω₀`.
    #[inline]
    pub fn theta(&self) -> f64 {
        self.e_e - self.e_g - self.omega0
    }

    /// Rabi frequency `Ω = sqrt(Θ²/4 + |g|²)`.
    #[inline]
    pub fn omega_rabi(&self) -> f64 {
        let th = self.theta();
        math::sqrt(0.25 * th * th + self.coupling.norm_sqr())
    }

    /// Ω, or [`Error::DegenerateDrive`] when it vanishes.
    pub fn checked_omega(&self) -> Result<f64> {
        let omega = self.omega_rabi();
        if omega > 0.0 {
            Ok(omega)
        } else {
            Err(Error::DegenerateDrive)
        }
    }

    /// Population period `π/Ω`; the state returns to `|g⟩⟨g|` after it.
    pub fn rabi_period(&self) -> Result<f64> {
        Ok(core::f64::consts::PI / self.checked_omega()?)
    }

    /// `H_R(t)`.
    pub fn hamiltonian(&self, t: f64) -> Mat2 {
        let phase = Complex::cis(self.omega0 * t);
        Mat2::new(
            Complex::real(self.e_g),
            self.coupling.conj() * phase,
            self.coupling * phase.conj(),
            Complex::real(self.e_e),
        )
    }
}

/// Closed-form density matrix at time `t`.
pub fn rabi_density(p: &RabiParams, t: f64) -> Result<DensityMatrix> {
    let omega = p.checked_omega()?;
    let th = p.theta();
    let g2 = p.coupling.norm_sqr();
    let (s, c) = (math::sin(omega * t), math::cos(omega * t));
    let (s2, c2) = (math::sin(2.0 * omega * t), math::cos(2.0 * omega * t));
    let w2 = omega * omega;

    let rho_gg = c * c + th * th / (4.0 * w2) * s * s;
    let rho_ee = g2 / w2 * s * s;
    let rho_ge = p.coupling.conj() * Complex::cis(p.omega0 * t) * Complex::new(th * c2 - th, 2.0 * omega * s2)
        / (4.0 * w2);
    DensityMatrix::new(Mat2::new(Complex::real(rho_gg), rho_ge, rho_ge.conj(), Complex::real(rho_ee)))
}

/// Pure state with `ρ(t) = |φ⟩⟨φ|`:
/// `c0 = cos Ωt + (iΘ/2Ω) sin Ωt`, `c1 = −(i g/Ω) e^{−iω₀t} sin Ωt`.
pub fn rabi_state(p: &RabiParams, t: f64) -> Result<StateVector> {
    let omega = p.checked_omega()?;
    let (s, c) = (math::sin(omega * t), math::cos(omega * t));
    let c0 = Complex::new(c, p.theta() / (2.0 * omega) * s);
    let c1 = -(p.coupling.mul_i() * Complex::cis(-p.omega0 * t)).scale(s / omega);
    Ok(StateVector { c0, c1 })
}

/// Floquet quasi-energy `ζ = (ω₀ − E_e − E_g)/2`.
pub fn floquet_quasienergy(p: &RabiParams) -> f64 {
    0.5 * (p.omega0 - p.e_e - p.e_g)
}

/// Schrödinger solution `e^{iζt}|φ(t)⟩`.
pub fn floquet_solution(p: &RabiParams, t: f64) -> Result<StateVector> {
    let phi = rabi_state(p, t)?;
    let psi = phi.with_phase(floquet_quasienergy(p) * t);
    StateVector::normalized(psi.c0, psi.c1)
}
