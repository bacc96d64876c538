//! Lewis–Riesenfeld invariant of the RWA Rabi drive.
//!
//! The rescaled invariant has the form
//!
//! ```text
//! 𝓘(t) = [[ξ²(t),        γ₁(t)     ],
//!         [conj(γ₁(t)),  C − ξ²(t) ]]
//! ```
//!
//! where `ξ²` solves an Ermakov–Pinney equation with `ξ²(0) = 1`,
//! `d(ξ²)/dt(0) = 0`, and `C` is the trace. For `C = 1` the invariant
//! coincides with the density matrix of the trajectory started in `|g⟩`;
//! for general `C` it equals `(C − 1)𝟙 + (2 − C)ρ(t)`.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::math;
use crate::matrix::{commutator, Mat2};
use crate::rabi::{floquet_quasienergy, RabiParams};

/// Entries of the rescaled invariant at one instant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantCoefficients {
    /// `|g⟩⟨g|` coefficient, equal to `ξ²`.
    pub delta1: f64,
    /// `|e⟩⟨e|` coefficient, `C − ξ²`.
    pub delta2: f64,
    /// `|g⟩⟨e|` coefficient.
    pub gamma1: Complex,
    /// `|e⟩⟨g|` coefficient, `conj(γ₁)`.
    pub gamma2: Complex,
    pub c_const: f64,
}

impl InvariantCoefficients {
    pub fn to_matrix(&self) -> Mat2 {
        Mat2::new(Complex::real(self.delta1), self.gamma1, self.gamma2, Complex::real(self.delta2))
    }
}

/// `ξ²(t) = ((2−C)|g|²/2Ω²) cos 2Ωt + (Θ² + 2C|g|²)/4Ω²`.
pub fn xi_squared(p: &RabiParams, t: f64, c_const: f64) -> Result<f64> {
    let omega = p.checked_omega()?;
    let g2 = p.coupling.norm_sqr();
    let th = p.theta();
    let w2 = omega * omega;
    Ok((2.0 - c_const) * g2 / (2.0 * w2) * math::cos(2.0 * omega * t) + (th * th + 2.0 * c_const * g2) / (4.0 * w2))
}

/// `ξξ̇ = ½ d(ξ²)/dt = −(2−C)|g|² sin(2Ωt)/(2Ω)`.
fn xi_xi_dot(p: &RabiParams, t: f64, c_const: f64, omega: f64) -> f64 {
    -(2.0 - c_const) * p.coupling.norm_sqr() * math::sin(2.0 * omega * t) / (2.0 * omega)
}

pub fn invariant_coefficients(p: &RabiParams, t: f64, c_const: f64) -> Result<InvariantCoefficients> {
    let omega = p.checked_omega()?;
    if p.coupling == Complex::ZERO {
        return Err(Error::ZeroCoupling);
    }
    if !c_const.is_finite() {
        return Err(Error::BadParam { name: "c_const", value: c_const });
    }
    let xi2 = xi_squared(p, t, c_const)?;
    let xxd = xi_xi_dot(p, t, c_const, omega);
    // γ₁ = [Θ/2 (ξ² − 1) − i ξξ̇] e^{iω₀t} / g
    let gamma1 = Complex::new(0.5 * p.theta() * (xi2 - 1.0), -xxd) * Complex::cis(p.omega0 * t) / p.coupling;
    Ok(InvariantCoefficients {
        delta1: xi2,
        delta2: c_const - xi2,
        gamma1,
        gamma2: gamma1.conj(),
        c_const,
    })
}

/// The rescaled invariant `𝓘(t)` as a matrix.
pub fn invariant_operator(p: &RabiParams, t: f64, c_const: f64) -> Result<Mat2> {
    invariant_coefficients(p, t, c_const).map(|c| c.to_matrix())
}

/// Largest entry of `∂𝓘/∂t + (1/i)[𝓘, H_R]` with the time derivative taken by
/// central difference of step `h`. Zero, up to `O(h²)`, for an exact invariant.
pub fn invariance_residual(p: &RabiParams, t: f64, h: f64, c_const: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::BadParam { name: "h", value: h });
    }
    let forward = invariant_operator(p, t + h, c_const)?;
    let backward = invariant_operator(p, t - h, c_const)?;
    let here = invariant_operator(p, t, c_const)?;
    let d_dt = (forward - backward) * (0.5 / h);
    // (1/i)[I, H] = −i[I, H]
    let flow = commutator(&here, &p.hamiltonian(t)).scale(Complex::new(0.0, -1.0));
    Ok((d_dt + flow).max_abs())
}

/// Residual of the Ermakov–Pinney equation
/// `ξ̈/ξ + ξ̇²/ξ² + 2Ω² = (Θ²/2 + C|g|²)/ξ²`, with `ξ = sqrt(ξ²)` differentiated
/// by central differences of step `h`. The closed-form `ξ²` solves it exactly.
///
/// Fails with `BadParam` where `ξ² ≤ 0` near `t`, since `ξ` is then not real.
pub fn ermakov_pinney_residual(p: &RabiParams, t: f64, c_const: f64, h: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::BadParam { name: "h", value: h });
    }
    let omega = p.checked_omega()?;
    let xi = |s: f64| -> Result<f64> {
        let x2 = xi_squared(p, s, c_const)?;
        if x2 > 0.0 {
            Ok(math::sqrt(x2))
        } else {
            Err(Error::BadParam { name: "xi_squared", value: x2 })
        }
    };
    let (lo, mid, hi) = (xi(t - h)?, xi(t)?, xi(t + h)?);
    let xi_dot = (hi - lo) / (2.0 * h);
    let xi_ddot = (hi - 2.0 * mid + lo) / (h * h);
    let th = p.theta();
    let rhs = (0.5 * th * th + c_const * p.coupling.norm_sqr()) / (mid * mid);
    Ok(xi_ddot / mid + xi_dot * xi_dot / (mid * mid) + 2.0 * omega * omega - rhs)
}

/// Lewis phase `θ(t) = ζt`, linear in time with the Floquet quasi-energy as
/// its rate.
pub fn lewis_phase(p: &RabiParams, t: f64) -> f64 {
    floquet_quasienergy(p) * t
}
