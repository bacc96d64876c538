//! Coherence measures for qubit density matrices in the computational basis.

use crate::error::Result;
use crate::math;
use crate::pulse::PulseParams;
use crate::state::DensityMatrix;

/// l1-norm coherence: the sum of off-diagonal magnitudes, `|ρ01| + |ρ10|`.
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    rho.rho01().abs() + rho.rho10().abs()
}

/// Frobenius-norm coherence `sqrt(1 + 4|ρ01|² − 4ρ00ρ11)`.
///
/// This is the distance from `𝟙/2` scaled so that every pure state scores 1
/// and the maximally mixed state scores 0. The radicand is clamped to
/// `[0, 1]`; for a validated density matrix the clamp only absorbs rounding.
pub fn frobenius_coherence(rho: &DensityMatrix) -> f64 {
    let radicand = 1.0 + 4.0 * rho.rho01().norm_sqr() - 4.0 * rho.rho00() * rho.rho11();
    math::sqrt(radicand.clamp(0.0, 1.0))
}

/// Frobenius-norm coherence through the spectrum,
/// `sqrt(2((λ₊ − ½)² + (λ₋ − ½)²))`.
pub fn frobenius_coherence_spectral(rho: &DensityMatrix) -> Result<f64> {
    let (hi, lo) = rho.eigenvalues()?;
    Ok(math::sqrt(2.0 * ((hi - 0.5) * (hi - 0.5) + (lo - 0.5) * (lo - 0.5))))
}

/// Closed-form l1 coherence of the square-pulse trajectory started in `|0⟩`:
/// `(2f₀/(1+f₀²))·sqrt(sin²(ε₀τ)(1 + f₀²cos²(ε₀τ)))` with `τ = t mod T`.
pub fn l1_pulse_closed_form(p: &PulseParams, t: f64) -> f64 {
    let f0 = p.f0();
    let x = p.eps0() * p.reduce(t);
    let (s, c) = (math::sin(x), math::cos(x));
    2.0 * f0 / (1.0 + f0 * f0) * math::sqrt(s * s * (1.0 + f0 * f0 * c * c))
}
