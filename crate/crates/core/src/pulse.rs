//! Two-level system in a static z field plus a periodic square-pulse x field,
//! `H(t) = −E₀(σz + f(t)σx)`, started in `|0⟩`.
//!
//! The pulse period is not free: the closed forms below hold only when
//! `T = 2Nπ/(E₀·sqrt(1+f₀²))`, which returns the state to `|0⟩⟨0|` at every
//! multiple of `T/2`. [`PulseParams`] derives `T` from `(E₀, f₀, N)`.
//! Beyond one period the solution is extended periodically via `τ = t mod T`.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::math;
use crate::matrix::Mat2;
use crate::state::{DensityMatrix, StateVector};

/// Pulse drive parameters with the derived period and level splitting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PulseParams {
    e0: f64,
    f0: f64,
    n_period: u32,
    period: f64,
    eps0: f64,
}

impl PulseParams {
    /// `e0 > 0` is the static field energy `μB_z`, `f0 > 0` the relative pulse
    /// amplitude, `n_period ≥ 1` the period index `N`.
    pub fn new(e0: f64, f0: f64, n_period: u32) -> Result<Self> {
        if !(f0.is_finite() && f0 > 0.0) {
            return Err(Error::BadParam { name: "f0", value: f0 });
        }
        let period = periodicity_t(e0, f0, n_period)?;
        Ok(PulseParams { e0, f0, n_period, period, eps0: e0 * math::sqrt(1.0 + f0 * f0) })
    }

    #[inline]
    pub fn e0(&self) -> f64 {
        self.e0
    }

    #[inline]
    pub fn f0(&self) -> f64 {
        self.f0
    }

    #[inline]
    pub fn n_period(&self) -> u32 {
        self.n_period
    }

    /// Drive period `T`.
    #[inline]
    pub fn period(&self) -> f64 {
        self.period
    }

    /// `ε₀ = E₀·sqrt(1+f₀²)`.
    #[inline]
    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    /// `τ = t mod T`, in `[0, T)`.
    #[inline]
    pub fn reduce(&self, t: f64) -> f64 {
        math::rem_euclid(t, self.period)
    }

    /// +1 on the first half-period, −1 on the second (`τ ≥ T/2`).
    #[inline]
    pub fn branch_sign(&self, t: f64) -> f64 {
        if self.reduce(t) < 0.5 * self.period {
            1.0
        } else {
            -1.0
        }
    }

    /// The Hamiltonian `−E₀(σz + f(t)σx)`.
    pub fn hamiltonian(&self, t: f64) -> Mat2 {
        self.hamiltonian_with_f(pulse_f(self, t))
    }

    pub(crate) fn hamiltonian_with_f(&self, f: f64) -> Mat2 {
        Mat2::real(-self.e0, -f * self.e0, -f * self.e0, self.e0)
    }
}

/// Period compatible with a pure return to `|0⟩` at `T/2`:
/// `T = 2nπ/(e0·sqrt(1+f0²))`.
pub fn periodicity_t(e0: f64, f0: f64, n: u32) -> Result<f64> {
    if !(e0.is_finite() && e0 > 0.0) {
        return Err(Error::BadParam { name: "e0", value: e0 });
    }
    if !(f0.is_finite() && f0 >= 0.0) {
        return Err(Error::BadParam { name: "f0", value: f0 });
    }
    if n == 0 {
        return Err(Error::BadParam { name: "n_period", value: 0.0 });
    }
    Ok(2.0 * n as f64 * core::f64::consts::PI / (e0 * math::sqrt(1.0 + f0 * f0)))
}

/// Square pulse: `+f0` for `τ < T/2`, `−f0` for `τ ≥ T/2`.
pub fn pulse_f(p: &PulseParams, t: f64) -> f64 {
    p.branch_sign(t) * p.f0
}

/// Closed-form density matrix at time `t`.
pub fn pulse_density(p: &PulseParams, t: f64) -> DensityMatrix {
    let f0 = p.f0;
    let q = 1.0 + f0 * f0;
    let x = 2.0 * p.eps0 * p.reduce(t);
    let (s2, c2) = (math::sin(x), math::cos(x));
    let rho00 = f0 * f0 / (2.0 * q) * c2 + (2.0 + f0 * f0) / (2.0 * q);
    let rho11 = f0 * f0 / q * {
        let s = math::sin(0.5 * x);
        s * s
    };
    let rho01 = Complex::new(f0 / (2.0 * q) * (1.0 - c2), -f0 / (2.0 * math::sqrt(q)) * s2)
        .scale(p.branch_sign(t));
    let m = Mat2::new(Complex::real(rho00), rho01, rho01.conj(), Complex::real(rho11));
    DensityMatrix::new(m).expect("closed-form pulse density matrix is a valid state")
}

/// Closed-form state vector: `c0 = cos ε₀τ + (i/√(1+f₀²)) sin ε₀τ`,
/// `c1 = ±(i f₀/√(1+f₀²)) sin ε₀τ`, sign flipping at `T/2`.
pub fn pulse_state(p: &PulseParams, t: f64) -> StateVector {
    let root = math::sqrt(1.0 + p.f0 * p.f0);
    let x = p.eps0 * p.reduce(t);
    let (s, c) = (math::sin(x), math::cos(x));
    let c0 = Complex::new(c, s / root);
    let c1 = Complex::new(0.0, p.branch_sign(t) * p.f0 / root * s);
    StateVector { c0, c1 }
}

/// Lewis phase of the pulse trajectory. The expectation of `i∂t − H` along
/// [`pulse_state`] vanishes on both half-periods, so the phase is the constant
/// of integration, fixed here to zero.
pub fn pulse_lewis_phase(_p: &PulseParams, _t: f64) -> f64 {
    0.0
}
