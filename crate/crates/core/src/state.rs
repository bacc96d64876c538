//! Validated density matrices and pure state vectors.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::math;
use crate::matrix::Mat2;

/// Acceptance bounds used when wrapping a matrix as a [`DensityMatrix`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub hermiticity: f64,
    pub trace: f64,
    pub positivity: f64,
}

impl Tolerances {
    /// Bounds applied by [`DensityMatrix::new`].
    pub const STRICT: Tolerances = Tolerances { hermiticity: 1e-12, trace: 1e-12, positivity: 1e-12 };

    /// Bounds for numerically propagated states. Trace and Hermiticity drift
    /// are allowed up to the propagator's drift threshold.
    pub const RUNTIME: Tolerances = Tolerances { hermiticity: 1e-6, trace: 1e-6, positivity: 1e-8 };
}

/// A 2×2 Hermitian, unit-trace, positive-semidefinite matrix.
///
/// The stored matrix is exactly what was validated; it is never
/// symmetrised or renormalised.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix {
    m: Mat2,
}

impl DensityMatrix {
    /// Validates `m` against [`Tolerances::STRICT`].
    pub fn new(m: Mat2) -> Result<Self> {
        Self::with_tolerances(m, Tolerances::STRICT)
    }

    pub fn with_tolerances(m: Mat2, tol: Tolerances) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NotFinite { what: "density matrix entry" });
        }
        let deviation = m.hermiticity_deviation();
        if deviation > tol.hermiticity {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = m.a00.re + m.a11.re;
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::TraceNotOne { trace });
        }
        let min_eigenvalue = hermitian_min_eigenvalue(&m);
        if min_eigenvalue < -tol.positivity {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(DensityMatrix { m })
    }

    /// `|0⟩⟨0|`, the ground state.
    pub const fn ground() -> Self {
        DensityMatrix { m: Mat2::diag(1.0, 0.0) }
    }

    /// The maximally mixed state `𝟙/2`.
    pub const fn maximally_mixed() -> Self {
        DensityMatrix { m: Mat2::diag(0.5, 0.5) }
    }

    #[inline]
    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    #[inline]
    pub fn rho00(&self) -> f64 {
        self.m.a00.re
    }

    #[inline]
    pub fn rho11(&self) -> f64 {
        self.m.a11.re
    }

    #[inline]
    pub fn rho01(&self) -> Complex {
        self.m.a01
    }

    #[inline]
    pub fn rho10(&self) -> Complex {
        self.m.a10
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        (self.m * self.m).trace().re
    }

    /// Eigenvalues `λ± = ½ ± sqrt(¼ + |ρ01|² − ρ00ρ11)`, largest first.
    ///
    /// A radicand in `[-1e-12, 0)` is treated as rounding and clamped.
    pub fn eigenvalues(&self) -> Result<(f64, f64)> {
        let radicand = 0.25 + self.m.a01.norm_sqr() - self.rho00() * self.rho11();
        if radicand < -1e-12 {
            return Err(Error::DiscriminantNegative { radicand });
        }
        let r = math::sqrt(radicand.max(0.0));
        Ok((0.5 + r, 0.5 - r))
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.m.max_abs_diff(&other.m)
    }
}

impl From<DensityMatrix> for Mat2 {
    fn from(rho: DensityMatrix) -> Mat2 {
        rho.m
    }
}

/// Smaller eigenvalue of the Hermitian part of `m`.
pub(crate) fn hermitian_min_eigenvalue(m: &Mat2) -> f64 {
    let a = m.a00.re;
    let d = m.a11.re;
    let b = (m.a01 + m.a10.conj()) * 0.5;
    let half_gap = math::sqrt(0.25 * (a - d) * (a - d) + b.norm_sqr());
    0.5 * (a + d) - half_gap
}

/// A normalised pure state `c0|0⟩ + c1|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector {
    pub c0: Complex,
    pub c1: Complex,
}

impl StateVector {
    /// Checks `|c0|² + |c1|² = 1` within 1e-12.
    pub fn new(c0: Complex, c1: Complex) -> Result<Self> {
        if !(c0.is_finite() && c1.is_finite()) {
            return Err(Error::NotFinite { what: "state amplitude" });
        }
        let norm_squared = c0.norm_sqr() + c1.norm_sqr();
        if (norm_squared - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { norm_squared });
        }
        Ok(StateVector { c0, c1 })
    }

    /// Rescales to unit norm. Fails on the zero vector.
    pub fn normalized(c0: Complex, c1: Complex) -> Result<Self> {
        let n = math::sqrt(c0.norm_sqr() + c1.norm_sqr());
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NotNormalized { norm_squared: n * n });
        }
        Ok(StateVector { c0: c0 / n, c1: c1 / n })
    }

    #[inline]
    pub fn amplitudes(&self) -> [Complex; 2] {
        [self.c0, self.c1]
    }

    /// `|ψ⟩⟨ψ|` as a raw matrix.
    pub fn outer(&self) -> Mat2 {
        Mat2::outer(self.amplitudes(), self.amplitudes())
    }

    /// `|ψ⟩⟨ψ|` validated as a density matrix.
    pub fn density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.outer())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex {
        self.c0.conj() * other.c0 + self.c1.conj() * other.c1
    }

    /// Multiplies both amplitudes by a global phase `e^{iθ}`.
    pub fn with_phase(&self, theta: f64) -> StateVector {
        let p = Complex::cis(theta);
        StateVector { c0: self.c0 * p, c1: self.c1 * p }
    }
}
