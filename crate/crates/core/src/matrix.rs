//! 2×2 complex matrices.

use core::ops::{Add, Mul, Neg, Sub};

use crate::complex::Complex;
use crate::error::{Error, Result};

/// A 2×2 complex matrix stored row-major as `[[a00, a01], [a10, a11]]`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Mat2 {
    pub a00: Complex,
    pub a01: Complex,
    pub a10: Complex,
    pub a11: Complex,
}

impl Mat2 {
    pub const ZERO: Mat2 = Mat2::new(Complex::ZERO, Complex::ZERO, Complex::ZERO, Complex::ZERO);
    pub const IDENTITY: Mat2 = Mat2::new(Complex::ONE, Complex::ZERO, Complex::ZERO, Complex::ONE);
    pub const SIGMA_X: Mat2 = Mat2::new(Complex::ZERO, Complex::ONE, Complex::ONE, Complex::ZERO);
    pub const SIGMA_Y: Mat2 = Mat2::new(
        Complex::ZERO,
        Complex::new(0.0, -1.0),
        Complex::new(0.0, 1.0),
        Complex::ZERO,
    );
    pub const SIGMA_Z: Mat2 = Mat2::new(Complex::ONE, Complex::ZERO, Complex::ZERO, Complex::new(-1.0, 0.0));

    #[inline]
    pub const fn new(a00: Complex, a01: Complex, a10: Complex, a11: Complex) -> Self {
        Mat2 { a00, a01, a10, a11 }
    }

    /// Checked constructor; rejects non-finite entries.
    pub fn try_new(a00: Complex, a01: Complex, a10: Complex, a11: Complex) -> Result<Self> {
        let m = Mat2::new(a00, a01, a10, a11);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::NotFinite { what: "matrix entry" })
        }
    }

    /// Matrix with real entries `[[a, b], [c, d]]`.
    pub const fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(Complex::real(a), Complex::real(b), Complex::real(c), Complex::real(d))
    }

    pub const fn diag(a: f64, d: f64) -> Self {
        Mat2::real(a, 0.0, 0.0, d)
    }

    #[inline]
    pub fn entries(&self) -> [Complex; 4] {
        [self.a00, self.a01, self.a10, self.a11]
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.is_finite())
    }

    #[inline]
    pub fn trace(&self) -> Complex {
        self.a00 + self.a11
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        Mat2::new(self.a00.conj(), self.a10.conj(), self.a01.conj(), self.a11.conj())
    }

    pub fn scale(&self, k: Complex) -> Mat2 {
        Mat2::new(self.a00 * k, self.a01 * k, self.a10 * k, self.a11 * k)
    }

    pub fn scale_real(&self, k: f64) -> Mat2 {
        Mat2::new(self.a00 * k, self.a01 * k, self.a10 * k, self.a11 * k)
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_deviation(&self) -> f64 {
        let off = (self.a01 - self.a10.conj()).abs();
        off.max(self.a00.im.abs()).max(self.a11.im.abs())
    }

    /// `max_ij |a_ij|`.
    pub fn max_abs(&self) -> f64 {
        self.entries().iter().fold(0.0, |acc, z| acc.max(z.abs()))
    }

    /// `max_ij |a_ij − b_ij|`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: [Complex; 2], v: [Complex; 2]) -> Mat2 {
        Mat2::new(
            u[0] * v[0].conj(),
            u[0] * v[1].conj(),
            u[1] * v[0].conj(),
            u[1] * v[1].conj(),
        )
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: [Complex; 2]) -> [Complex; 2] {
        [self.a00 * v[0] + self.a01 * v[1], self.a10 * v[0] + self.a11 * v[1]]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(self.a00 + rhs.a00, self.a01 + rhs.a01, self.a10 + rhs.a10, self.a11 + rhs.a11)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(self.a00 - rhs.a00, self.a01 - rhs.a01, self.a10 - rhs.a10, self.a11 - rhs.a11)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a00, -self.a01, -self.a10, -self.a11)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a00 * rhs.a00 + self.a01 * rhs.a10,
            self.a00 * rhs.a01 + self.a01 * rhs.a11,
            self.a10 * rhs.a00 + self.a11 * rhs.a10,
            self.a10 * rhs.a01 + self.a11 * rhs.a11,
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: f64) -> Mat2 {
        self.scale_real(rhs)
    }
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
    *a * *b - *b * *a
}
