//! Numerical propagation of the Liouville–von Neumann equation
//! `dρ/dt = −i[H(t), ρ]` with fixed-step classic RK4.
//!
//! The propagator is the independent cross-check for every closed form in
//! the crate. Piecewise-constant drives are handled by requiring grid nodes
//! on every discontinuity and evaluating each step with the Hamiltonian of
//! the open interval it covers, so no RK4 stage straddles a jump.

use alloc::vec::Vec;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::grid::{Sample, TimeGrid, TimeSeries};
use crate::math;
use crate::matrix::{commutator, Mat2};
use crate::pulse::{pulse_f, PulseParams};
use crate::rabi::RabiParams;
use crate::state::{hermitian_min_eigenvalue, DensityMatrix, Tolerances};

/// Hamiltonian samples interpolated piecewise-constant from the left:
/// `H(t) = H_k` for `t_k ≤ t < t_{k+1}`, and `H(t_last) = H_last`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledDrive {
    samples: Vec<(f64, Mat2)>,
}

impl SampledDrive {
    /// Times must be finite and strictly increasing; matrices Hermitian to 1e-12.
    pub fn new(samples: Vec<(f64, Mat2)>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::UnorderedSamples { index: 0 });
        }
        for (i, (t, h)) in samples.iter().enumerate() {
            if !t.is_finite() {
                return Err(Error::NotFinite { what: "sample time" });
            }
            if !h.is_finite() {
                return Err(Error::NotFinite { what: "sampled Hamiltonian entry" });
            }
            let deviation = h.hermiticity_deviation();
            if deviation > 1e-12 {
                return Err(Error::NotHermitian { deviation });
            }
            if i > 0 && *t <= samples[i - 1].0 {
                return Err(Error::UnorderedSamples { index: i });
            }
        }
        Ok(SampledDrive { samples })
    }

    pub fn samples(&self) -> &[(f64, Mat2)] {
        &self.samples
    }

    pub fn first_time(&self) -> f64 {
        self.samples[0].0
    }

    pub fn last_time(&self) -> f64 {
        self.samples[self.samples.len() - 1].0
    }

    fn check_range(&self, t: f64) -> Result<()> {
        let (first, last) = (self.first_time(), self.last_time());
        if t.is_nan() || t < first || t > last {
            return Err(Error::OutOfRange { t, first, last });
        }
        Ok(())
    }

    pub fn value_at(&self, t: f64) -> Result<Mat2> {
        self.check_range(t)?;
        // number of sample times ≤ t, at least 1 after the range check
        let k = self.samples.partition_point(|(ts, _)| *ts <= t);
        Ok(self.samples[k - 1].1)
    }

    /// Left limit `lim_{s→t⁻} H(s)`; at the first sample time, `H_0`.
    fn value_left_of(&self, t: f64) -> Result<Mat2> {
        self.check_range(t)?;
        let k = self.samples.partition_point(|(ts, _)| *ts < t);
        Ok(self.samples[k.max(1) - 1].1)
    }
}

/// A time-dependent 2×2 Hermitian Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub enum DriveHamiltonian {
    RwaRabi(RabiParams),
    SquarePulse(PulseParams),
    Sampled(SampledDrive),
}

impl DriveHamiltonian {
    /// Hamiltonian used for every RK4 stage of the step `[step_start, step_end]`.
    fn stage_hamiltonian(&self, t: f64, step_start: f64, step_end: f64) -> Result<Mat2> {
        match self {
            DriveHamiltonian::RwaRabi(p) => Ok(p.hamiltonian(t)),
            DriveHamiltonian::SquarePulse(p) => {
                let mid = 0.5 * (step_start + step_end);
                Ok(p.hamiltonian_with_f(pulse_f(p, mid)))
            }
            DriveHamiltonian::Sampled(s) => {
                if t >= step_end {
                    s.value_left_of(t)
                } else {
                    s.value_at(t)
                }
            }
        }
    }

    fn stage_rhs(&self, t: f64, rho: &Mat2, step: (f64, f64)) -> Result<Mat2> {
        let h = self.stage_hamiltonian(t, step.0, step.1)?;
        Ok(minus_i_commutator(&h, rho))
    }
}

/// `H(t)`. Square pulses take the `t ≥ T/2` branch at the switching instant.
pub fn hamiltonian_at(drive: &DriveHamiltonian, t: f64) -> Result<Mat2> {
    match drive {
        DriveHamiltonian::RwaRabi(p) => Ok(p.hamiltonian(t)),
        DriveHamiltonian::SquarePulse(p) => Ok(p.hamiltonian(t)),
        DriveHamiltonian::Sampled(s) => s.value_at(t),
    }
}

/// `−i[H(t), ρ]`.
pub fn liouville_rhs(drive: &DriveHamiltonian, t: f64, rho: &Mat2) -> Result<Mat2> {
    let h = hamiltonian_at(drive, t)?;
    Ok(minus_i_commutator(&h, rho))
}

fn minus_i_commutator(h: &Mat2, rho: &Mat2) -> Mat2 {
    commutator(h, rho).scale(Complex::new(0.0, -1.0))
}

/// Largest trace or Hermiticity drift tolerated in a propagated sample.
pub const DRIFT_THRESHOLD: f64 = 1e-6;

/// Integrates from `rho0` at `grid.t_start()` over every grid step with RK4.
///
/// Each node becomes a [`Sample`]. States are checked against
/// [`Tolerances::RUNTIME`] and never renormalised; a violation yields
/// [`Error::InvariantDrift`]. Square-pulse drives need a grid node at every
/// switching time `kT/2` inside the grid, else
/// [`Error::StepSpansDiscontinuity`].
pub fn propagate(drive: &DriveHamiltonian, rho0: &DensityMatrix, grid: &TimeGrid) -> Result<TimeSeries> {
    match drive {
        DriveHamiltonian::SquarePulse(p) => check_switch_alignment(p, grid)?,
        DriveHamiltonian::Sampled(s) => {
            s.check_range(grid.t_start())?;
            s.check_range(grid.t_end())?;
        }
        DriveHamiltonian::RwaRabi(_) => {}
    }

    let mut series = TimeSeries::with_capacity(grid.steps() + 1);
    series.push(Sample::new(grid.t_start(), *rho0))?;
    let mut y = *rho0.matrix();
    for i in 0..grid.steps() {
        let (a, b) = (grid.node(i), grid.node(i + 1));
        y = rk4_step(drive, &y, a, b)?;
        let rho = wrap_propagated(b, y)?;
        series.push(Sample::new(b, rho))?;
    }
    Ok(series)
}

fn rk4_step(drive: &DriveHamiltonian, y: &Mat2, a: f64, b: f64) -> Result<Mat2> {
    let h = b - a;
    let mid = a + 0.5 * h;
    let step = (a, b);
    let k1 = drive.stage_rhs(a, y, step)?;
    let k2 = drive.stage_rhs(mid, &(*y + k1 * (0.5 * h)), step)?;
    let k3 = drive.stage_rhs(mid, &(*y + k2 * (0.5 * h)), step)?;
    let k4 = drive.stage_rhs(b, &(*y + k3 * h), step)?;
    Ok(*y + (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0))
}

fn wrap_propagated(t: f64, m: Mat2) -> Result<DensityMatrix> {
    let trace_drift = (m.trace() - Complex::ONE).abs();
    let hermiticity_drift = m.hermiticity_deviation();
    let drifted = || Error::InvariantDrift {
        t,
        trace_drift,
        hermiticity_drift,
        min_eigenvalue: hermitian_min_eigenvalue(&m),
    };
    if !(trace_drift <= DRIFT_THRESHOLD && hermiticity_drift <= DRIFT_THRESHOLD) {
        return Err(drifted());
    }
    DensityMatrix::with_tolerances(m, Tolerances::RUNTIME).map_err(|_| drifted())
}

/// Checks that every switching time `kT/2` strictly inside the grid is a node.
pub fn check_switch_alignment(p: &PulseParams, grid: &TimeGrid) -> Result<()> {
    let half = 0.5 * p.period();
    let h = grid.step_size();
    let tol = 1e-7 * h;
    let (t0, t1) = (grid.t_start(), grid.t_end());
    let mut k = math::ceil(t0 / half);
    loop {
        let s = k * half;
        k += 1.0;
        if s <= t0 + tol {
            continue;
        }
        if s >= t1 - tol {
            return Ok(());
        }
        let nearest = math::round((s - t0) / h) as usize;
        if (grid.node(nearest) - s).abs() > tol {
            let j = ((s - t0) / h) as usize;
            return Err(Error::StepSpansDiscontinuity {
                switch_time: s,
                step_start: grid.node(j),
                step_end: grid.node(j + 1),
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn zero_drive() -> DriveHamiltonian {
        DriveHamiltonian::Sampled(SampledDrive::new(vec![(0.0, Mat2::ZERO), (10.0, Mat2::ZERO)]).unwrap())
    }

    #[test]
    fn rabi_hamiltonian_at_origin() {
        let g = Complex::new(0.3, -0.2);
        let p = RabiParams::new(0.1, 1.2, 0.9, g).unwrap();
        let h = hamiltonian_at(&DriveHamiltonian::RwaRabi(p), 0.0).unwrap();
        assert_eq!(h, Mat2::new(Complex::real(0.1), g.conj(), g, Complex::real(1.2)));
    }

    #[test]
    fn pulse_hamiltonian_branches() {
        let p = PulseParams::new(1.0, 1.0, 1).unwrap();
        let d = DriveHamiltonian::SquarePulse(p);
        assert_eq!(hamiltonian_at(&d, 0.0).unwrap(), Mat2::real(-1.0, -1.0, -1.0, 1.0));
        let p2 = PulseParams::new(0.7, 2.5, 1).unwrap();
        let h = hamiltonian_at(&DriveHamiltonian::SquarePulse(p2), 0.5 * p2.period()).unwrap();
        assert_eq!(h, Mat2::real(-0.7, 2.5 * 0.7, 2.5 * 0.7, 0.7));
    }

    #[test]
    fn sampled_lookup_and_range() {
        let a = Mat2::diag(1.0, -1.0);
        let b = Mat2::SIGMA_X;
        let s = SampledDrive::new(vec![(0.0, a), (1.0, b), (2.0, a)]).unwrap();
        let d = DriveHamiltonian::Sampled(s.clone());
        assert_eq!(hamiltonian_at(&d, 0.5).unwrap(), a);
        assert_eq!(hamiltonian_at(&d, 1.0).unwrap(), b);
        assert_eq!(hamiltonian_at(&d, 2.0).unwrap(), a);
        assert_eq!(s.value_left_of(1.0).unwrap(), a);
        assert_eq!(s.value_left_of(0.0).unwrap(), a);
        assert!(matches!(hamiltonian_at(&d, 2.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(hamiltonian_at(&d, -0.1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn sampled_validation() {
        assert!(SampledDrive::new(vec![]).is_err());
        assert!(matches!(
            SampledDrive::new(vec![(0.0, Mat2::ZERO), (0.0, Mat2::ZERO)]),
            Err(Error::UnorderedSamples { index: 1 })
        ));
        assert!(matches!(
            SampledDrive::new(vec![(0.0, Mat2::real(0.0, 1.0, 0.0, 0.0))]),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn rhs_vanishes_for_zero_or_commuting_drive() {
        let rho = Mat2::real(0.5, 0.3, 0.3, 0.5);
        assert_eq!(liouville_rhs(&zero_drive(), 1.0, &rho).unwrap(), Mat2::ZERO);
        let diag_drive = DriveHamiltonian::Sampled(SampledDrive::new(vec![(0.0, Mat2::diag(2.0, -1.0))]).unwrap());
        let rhs = liouville_rhs(&diag_drive, 0.0, &Mat2::diag(0.3, 0.7)).unwrap();
        assert_eq!(rhs, Mat2::ZERO);
    }

    #[test]
    fn rhs_from_ground_state_on_resonance() {
        let g = Complex::new(0.4, 0.3);
        let p = RabiParams::new(0.0, 1.0, 1.0, g).unwrap();
        let rhs = liouville_rhs(&DriveHamiltonian::RwaRabi(p), 0.0, &Mat2::diag(1.0, 0.0)).unwrap();
        // dρ_ge/dt = −i(ρ_ee − ρ_gg)·conj(g) = i·conj(g); dρ_eg/dt = −i·g
        assert_eq!(rhs.a00, Complex::ZERO);
        assert_eq!(rhs.a11, Complex::ZERO);
        assert!((rhs.a01 - g.conj().mul_i()).abs() < 1e-16);
        assert!((rhs.a10 + g.mul_i()).abs() < 1e-16);
    }

    #[test]
    fn zero_drive_keeps_state() {
        let grid = TimeGrid::new(0.0, 3.0, 17).unwrap();
        let series = propagate(&zero_drive(), &DensityMatrix::ground(), &grid).unwrap();
        assert_eq!(series.len(), 18);
        for s in &series {
            assert_eq!(s.rho, DensityMatrix::ground());
        }
    }

    #[test]
    fn misaligned_pulse_grid_rejected() {
        let p = PulseParams::new(1.0, 1.0, 1).unwrap();
        let grid = TimeGrid::new(0.0, p.period(), 7).unwrap();
        let err = propagate(&DriveHamiltonian::SquarePulse(p), &DensityMatrix::ground(), &grid).unwrap_err();
        match err {
            Error::StepSpansDiscontinuity { switch_time, step_start, step_end } => {
                assert!((switch_time - 0.5 * p.period()).abs() < 1e-15);
                assert!(step_start < switch_time && switch_time < step_end);
            }
            other => panic!("unexpected {other:?}"),
        }
        let aligned = TimeGrid::new(0.0, p.period(), 8).unwrap();
        assert!(propagate(&DriveHamiltonian::SquarePulse(p), &DensityMatrix::ground(), &aligned).is_ok());
    }

    #[test]
    fn sampled_grid_out_of_range() {
        let grid = TimeGrid::new(0.0, 11.0, 10).unwrap();
        assert!(matches!(
            propagate(&zero_drive(), &DensityMatrix::ground(), &grid),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn drift_detected() {
        // A huge step on a strong drive blows RK4 up.
        let p = RabiParams::new(0.0, 50.0, 1.0, Complex::real(40.0)).unwrap();
        let grid = TimeGrid::new(0.0, 10.0, 3).unwrap();
        let err = propagate(&DriveHamiltonian::RwaRabi(p), &DensityMatrix::ground(), &grid).unwrap_err();
        assert!(matches!(err, Error::InvariantDrift { .. }), "{err:?}");
    }
}
