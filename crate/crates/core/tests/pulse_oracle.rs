mod common;

use common::{floquet_expectation, linspace, schrodinger_residual};
use qdrive_core::{
    propagate, pulse_density, pulse_lewis_phase, pulse_state, Complex, DensityMatrix, DriveHamiltonian,
    PulseParams, TimeGrid,
};

const CASES: [(f64, u32); 4] = [(0.1, 1), (1.0, 1), (4.5, 1), (1.0, 3)];

#[test]
fn propagation_matches_piecewise_closed_form() {
    for (f0, n) in CASES {
        let p = PulseParams::new(1.0, f0, n).unwrap();
        let grid = TimeGrid::new(0.0, p.period(), 8192).unwrap();
        let series = propagate(&DriveHamiltonian::SquarePulse(p), &DensityMatrix::ground(), &grid).unwrap();
        let err = series
            .iter()
            .map(|s| s.rho.max_abs_diff(&pulse_density(&p, s.t)))
            .fold(0.0, f64::max);
        assert!(err <= 1e-8, "f0 = {f0}, N = {n}: {err:e}");
        assert!(series.last().unwrap().rho.max_abs_diff(&DensityMatrix::ground()) <= 1e-8);
    }
}

#[test]
fn multi_period_propagation() {
    let p = PulseParams::new(0.8, 2.0, 1).unwrap();
    let grid = TimeGrid::new(0.0, 3.0 * p.period(), 3 * 4096).unwrap();
    let series = propagate(&DriveHamiltonian::SquarePulse(p), &DensityMatrix::ground(), &grid).unwrap();
    let err = series
        .iter()
        .map(|s| s.rho.max_abs_diff(&pulse_density(&p, s.t)))
        .fold(0.0, f64::max);
    assert!(err <= 1e-8, "{err:e}");
}

#[test]
fn returns_to_ground_each_period() {
    for (f0, n) in CASES {
        let p = PulseParams::new(1.3, f0, n).unwrap();
        for k in 1..=5 {
            let rho = pulse_density(&p, k as f64 * p.period());
            assert!(rho.max_abs_diff(&DensityMatrix::ground()) <= 1e-12);
            let half = pulse_density(&p, (k as f64 - 0.5) * p.period());
            assert!(half.max_abs_diff(&DensityMatrix::ground()) <= 1e-12);
        }
    }
}

#[test]
fn closed_form_stays_pure() {
    for (f0, n) in CASES {
        let p = PulseParams::new(1.0, f0, n).unwrap();
        for t in linspace(0.0, 2.0 * p.period(), 400) {
            let m = *pulse_density(&p, t).matrix();
            assert!((m * m).max_abs_diff(&m) <= 1e-12);
        }
    }
}

#[test]
fn off_diagonals_flip_sign_on_second_half() {
    let p = PulseParams::new(1.0, 1.7, 1).unwrap();
    let (f0, q) = (p.f0(), 1.0 + p.f0() * p.f0());
    let first_half_form = |t: f64| {
        let x = 2.0 * p.e0() * t * q.sqrt();
        Complex::new(f0 / (2.0 * q) * (1.0 - x.cos()), -f0 / (2.0 * q.sqrt()) * x.sin())
    };
    for t in linspace(0.51 * p.period(), 0.99 * p.period(), 60) {
        let rho01 = pulse_density(&p, t).rho01();
        assert!((rho01 + first_half_form(t)).abs() <= 1e-12);
    }
    for t in linspace(0.0, 0.49 * p.period(), 60) {
        let rho01 = pulse_density(&p, t).rho01();
        assert!((rho01 - first_half_form(t)).abs() <= 1e-12);
    }
}

#[test]
fn state_reproduces_density() {
    for (f0, n) in CASES {
        let p = PulseParams::new(0.9, f0, n).unwrap();
        for t in linspace(0.0, 2.0 * p.period(), 300) {
            let s = pulse_state(&p, t);
            assert!(s.outer().max_abs_diff(pulse_density(&p, t).matrix()) <= 1e-12);
            let x = p.eps0() * p.reduce(t);
            let rho11 = f0 * f0 / (1.0 + f0 * f0) * x.sin().powi(2);
            assert!((s.c1.norm_sqr() - rho11).abs() <= 1e-12);
        }
    }
}

#[test]
fn state_solves_schrodinger_away_from_switches() {
    for (f0, n) in CASES {
        let p = PulseParams::new(1.0, f0, n).unwrap();
        let period = p.period();
        let window = 1e-3 * period;
        for t in linspace(0.0, 2.0 * period, 800) {
            let half = 0.5 * period;
            let nearest = (t / half).round() * half;
            if (t - nearest).abs() < window {
                continue;
            }
            let r = schrodinger_residual(|s| pulse_state(&p, s), &p.hamiltonian(t), t, 1e-6);
            assert!(r <= 1e-6, "f0 = {f0}, t = {t}: {r:e}");
        }
    }
}

#[test]
fn lewis_phase_rate_vanishes() {
    let p = PulseParams::new(1.0, 1.0, 1).unwrap();
    for frac in [0.3, 0.7] {
        let t = frac * p.period();
        let e = floquet_expectation(|s| pulse_state(&p, s), &p.hamiltonian(t), t, 1e-5);
        assert!(e.abs() <= 1e-6, "{frac}: {e}");
        assert_eq!(pulse_lewis_phase(&p, t), 0.0);
    }
}
