mod common;

use common::linspace;
use qdrive_core::{
    ermakov_pinney_residual, floquet_quasienergy, invariance_residual, invariant_operator, lewis_phase,
    rabi_density, xi_squared, Complex, RabiParams,
};

fn params() -> Vec<RabiParams> {
    vec![
        RabiParams::new(0.0, 2.0, 1.0, Complex::real(0.5)).unwrap(),
        RabiParams::new(0.0, 1.0, 1.0, Complex::real(0.7)).unwrap(),
        RabiParams::new(-0.4, 1.1, 0.9, Complex::new(0.3, -0.65)).unwrap(),
    ]
}

#[test]
fn invariant_is_density_matrix_at_unit_trace() {
    for p in params() {
        let period = p.rabi_period().unwrap();
        for t in linspace(0.0, period, 100) {
            let inv = invariant_operator(&p, t, 1.0).unwrap();
            let rho = rabi_density(&p, t).unwrap();
            assert!(inv.max_abs_diff(rho.matrix()) <= 1e-12, "t = {t}");
        }
    }
}

#[test]
fn invariant_is_conserved() {
    for p in params() {
        let period = p.rabi_period().unwrap();
        for c in [0.5, 1.0, 2.0] {
            for t in linspace(0.0, period, 100) {
                let r = invariance_residual(&p, t, 1e-5, c).unwrap();
                assert!(r <= 1e-7, "C = {c}, t = {t}: {r:e}");
            }
        }
    }
}

#[test]
fn ermakov_pinney_consistency() {
    for p in params() {
        let period = p.rabi_period().unwrap();
        for c in [0.5, 1.0, 2.0] {
            for t in linspace(0.0, period, 100) {
                if xi_squared(&p, t, c).unwrap() < 0.1 {
                    continue;
                }
                let r = ermakov_pinney_residual(&p, t, c, 1e-4).unwrap();
                assert!(r.abs() <= 1e-5, "C = {c}, t = {t}: {r:e}");
            }
        }
    }
}

#[test]
fn phase_is_quasienergy_times_time() {
    for p in params() {
        for t in linspace(-3.0, 7.0, 41) {
            assert_eq!(lewis_phase(&p, t), floquet_quasienergy(&p) * t);
        }
    }
}
