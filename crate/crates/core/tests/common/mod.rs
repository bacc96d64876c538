#![allow(dead_code)]

use qdrive_core::{Complex, Mat2, StateVector};

/// Central-difference derivative of a state-valued function.
pub fn state_derivative(f: impl Fn(f64) -> StateVector, t: f64, h: f64) -> [Complex; 2] {
    let (a, b) = (f(t + h), f(t - h));
    [(a.c0 - b.c0) / (2.0 * h), (a.c1 - b.c1) / (2.0 * h)]
}

/// `⟨φ| i∂t − H |φ⟩` by central differences.
pub fn floquet_expectation(f: impl Fn(f64) -> StateVector, ham: &Mat2, t: f64, h: f64) -> Complex {
    let phi = f(t);
    let d = state_derivative(&f, t, h);
    let hphi = ham.apply(phi.amplitudes());
    let v = [d[0].mul_i() - hphi[0], d[1].mul_i() - hphi[1]];
    phi.c0.conj() * v[0] + phi.c1.conj() * v[1]
}

/// `max_k |(i∂t − H)ψ|_k` by central differences.
pub fn schrodinger_residual(f: impl Fn(f64) -> StateVector, ham: &Mat2, t: f64, h: f64) -> f64 {
    let psi = f(t);
    let d = state_derivative(&f, t, h);
    let hpsi = ham.apply(psi.amplitudes());
    (d[0].mul_i() - hpsi[0]).abs().max((d[1].mul_i() - hpsi[1]).abs())
}

/// Evenly spaced points `start + (end − start)·k/(n − 1)`.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| start + (end - start) * k as f64 / (n - 1) as f64).collect()
}

/// Golden-section maximisation of a unimodal function on `[a, b]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    for _ in 0..iters {
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
