//! Shared fixtures for the benchmark suite.

use mono3_core::{Complex, Subspace};

pub fn harmonic() -> Subspace {
    Subspace::harmonic_family(Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)).unwrap()
}

/// A deterministic cloud of interior points (no RNG: benches must not
/// depend on seed plumbing).
pub fn sample_points(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| {
            let t = i as f64 / n as f64;
            vec![
                0.8 * (2.0 * t - 1.0),
                0.7 * (7.0 * t).sin(),
                0.6 * (11.0 * t).cos(),
            ]
        })
        .collect()
}
