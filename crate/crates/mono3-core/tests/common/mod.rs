#![allow(dead_code)]

use mono3_core::{A3, Complex, Subspace};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// The structured bases used throughout the tests: first two elements have
/// f-images 1 and i, the rest are radical.
pub fn spine(k: usize) -> Vec<A3> {
    let all = [
        A3::ONE,
        A3::from_complex(c(0.0, 1.0)),
        A3::RHO,
        A3::RHO2,
        A3::new(c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)),
        A3::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)),
    ];
    all[..k].to_vec()
}

/// A subspace with f-images 1, i and radical elements ρ, ρ² (k ≤ 4).
pub fn structured(k: usize) -> Subspace {
    Subspace::new(spine(k)).unwrap()
}

/// Random valid k-dimensional subspace: the structured spine perturbed by
/// uniform noise, resampled until validation accepts it (almost surely the
/// first draw).
pub fn random_valid_subspace(k: usize, rng: &mut ChaCha8Rng) -> Subspace {
    loop {
        let basis: Vec<A3> = spine(k)
            .into_iter()
            .map(|e| {
                let mut jitter =
                    || c(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
                e + A3::new(jitter(), jitter(), jitter())
            })
            .collect();
        if let Ok(s) = Subspace::new(basis) {
            return s;
        }
    }
}

pub fn random_point(k: usize, half_width: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..k)
        .map(|_| rng.gen_range(-half_width..=half_width))
        .collect()
}

pub fn rel_close(x: A3, y: A3, tol: f64) -> bool {
    (x - y).norm() <= tol * (1.0 + x.norm().max(y.norm()))
}
