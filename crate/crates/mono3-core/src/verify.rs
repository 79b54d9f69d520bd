//! Numerical verifiers for monogenicity.
//!
//! The central check mirrors the weakened differentiability condition: along
//! a small set of directions (two with non-collinear f-images plus a basis
//! of the radical plane) the one-sided difference quotients must converge to
//! h·Φ* for a single algebra element Φ*. The candidate Φ* is extracted from
//! the first direction, whose embedding is invertible, and the remaining
//! directions contribute residuals. Negative controls (complex conjugation,
//! absolute value, radical noise) are built in.
//!
//! Finite sampling can support or falsify the condition but never certify
//! it on a full domain; the grid driver therefore reports a pass fraction
//! over seeded sample points rather than a proof.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{A3, AlgebraError};
use crate::extension::{EvalMode, ExtensionError, MonogenicFn, eval_monogenic, principal_extension};
use crate::holo::HoloFn;
use crate::subspace::{DirectionError, DirectionSet, Subspace, SubspaceError};

/// Default first step of the δ-sequence δⱼ = δ₀·2⁻ʲ.
pub const DEFAULT_DELTA0: f64 = 1e-2;
/// Default number of δ-levels.
pub const DEFAULT_LEVELS: usize = 6;
/// Default relative tolerance for the residual pass band tol·(1 + ‖Φ*‖).
pub const DEFAULT_TOL: f64 = 1e-4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("invalid direction set: {0}")]
    InvalidDirections(#[from] DirectionError),
    #[error("difference quotients diverge; trailing changes {changes:?}")]
    NoConvergence { changes: Vec<f64> },
    #[error("the Laplace check needs a three-dimensional subspace, got k = {k}")]
    DimensionMismatch { k: usize },
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A function ℝᵏ → 𝔸₃ that the verifiers can sample: either a genuine
/// monogenic extension or one of the builtin counterexamples.
#[derive(Debug, Clone)]
pub enum SampledFn {
    /// Φ = Ext(F₀) + ρ·Ext(F₁) + ρ²·Ext(F₂), evaluated in closed form over
    /// the subspace stored in the `MonogenicFn` (pass the same subspace to
    /// the verifiers).
    Extension(MonogenicFn),
    /// ζ ↦ conj(f(ζ))·1 — continuous but nowhere monogenic.
    ConjF,
    /// ζ ↦ |f(ζ)|·1.
    AbsF,
    /// ζ ↦ Ext(F)(ζ) + |f(ζ)|·ρ² — a monogenic part plus a non-holomorphic
    /// disturbance confined to the radical channel.
    RadicalNoise(HoloFn),
}

impl SampledFn {
    pub fn eval(&self, s: &Subspace, p: &[f64]) -> Result<A3, VerifyError> {
        match self {
            SampledFn::Extension(m) => Ok(eval_monogenic(m, p, &EvalMode::ClosedForm)?),
            SampledFn::ConjF => {
                let w = s.embed(p)?.f();
                Ok(A3::from_complex(w.conj()))
            }
            SampledFn::AbsF => {
                let w = s.embed(p)?.f();
                Ok(A3::from_real(w.norm()))
            }
            SampledFn::RadicalNoise(f) => {
                let v = principal_extension(f, s, p)?;
                let w = s.embed(p)?.f();
                Ok(v + A3::RHO2 * w.norm())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// δ-sequence diagnostics for one direction.
#[derive(Debug, Clone, Serialize)]
pub struct DirectionHistory {
    pub direction: usize,
    pub deltas: Vec<f64>,
    /// ‖Q(δⱼ) − Q(δⱼ₋₁)‖ between consecutive levels.
    pub changes: Vec<f64>,
}

/// Outcome of [`check_kprime`]: the candidate derivative, one residual per
/// direction after the first, and the quotient history. The verdict is
/// `Pass` iff max residual ≤ tol·(1 + ‖Φ*‖).
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub phi_star: A3,
    pub residuals: Vec<f64>,
    pub history: Vec<DirectionHistory>,
}

fn shifted(p: &[f64], h: &[f64], delta: f64) -> Vec<f64> {
    p.iter().zip(h).map(|(x, d)| x + delta * d).collect()
}

fn quotients(
    phi: &SampledFn,
    s: &Subspace,
    p: &[f64],
    h: &[f64],
    direction: usize,
    delta0: f64,
    levels: usize,
) -> Result<(A3, DirectionHistory), VerifyError> {
    assert!(delta0 > 0.0 && levels >= 2);
    let base = phi.eval(s, p)?;
    let mut deltas = Vec::with_capacity(levels);
    let mut qs: Vec<A3> = Vec::with_capacity(levels);
    let mut changes = Vec::with_capacity(levels - 1);
    let mut delta = delta0;
    for _ in 0..levels {
        let q = (phi.eval(s, &shifted(p, h, delta))? - base) * (1.0 / delta);
        if let Some(prev) = qs.last() {
            changes.push((q - *prev).norm());
        }
        deltas.push(delta);
        qs.push(q);
        delta *= 0.5;
    }

    // Divergence: the inter-level changes keep growing at the smallest
    // steps, beyond the cancellation noise of a forward difference, which
    // itself grows like ε·‖Φ(p)‖/δ as δ shrinks.
    if changes.len() >= 3 {
        let tail = &changes[changes.len() - 3..];
        let floor = 1e-12 * (1.0 + base.norm()) / deltas[deltas.len() - 1];
        if tail[2] > tail[1] && tail[1] > tail[0] && tail[2] > floor {
            return Err(VerifyError::NoConvergence {
                changes: tail.to_vec(),
            });
        }
    }

    let last = qs[qs.len() - 1];
    let prev = qs[qs.len() - 2];
    let estimate = last * 2.0 - prev;
    Ok((
        estimate,
        DirectionHistory {
            direction,
            deltas,
            changes,
        },
    ))
}

/// One-sided directional derivative of Φ at `p` along the coordinate
/// direction `h`: forward difference quotients at δⱼ = δ₀·2⁻ʲ, returned as
/// the Richardson pair 2·Q(δ_last) − Q(δ_prev).
pub fn directional_derivative(
    phi: &SampledFn,
    s: &Subspace,
    p: &[f64],
    h: &[f64],
    delta0: f64,
    levels: usize,
) -> Result<A3, VerifyError> {
    quotients(phi, s, p, h, 0, delta0, levels).map(|(v, _)| v)
}

/// Verifies the weakened differentiability condition at one point: extracts
/// Φ* from the first direction (whose embedding is invertible) and measures
/// ‖Dⱼ − hⱼ·Φ*‖ for the remaining directions.
pub fn check_kprime(
    phi: &SampledFn,
    s: &Subspace,
    p: &[f64],
    d: &DirectionSet,
    tol: f64,
) -> Result<CheckReport, VerifyError> {
    s.validate_directions(d)?;

    let (d1, hist1) = quotients(phi, s, p, &d.h[0], 0, DEFAULT_DELTA0, DEFAULT_LEVELS)?;
    let phi_star = s.embed(&d.h[0])?.inverse()? * d1;

    let mut residuals = Vec::with_capacity(d.h.len() - 1);
    let mut history = vec![hist1];
    for (j, h) in d.h.iter().enumerate().skip(1) {
        let (dj, hist) = quotients(phi, s, p, h, j, DEFAULT_DELTA0, DEFAULT_LEVELS)?;
        residuals.push((dj - s.embed(h)? * phi_star).norm());
        history.push(hist);
    }

    let worst = residuals.iter().cloned().fold(0.0_f64, f64::max);
    let verdict = if worst <= tol * (1.0 + phi_star.norm()) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(CheckReport {
        verdict,
        phi_star,
        residuals,
        history,
    })
}

/// Max over seeded sphere-uniform unit directions u of
/// ‖Φ(p + δu) − Φ(p) − (δu)·Φ′‖ / δ. A Lorch-differentiable Φ drives this
/// to zero with δ uniformly over directions; the caller checks the decay.
pub fn check_lorch(
    phi: &SampledFn,
    s: &Subspace,
    p: &[f64],
    phi_prime: &A3,
    samples: usize,
    delta: f64,
    seed: u64,
) -> Result<f64, VerifyError> {
    assert!(samples >= 1 && delta > 0.0);
    let k = s.k();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = phi.eval(s, p)?;
    let mut worst = 0.0_f64;
    for _ in 0..samples {
        let u = unit_direction(k, &mut rng);
        let value = phi.eval(s, &shifted(p, &u, delta))?;
        let linear = s.embed(&u)? * delta * *phi_prime;
        let residual = (value - base - linear).norm() / delta;
        worst = worst.max(residual);
    }
    Ok(worst)
}

fn unit_direction(k: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..k).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// 7-point finite-difference Laplacian residual of the six real component
/// functions of Φ over a three-dimensional subspace, at steps `h` and `h/2`.
/// For a harmonic basis the components are harmonic, so the residual is
/// O(h²) (up to rounding noise once the stencil is exact for the integrand).
pub fn check_laplace(m: &MonogenicFn, p: &[f64], h: f64) -> Result<(f64, f64), VerifyError> {
    let k = m.subspace().k();
    if k != 3 {
        return Err(VerifyError::DimensionMismatch { k });
    }
    Ok((
        laplacian_residual(m, p, h)?,
        laplacian_residual(m, p, h / 2.0)?,
    ))
}

fn laplacian_residual(m: &MonogenicFn, p: &[f64], h: f64) -> Result<f64, VerifyError> {
    let center = eval_monogenic(m, p, &EvalMode::ClosedForm)?;
    let mut sum = A3::ZERO;
    for axis in 0..3 {
        for sign in [-1.0, 1.0] {
            let mut q = p.to_vec();
            q[axis] += sign * h;
            sum += eval_monogenic(m, &q, &EvalMode::ClosedForm)?;
        }
    }
    let lap = (sum - center * 6.0) * (1.0 / (h * h));
    Ok(inf_norm(&lap))
}

fn inf_norm(v: &A3) -> f64 {
    [v.a, v.b, v.c]
        .iter()
        .flat_map(|c| [c.re.abs(), c.im.abs()])
        .fold(0.0_f64, f64::max)
}

/// Sampled-domain summary from [`grid_verify`].
#[derive(Debug, Clone, Serialize)]
pub struct GridSummary {
    pub points: usize,
    pub pass_fraction: f64,
    pub worst_residual: f64,
    pub worst_point: Vec<f64>,
}

/// Runs [`check_kprime`] at `n_points` seeded uniform points of the box.
///
/// A point where the difference quotients diverge counts as a failure (the
/// condition asserts the limits exist); other evaluation errors propagate.
pub fn grid_verify(
    phi: &SampledFn,
    s: &Subspace,
    sample_box: &[(f64, f64)],
    n_points: usize,
    d: &DirectionSet,
    tol: f64,
    seed: u64,
) -> Result<GridSummary, VerifyError> {
    assert_eq!(sample_box.len(), s.k());
    assert!(n_points >= 1);
    s.validate_directions(d)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passes = 0usize;
    let mut worst_residual = 0.0_f64;
    let mut worst_point: Vec<f64> = Vec::new();
    for _ in 0..n_points {
        let p: Vec<f64> = sample_box
            .iter()
            .map(|&(lo, hi)| rng.gen_range(lo..=hi))
            .collect();
        match check_kprime(phi, s, &p, d, tol) {
            Ok(report) => {
                if report.verdict.passed() {
                    passes += 1;
                }
                let r = report.residuals.iter().cloned().fold(0.0_f64, f64::max);
                if r >= worst_residual {
                    worst_residual = r;
                    worst_point = p;
                }
            }
            Err(VerifyError::NoConvergence { .. }) => {
                if worst_point.is_empty() {
                    worst_point = p;
                }
            }
            Err(other) => return Err(other),
        }
    }
    Ok(GridSummary {
        points: n_points,
        pass_fraction: passes as f64 / n_points as f64,
        worst_residual,
        worst_point,
    })
}
