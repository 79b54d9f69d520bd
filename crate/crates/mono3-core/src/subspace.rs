//! Real k-dimensional subspaces E ⊂ 𝔸₃ (2 ≤ k ≤ 6) from which monogenic
//! functions are extended.
//!
//! A valid subspace satisfies two rank conditions: its basis is linearly
//! independent over ℝ, and its image under the functional `f` covers the whole
//! complex plane. The intersection of E with the radical is then a plane of
//! dimension k − 2, cached here as coordinate vectors (the kernel of the
//! 2×k real matrix of `f`-images).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{A3, Complex};
use crate::linalg;

/// Two direction images count as collinear when the normalized 2×2
/// determinant falls below this.
pub const NON_COLLINEARITY_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum SubspaceError {
    #[error("subspace dimension must be between 2 and 6, got {k}")]
    BadDimension { k: usize },
    #[error("basis f-images span less than the full complex plane")]
    NotSurjective,
    #[error("basis vectors are linearly dependent over the reals")]
    DependentBasis,
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Why a direction set was rejected.
#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum DirectionError {
    #[error("expected {expected} directions, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("direction {index} has {got} coordinates, expected {expected}")]
    WrongLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("direction {index} is zero")]
    ZeroDirection { index: usize },
    #[error("f-images of the first two directions are collinear or vanish")]
    CollinearImages,
    #[error("direction {index} lies outside the radical plane")]
    OutsideRadicalPlane { index: usize },
    #[error("directions 3..k do not span the radical plane")]
    DeficientRadicalSpan,
}

/// A set of k directions, each expressed in subspace coordinates.
///
/// The first two must have non-collinear `f`-images; the rest must form a
/// basis of the radical plane. See [`Subspace::validate_directions`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionSet {
    pub h: Vec<Vec<f64>>,
}

impl From<Vec<Vec<f64>>> for DirectionSet {
    fn from(h: Vec<Vec<f64>>) -> Self {
        DirectionSet { h }
    }
}

/// A validated subspace E ⊂ 𝔸₃ with its cached radical intersection.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: Vec<A3>,
    /// Kernel of x ↦ Σ aⱼxⱼ: coordinates of a basis of E ∩ radical.
    radical: Vec<Vec<f64>>,
}

impl Subspace {
    /// Validates the basis and caches the radical plane.
    ///
    /// Surjectivity of `f` is checked before independence, so a basis that
    /// fails both reports `NotSurjective`.
    pub fn new(basis: Vec<A3>) -> Result<Subspace, SubspaceError> {
        let k = basis.len();
        if !(2..=6).contains(&k) {
            return Err(SubspaceError::BadDimension { k });
        }

        let fmat = f_matrix(&basis);
        if linalg::rank(fmat.clone(), linalg::RANK_THRESHOLD) != 2 {
            return Err(SubspaceError::NotSurjective);
        }

        let coeffs: Vec<Vec<f64>> = [
            |e: &A3| e.a.re,
            |e: &A3| e.a.im,
            |e: &A3| e.b.re,
            |e: &A3| e.b.im,
            |e: &A3| e.c.re,
            |e: &A3| e.c.im,
        ]
        .iter()
        .map(|comp| basis.iter().map(comp).collect())
        .collect();
        if linalg::rank(coeffs, linalg::RANK_THRESHOLD) != k {
            return Err(SubspaceError::DependentBasis);
        }

        let radical = linalg::kernel_basis(fmat, linalg::RANK_THRESHOLD);
        debug_assert_eq!(radical.len(), k - 2);
        Ok(Subspace { basis, radical })
    }

    /// The harmonic three-dimensional family
    /// e₁ = 1, e₂ = i + (i·b₃²/2)ρ², e₃ = b₃ρ + c₃ρ²,
    /// whose basis squares sum to zero identically.
    pub fn harmonic_family(b3: Complex, c3: Complex) -> Result<Subspace, SubspaceError> {
        let i = Complex::new(0.0, 1.0);
        let e1 = A3::ONE;
        let e2 = A3::new(i, Complex::new(0.0, 0.0), i * b3 * b3 * 0.5);
        let e3 = A3::new(Complex::new(0.0, 0.0), b3, c3);
        Subspace::new(vec![e1, e2, e3])
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[A3] {
        &self.basis
    }

    /// Coordinate vectors spanning E ∩ radical (k − 2 of them).
    pub fn radical_basis(&self) -> &[Vec<f64>] {
        &self.radical
    }

    /// ζ = Σ xⱼ eⱼ.
    pub fn embed(&self, x: &[f64]) -> Result<A3, SubspaceError> {
        if x.len() != self.k() {
            return Err(SubspaceError::DimensionMismatch {
                expected: self.k(),
                got: x.len(),
            });
        }
        let mut z = A3::ZERO;
        for (e, &t) in self.basis.iter().zip(x) {
            z += *e * t;
        }
        Ok(z)
    }

    /// f(Σ xⱼeⱼ) = Σ aⱼxⱼ without building the algebra element.
    pub fn f_image(&self, x: &[f64]) -> Complex {
        let mut w = Complex::new(0.0, 0.0);
        for (e, &t) in self.basis.iter().zip(x) {
            w += e.a * t;
        }
        w
    }

    /// Whether e₁² + e₂² + e₃² vanishes within `tol` (three-dimensional only).
    pub fn is_harmonic(&self, tol: f64) -> Result<bool, SubspaceError> {
        if self.k() != 3 {
            return Err(SubspaceError::DimensionMismatch {
                expected: 3,
                got: self.k(),
            });
        }
        let mut sum = A3::ZERO;
        for e in &self.basis {
            sum += *e * *e;
        }
        Ok(sum.norm() <= tol)
    }

    /// Checks a direction set for the weakened-differentiability verifier:
    /// the first two directions need non-collinear (in particular nonzero)
    /// `f`-images, the remaining k − 2 must lie in and span the radical
    /// plane. All predicates are invariant under rescaling each direction.
    pub fn validate_directions(&self, d: &DirectionSet) -> Result<(), DirectionError> {
        let k = self.k();
        if d.h.len() != k {
            return Err(DirectionError::WrongCount {
                expected: k,
                got: d.h.len(),
            });
        }
        let mut norms = Vec::with_capacity(k);
        for (index, h) in d.h.iter().enumerate() {
            if h.len() != k {
                return Err(DirectionError::WrongLength {
                    index,
                    expected: k,
                    got: h.len(),
                });
            }
            let n = h.iter().map(|t| t * t).sum::<f64>().sqrt();
            if n == 0.0 {
                return Err(DirectionError::ZeroDirection { index });
            }
            norms.push(n);
        }

        let a_scale = self
            .basis
            .iter()
            .fold(1.0_f64, |s, e| s.max(e.a.norm()));
        let image_floor = |idx: usize| linalg::RANK_THRESHOLD * a_scale * norms[idx];

        let w1 = self.f_image(&d.h[0]);
        let w2 = self.f_image(&d.h[1]);
        if w1.norm() <= image_floor(0) || w2.norm() <= image_floor(1) {
            return Err(DirectionError::CollinearImages);
        }
        let det = w1.re * w2.im - w1.im * w2.re;
        if det.abs() < NON_COLLINEARITY_THRESHOLD * w1.norm() * w2.norm() {
            return Err(DirectionError::CollinearImages);
        }

        for (index, h) in d.h.iter().enumerate().skip(2) {
            if self.f_image(h).norm() > image_floor(index) {
                return Err(DirectionError::OutsideRadicalPlane { index });
            }
        }
        if k > 2 {
            // columns = normalized radical directions, rows = coordinates
            let m: Vec<Vec<f64>> = (0..k)
                .map(|row| {
                    d.h[2..]
                        .iter()
                        .zip(&norms[2..])
                        .map(|(h, n)| h[row] / n)
                        .collect()
                })
                .collect();
            if linalg::rank(m, linalg::RANK_THRESHOLD) != k - 2 {
                return Err(DirectionError::DeficientRadicalSpan);
            }
        }
        Ok(())
    }

    /// A direction set that always validates: preimages of 1 and i under the
    /// `f`-image map, followed by the cached radical basis. For the harmonic
    /// family this reduces to the coordinate axes.
    pub fn canonical_directions(&self) -> DirectionSet {
        let fmat = f_matrix(&self.basis);
        let h1 = linalg::solve_particular(&fmat, &[1.0, 0.0], linalg::RANK_THRESHOLD)
            .expect("f-image map is onto for a validated subspace");
        let h2 = linalg::solve_particular(&fmat, &[0.0, 1.0], linalg::RANK_THRESHOLD)
            .expect("f-image map is onto for a validated subspace");
        let mut h = vec![h1, h2];
        h.extend(self.radical.iter().cloned());
        DirectionSet { h }
    }
}

fn f_matrix(basis: &[A3]) -> Vec<Vec<f64>> {
    vec![
        basis.iter().map(|e| e.a.re).collect(),
        basis.iter().map(|e| e.a.im).collect(),
    ]
}

/// On-disk basis description: `{"k": 3, "e": [{"a":[re,im],...}, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisFile {
    pub k: usize,
    pub e: Vec<A3>,
}

impl BasisFile {
    pub fn build(self) -> Result<Subspace, SubspaceError> {
        if self.k != self.e.len() {
            return Err(SubspaceError::DimensionMismatch {
                expected: self.k,
                got: self.e.len(),
            });
        }
        Subspace::new(self.e)
    }
}

impl From<&Subspace> for BasisFile {
    fn from(s: &Subspace) -> BasisFile {
        BasisFile {
            k: s.k(),
            e: s.basis.clone(),
        }
    }
}
