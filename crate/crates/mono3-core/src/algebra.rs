//! Arithmetic in the three-dimensional commutative algebra over the complex
//! field with basis `{1, ρ, ρ²}` and relation `ρ³ = 0`.
//!
//! Every element decomposes uniquely as `a + bρ + cρ²` with complex
//! coefficients. The elements with `a = 0` form the radical: they are exactly
//! the non-invertible elements. The projection `a + bρ + cρ² ↦ a` is a unital
//! ring homomorphism onto ℂ whose kernel is the radical.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Complex = num_complex::Complex64;

/// Elements with `|a|` below this are treated as radical (non-invertible).
///
/// The algebra only distinguishes `a = 0` from `a ≠ 0`; a floor keeps the
/// inverse formula away from catastrophic cancellation near the radical.
pub const INVERTIBILITY_FLOOR: f64 = 1e-9;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum AlgebraError {
    /// The element lies in (or numerically too close to) the radical.
    #[error("non-invertible element: |a| = {modulus:.3e} is below the floor {floor:.1e}")]
    NonInvertible { modulus: f64, floor: f64 },
}

/// An element `a + bρ + cρ²` of the truncated polynomial algebra ℂ[ρ]/(ρ³).
///
/// Doubles as a second-order complex jet: evaluating a holomorphic `F` at
/// `ξ + ρ` yields `F(ξ) + F′(ξ)ρ + (F″(ξ)/2)ρ²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "A3Wire", into = "A3Wire")]
pub struct A3 {
    /// Coefficient of `1`.
    pub a: Complex,
    /// Coefficient of `ρ`.
    pub b: Complex,
    /// Coefficient of `ρ²`.
    pub c: Complex,
}

impl A3 {
    pub const ZERO: A3 = A3::new(Complex::ZERO, Complex::ZERO, Complex::ZERO);
    pub const ONE: A3 = A3::new(Complex::ONE, Complex::ZERO, Complex::ZERO);
    pub const RHO: A3 = A3::new(Complex::ZERO, Complex::ONE, Complex::ZERO);
    pub const RHO2: A3 = A3::new(Complex::ZERO, Complex::ZERO, Complex::ONE);

    pub const fn new(a: Complex, b: Complex, c: Complex) -> Self {
        A3 { a, b, c }
    }

    /// Embeds a complex scalar as `a · 1`.
    pub const fn from_complex(a: Complex) -> Self {
        A3::new(a, Complex::ZERO, Complex::ZERO)
    }

    pub fn from_real(x: f64) -> Self {
        A3::from_complex(Complex::new(x, 0.0))
    }

    /// The Euclidean norm `√(|a|² + |b|² + |c|²)`.
    pub fn norm(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr()).sqrt()
    }

    /// The multiplicative functional `a + bρ + cρ² ↦ a`.
    ///
    /// A unital ring homomorphism onto ℂ; its kernel is the radical.
    pub fn f(&self) -> Complex {
        self.a
    }

    /// True iff the element lies in the radical up to `tol`: `|a| ≤ tol`.
    pub fn is_radical(&self, tol: f64) -> bool {
        self.a.norm() <= tol
    }

    /// The inverse `1/a − (b/a²)ρ + (b²/a³ − c/a²)ρ²`, defined when `a ≠ 0`.
    pub fn inverse(&self) -> Result<A3, AlgebraError> {
        self.inverse_with_floor(INVERTIBILITY_FLOOR)
    }

    pub fn inverse_with_floor(&self, floor: f64) -> Result<A3, AlgebraError> {
        let modulus = self.a.norm();
        if modulus < floor {
            return Err(AlgebraError::NonInvertible { modulus, floor });
        }
        let ia = self.a.inv();
        let ia2 = ia * ia;
        let ia3 = ia2 * ia;
        Ok(A3::new(
            ia,
            -self.b * ia2,
            self.b * self.b * ia3 - self.c * ia2,
        ))
    }

    /// The resolvent `(t·1 − z)⁻¹` expanded over the basis:
    /// `1/(t−a) + b/(t−a)²·ρ + (c/(t−a)² + b²/(t−a)³)·ρ²`.
    ///
    /// Fails when `t` lies over the singular fiber, i.e. `|t − a|` is below
    /// the invertibility floor.
    pub fn resolvent(t: Complex, z: &A3) -> Result<A3, AlgebraError> {
        let w = t - z.a;
        let modulus = w.norm();
        if modulus < INVERTIBILITY_FLOOR {
            return Err(AlgebraError::NonInvertible {
                modulus,
                floor: INVERTIBILITY_FLOOR,
            });
        }
        let iw = w.inv();
        let iw2 = iw * iw;
        let iw3 = iw2 * iw;
        Ok(A3::new(iw, z.b * iw2, z.c * iw2 + z.b * z.b * iw3))
    }
}

impl Add for A3 {
    type Output = A3;
    fn add(self, rhs: A3) -> A3 {
        A3::new(self.a + rhs.a, self.b + rhs.b, self.c + rhs.c)
    }
}

impl AddAssign for A3 {
    fn add_assign(&mut self, rhs: A3) {
        *self = *self + rhs;
    }
}

impl Sub for A3 {
    type Output = A3;
    fn sub(self, rhs: A3) -> A3 {
        A3::new(self.a - rhs.a, self.b - rhs.b, self.c - rhs.c)
    }
}

impl SubAssign for A3 {
    fn sub_assign(&mut self, rhs: A3) {
        *self = *self - rhs;
    }
}

impl Neg for A3 {
    type Output = A3;
    fn neg(self) -> A3 {
        A3::new(-self.a, -self.b, -self.c)
    }
}

impl Mul for A3 {
    type Output = A3;
    /// Ring product truncated by `ρ³ = 0`.
    fn mul(self, rhs: A3) -> A3 {
        A3::new(
            self.a * rhs.a,
            self.a * rhs.b + rhs.a * self.b,
            self.a * rhs.c + rhs.a * self.c + self.b * rhs.b,
        )
    }
}

impl Mul<f64> for A3 {
    type Output = A3;
    fn mul(self, s: f64) -> A3 {
        A3::new(self.a * s, self.b * s, self.c * s)
    }
}

impl Mul<A3> for f64 {
    type Output = A3;
    fn mul(self, u: A3) -> A3 {
        u * self
    }
}

impl Mul<Complex> for A3 {
    type Output = A3;
    fn mul(self, s: Complex) -> A3 {
        A3::new(self.a * s, self.b * s, self.c * s)
    }
}

impl Mul<A3> for Complex {
    type Output = A3;
    fn mul(self, u: A3) -> A3 {
        u * self
    }
}

impl fmt::Display for A3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})ρ + ({})ρ²", self.a, self.b, self.c)
    }
}

/// JSON wire form: each complex coefficient as a `[re, im]` pair.
#[derive(Serialize, Deserialize)]
struct A3Wire {
    a: [f64; 2],
    b: [f64; 2],
    c: [f64; 2],
}

impl From<A3Wire> for A3 {
    fn from(w: A3Wire) -> A3 {
        A3::new(
            Complex::new(w.a[0], w.a[1]),
            Complex::new(w.b[0], w.b[1]),
            Complex::new(w.c[0], w.c[1]),
        )
    }
}

impl From<A3> for A3Wire {
    fn from(u: A3) -> A3Wire {
        A3Wire {
            a: [u.a.re, u.a.im],
            b: [u.b.re, u.b.im],
            c: [u.c.re, u.c.im],
        }
    }
}
