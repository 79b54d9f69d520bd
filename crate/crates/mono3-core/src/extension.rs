//! Monogenic extension of holomorphic data from the complex plane into a
//! subspace-shaped cylinder.
//!
//! For ζ = ξ·1 + βρ + γρ² the closed-form (principal) extension of `F` is
//!
//! ```text
//! Ext(F)(ζ) = F(ξ) + β·F′(ξ)·ρ + (γ·F′(ξ) + β²/2·F″(ξ))·ρ²
//! ```
//!
//! i.e. exactly the nilpotent Taylor expansion around the complex part. The
//! same value is reproduced by a Cauchy-type integral of `F(t)·(t·1 − ζ)⁻¹`
//! over a circle enclosing f(ζ), discretized here with the uniform
//! trapezoidal rule (spectrally accurate for analytic integrands).
//! A general monogenic function is carried as three holomorphic components
//! Φ = Ext(F₀) + ρ·Ext(F₁) + ρ²·Ext(F₂).

use thiserror::Error;

use crate::algebra::{A3, AlgebraError, Complex};
use crate::holo::{HoloError, HoloFn};
use crate::subspace::{Subspace, SubspaceError};

/// Quadrature is refused when f(ζ) sits further than this fraction of the
/// radius from the contour center; the remaining annulus keeps the node
/// count meaningful.
pub const CONTOUR_MARGIN: f64 = 0.9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtensionError {
    #[error("contour radius must be positive, got {radius}")]
    InvalidRadius { radius: f64 },
    #[error("contour needs at least 8 nodes, got {nodes}")]
    TooFewNodes { nodes: usize },
    #[error(
        "point too close to contour: f-image sits {distance:.6} from the center, margin allows {limit:.6}"
    )]
    PointTooCloseToContour { distance: f64, limit: f64 },
    #[error(transparent)]
    Eval(#[from] HoloError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

/// A circle in ℂ with a node count for trapezoidal quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contour {
    pub center: Complex,
    pub radius: f64,
    pub nodes: usize,
}

impl Contour {
    pub fn new(center: Complex, radius: f64, nodes: usize) -> Result<Contour, ExtensionError> {
        if radius.is_nan() || radius <= 0.0 {
            return Err(ExtensionError::InvalidRadius { radius });
        }
        if nodes < 8 {
            return Err(ExtensionError::TooFewNodes { nodes });
        }
        Ok(Contour {
            center,
            radius,
            nodes,
        })
    }

    /// Unit circle with 64 nodes around the given center.
    pub fn around(center: Complex) -> Contour {
        Contour {
            center,
            radius: 1.0,
            nodes: 64,
        }
    }
}

/// Φ = Ext(F₀) + ρ·Ext(F₁) + ρ²·Ext(F₂) over a fixed subspace.
#[derive(Debug, Clone)]
pub struct MonogenicFn {
    s: Subspace,
    f0: HoloFn,
    f1: HoloFn,
    f2: HoloFn,
}

impl MonogenicFn {
    pub fn new(s: Subspace, f0: HoloFn, f1: HoloFn, f2: HoloFn) -> MonogenicFn {
        MonogenicFn { s, f0, f1, f2 }
    }

    /// The single-component case Φ = Ext(F₀).
    pub fn extension_of(s: Subspace, f0: HoloFn) -> MonogenicFn {
        MonogenicFn::new(s, f0, HoloFn::zero(), HoloFn::zero())
    }

    pub fn subspace(&self) -> &Subspace {
        &self.s
    }

    pub fn components(&self) -> [&HoloFn; 3] {
        [&self.f0, &self.f1, &self.f2]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalMode {
    ClosedForm,
    Quadrature(Contour),
}

/// Closed-form extension of `F` at the point with coordinates `p`.
pub fn principal_extension(f: &HoloFn, s: &Subspace, p: &[f64]) -> Result<A3, ExtensionError> {
    Ok(ext_at(f, s.embed(p)?)?)
}

fn ext_at(f: &HoloFn, z: A3) -> Result<A3, HoloError> {
    let (v, d1, d2) = f.jet(z.a)?;
    Ok(A3::new(v, z.b * d1, z.c * d1 + z.b * z.b * d2 * 0.5))
}

/// Trapezoidal discretization of (1/2πi)·∮ F(t)·(t·1 − ζ)⁻¹ dt over the
/// contour circle. Agrees with [`principal_extension`] up to quadrature
/// error, which decays geometrically in the node count.
pub fn cauchy_extension(
    f: &HoloFn,
    s: &Subspace,
    p: &[f64],
    contour: &Contour,
) -> Result<A3, ExtensionError> {
    let z = s.embed(p)?;
    quadrature(
        |t| {
            let v = f.eval_c(t)?;
            Ok(A3::from_complex(v))
        },
        z,
        contour,
    )
}

fn quadrature(
    numerator: impl Fn(Complex) -> Result<A3, HoloError>,
    z: A3,
    contour: &Contour,
) -> Result<A3, ExtensionError> {
    let distance = (z.a - contour.center).norm();
    let limit = CONTOUR_MARGIN * contour.radius;
    if distance > limit {
        return Err(ExtensionError::PointTooCloseToContour { distance, limit });
    }
    let n = contour.nodes;
    let mut acc = A3::ZERO;
    for j in 0..n {
        let theta = std::f64::consts::TAU * j as f64 / n as f64;
        let unit = Complex::new(0.0, theta).exp();
        let t = contour.center + contour.radius * unit;
        let resolvent = A3::resolvent(t, &z)?;
        acc += numerator(t)? * resolvent * unit;
    }
    Ok(acc * (contour.radius / n as f64))
}

/// Evaluates the three-component representation in either mode. The closed
/// form is the reference; quadrature must agree within its spectral error.
pub fn eval_monogenic(m: &MonogenicFn, p: &[f64], mode: &EvalMode) -> Result<A3, ExtensionError> {
    let z = m.s.embed(p)?;
    match mode {
        EvalMode::ClosedForm => {
            let e0 = ext_at(&m.f0, z)?;
            let e1 = ext_at(&m.f1, z)?;
            let e2 = ext_at(&m.f2, z)?;
            Ok(e0 + A3::RHO * e1 + A3::RHO2 * e2)
        }
        EvalMode::Quadrature(contour) => quadrature(
            |t| {
                Ok(A3::new(
                    m.f0.eval_c(t)?,
                    m.f1.eval_c(t)?,
                    m.f2.eval_c(t)?,
                ))
            },
            z,
            contour,
        ),
    }
}

/// The analytically known derivative Φ′ = Ext(F₀′) + ρ·Ext(F₁′) + ρ²·Ext(F₂′).
///
/// Contract: for every direction h of the subspace, the one-sided directional
/// difference quotient of Φ at ζ converges to h·Φ′(ζ).
///
/// First and second derivatives of the components come from one jet each;
/// the single third derivative that survives the ρ-truncation is taken from
/// the second-derivative channel of jets at shifted seeds (central
/// difference with one Richardson step, error O(h⁴)).
pub fn gateaux_of_extension(m: &MonogenicFn, p: &[f64]) -> Result<A3, ExtensionError> {
    let z = m.s.embed(p)?;
    let (beta, gamma) = (z.b, z.c);

    let (_, f0p, f0pp) = m.f0.jet(z.a)?;
    let f0ppp = if beta.norm() == 0.0 {
        Complex::new(0.0, 0.0)
    } else {
        third_derivative(&m.f0, z.a)?
    };
    let d0 = A3::new(
        f0p,
        beta * f0pp,
        gamma * f0pp + beta * beta * f0ppp * 0.5,
    );

    let (_, f1p, f1pp) = m.f1.jet(z.a)?;
    let d1 = A3::new(f1p, beta * f1pp, Complex::new(0.0, 0.0));

    let (_, f2p, _) = m.f2.jet(z.a)?;

    Ok(d0 + A3::RHO * d1 + A3::RHO2 * A3::from_complex(f2p))
}

fn third_derivative(f: &HoloFn, xi: Complex) -> Result<Complex, HoloError> {
    let h = 1e-3;
    let diff = |step: f64| -> Result<Complex, HoloError> {
        let (_, _, plus) = f.jet(xi + step)?;
        let (_, _, minus) = f.jet(xi - step)?;
        Ok((plus - minus) / (2.0 * step))
    };
    let coarse = diff(h)?;
    let fine = diff(h / 2.0)?;
    Ok((fine * 4.0 - coarse) / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn harmonic_unit() -> Subspace {
        Subspace::harmonic_family(c(1.0, 0.0), c(0.0, 0.0)).unwrap()
    }

    #[test]
    fn extension_of_identity_is_the_point() {
        let s = harmonic_unit();
        let f = HoloFn::parse("z").unwrap();
        for p in [[0.0, 0.0, 0.0], [1.0, 2.0, 3.0], [-0.3, 0.4, 0.9]] {
            assert_eq!(
                principal_extension(&f, &s, &p).unwrap(),
                s.embed(&p).unwrap()
            );
        }
    }

    #[test]
    fn extension_of_square_at_one_plus_rho() {
        let s = harmonic_unit();
        let f = HoloFn::parse("z^2").unwrap();
        let v = principal_extension(&f, &s, &[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(v, A3::new(c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)));
    }

    #[test]
    fn plane_subspace_collapses_to_complex_analysis() {
        let s = Subspace::new(vec![A3::ONE, A3::from_complex(c(0.0, 1.0))]).unwrap();
        let f = HoloFn::parse("z^2").unwrap();
        let v = principal_extension(&f, &s, &[0.7, -0.4]).unwrap();
        let xi = c(0.7, -0.4);
        assert_eq!(v.a, xi * xi);
        assert_eq!(v.b, c(0.0, 0.0));
        assert_eq!(v.c, c(0.0, 0.0));
    }

    #[test]
    fn quadrature_of_constant_is_one() {
        let s = harmonic_unit();
        let f = HoloFn::parse("1").unwrap();
        let p = [0.4, 0.2, 1.5];
        let contour = Contour::around(s.embed(&p).unwrap().f());
        let v = cauchy_extension(&f, &s, &p, &contour).unwrap();
        assert!((v - A3::ONE).norm() < 1e-12);
    }

    #[test]
    fn quadrature_reproduces_the_point_and_the_square() {
        let s = harmonic_unit();
        let p = [1.0, 0.0, 1.0];
        let contour = Contour::around(c(1.0, 0.0));

        let ident = HoloFn::parse("z").unwrap();
        let v = cauchy_extension(&ident, &s, &p, &contour).unwrap();
        assert!((v - s.embed(&p).unwrap()).norm() < 1e-10);

        let square = HoloFn::parse("z^2").unwrap();
        let v = cauchy_extension(&square, &s, &p, &contour).unwrap();
        let want = principal_extension(&square, &s, &p).unwrap();
        assert!((v - want).norm() < 1e-10);
    }

    #[test]
    fn margin_rule_is_enforced() {
        let s = harmonic_unit();
        let contour = Contour::around(c(0.0, 0.0));
        let f = HoloFn::parse("z").unwrap();
        let err = cauchy_extension(&f, &s, &[0.95, 0.0, 0.0], &contour).unwrap_err();
        assert!(matches!(
            err,
            ExtensionError::PointTooCloseToContour { .. }
        ));
    }

    #[test]
    fn contour_construction_guards() {
        assert!(matches!(
            Contour::new(c(0.0, 0.0), 0.0, 64),
            Err(ExtensionError::InvalidRadius { .. })
        ));
        assert!(matches!(
            Contour::new(c(0.0, 0.0), 1.0, 4),
            Err(ExtensionError::TooFewNodes { nodes: 4 })
        ));
    }

    #[test]
    fn component_composition() {
        let s = harmonic_unit();
        let m = MonogenicFn::new(
            s.clone(),
            HoloFn::parse("z").unwrap(),
            HoloFn::parse("1").unwrap(),
            HoloFn::zero(),
        );
        let v = eval_monogenic(&m, &[1.0, 0.0, 1.0], &EvalMode::ClosedForm).unwrap();
        assert_eq!(v, A3::new(c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)));
    }

    #[test]
    fn pure_second_channel_sees_only_the_f_image() {
        let s = harmonic_unit();
        let m = MonogenicFn::new(
            s.clone(),
            HoloFn::zero(),
            HoloFn::zero(),
            HoloFn::parse("z").unwrap(),
        );
        let p = [0.3, -0.7, 2.0];
        let v = eval_monogenic(&m, &p, &EvalMode::ClosedForm).unwrap();
        let zeta = s.embed(&p).unwrap();
        assert_eq!(v, A3::RHO2 * zeta.f());
    }

    #[test]
    fn single_component_reduces_to_principal_extension() {
        let s = harmonic_unit();
        let f = HoloFn::parse("exp(z)").unwrap();
        let m = MonogenicFn::extension_of(s.clone(), f.clone());
        let p = [0.2, 0.4, -0.6];
        assert_eq!(
            eval_monogenic(&m, &p, &EvalMode::ClosedForm).unwrap(),
            principal_extension(&f, &s, &p).unwrap()
        );
    }

    #[test]
    fn quadrature_mode_agrees_with_closed_form() {
        let s = harmonic_unit();
        let m = MonogenicFn::new(
            s.clone(),
            HoloFn::parse("z^2 + 1").unwrap(),
            HoloFn::parse("exp(z)").unwrap(),
            HoloFn::parse("z").unwrap(),
        );
        let p = [0.3, 0.1, 0.8];
        let closed = eval_monogenic(&m, &p, &EvalMode::ClosedForm).unwrap();
        let contour = Contour::around(s.embed(&p).unwrap().f());
        let quad = eval_monogenic(&m, &p, &EvalMode::Quadrature(contour)).unwrap();
        assert!((closed - quad).norm() < 1e-8);
    }

    #[test]
    fn derivative_of_square_is_twice_the_point() {
        let s = harmonic_unit();
        let m = MonogenicFn::extension_of(s.clone(), HoloFn::parse("z^2").unwrap());
        let p = [1.0, 0.0, 1.0];
        let d = gateaux_of_extension(&m, &p).unwrap();
        assert_eq!(d, s.embed(&p).unwrap() * 2.0);
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let s = harmonic_unit();
        let m = MonogenicFn::extension_of(s, HoloFn::parse("5").unwrap());
        let d = gateaux_of_extension(&m, &[0.4, 0.1, -0.2]).unwrap();
        assert_eq!(d, A3::ZERO);
    }

    #[test]
    fn exp_is_its_own_derivative() {
        let s = harmonic_unit();
        let f = HoloFn::parse("exp(z)").unwrap();
        let m = MonogenicFn::extension_of(s.clone(), f.clone());
        let p = [0.3, -0.2, 0.7];
        let d = gateaux_of_extension(&m, &p).unwrap();
        let v = principal_extension(&f, &s, &p).unwrap();
        assert!((d - v).norm() < 1e-9);
    }

    #[test]
    fn derivative_includes_all_channels() {
        let s = harmonic_unit();
        let m = MonogenicFn::new(
            s.clone(),
            HoloFn::parse("z^3").unwrap(),
            HoloFn::parse("z^2").unwrap(),
            HoloFn::parse("z^2").unwrap(),
        );
        let p = [0.5, 0.25, 1.25];
        let d = gateaux_of_extension(&m, &p).unwrap();
        let md = MonogenicFn::new(
            s,
            HoloFn::parse("3*z^2").unwrap(),
            HoloFn::parse("2*z").unwrap(),
            HoloFn::parse("2*z").unwrap(),
        );
        let want = eval_monogenic(&md, &p, &EvalMode::ClosedForm).unwrap();
        assert!((d - want).norm() < 1e-9);
    }
}
