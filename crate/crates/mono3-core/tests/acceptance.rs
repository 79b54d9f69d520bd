//! Acceptance gate: one test per criterion, tolerances pinned inline.
//!
//! Each test prints a single `criterion N (...): pass|FAIL` line (visible
//! with `--nocapture`, and always on failure) and then asserts, so the
//! libtest summary doubles as the per-criterion scoreboard. Criterion 9
//! (command-line behaviour) lives in the CLI crate's acceptance tests.
//!
//! Criterion 7's step-halving clause is expected to fail: see the note in
//! that test.

mod common;

use common::*;
use mono3_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CATALOG: [&str; 7] = [
    "z^3 - 2*z + 1",
    "exp(z)*sin(z) + cos(z)",
    "1/(z - 5)",
    "log(z + 5)",
    "(z^2 + 1)/(z - 4)",
    "-z^4 + 2",
    "sin(z)*sin(z) + cos(z)*cos(z)",
];

fn verdict_line(n: u32, name: &str, ok: bool, detail: &str) {
    let flag = if ok { "pass" } else { "FAIL" };
    if detail.is_empty() {
        println!("criterion {n} ({name}): {flag}");
    } else {
        println!("criterion {n} ({name}): {flag} — {detail}");
    }
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

fn random_unit_box_element(rng: &mut ChaCha8Rng) -> A3 {
    let mut comp = || c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    A3::new(comp(), comp(), comp())
}

fn random_invertible(rng: &mut ChaCha8Rng) -> A3 {
    loop {
        let x = random_unit_box_element(rng);
        if x.a.norm() >= 0.1 {
            return x;
        }
    }
}

#[test]
fn criterion_01_algebra_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst_inverse = 0.0_f64;
    let mut worst_axiom = 0.0_f64;
    for _ in 0..1000 {
        let x = random_invertible(&mut rng);
        let y = random_unit_box_element(&mut rng);
        let z = random_unit_box_element(&mut rng);

        assert_eq!(x * y, y * x, "commutativity must be bitwise");
        assert_eq!(x * A3::RHO * A3::RHO * A3::RHO, A3::ZERO, "rho^3 = 0");
        worst_axiom = worst_axiom
            .max(((x * y) * z - x * (y * z)).norm())
            .max((x * (y + z) - (x * y + x * z)).norm());

        let residual = (x * x.inverse().unwrap() - A3::ONE).norm();
        worst_inverse = worst_inverse.max(residual);
    }

    let mut worst_resolvent = 0.0_f64;
    for _ in 0..100 {
        let z = random_unit_box_element(&mut rng);
        let t = loop {
            let t = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if (t - z.a).norm() >= 0.1 {
                break t;
            }
        };
        let direct = A3::resolvent(t, &z).unwrap();
        let via_inverse = (A3::from_complex(t) - z).inverse().unwrap();
        worst_resolvent = worst_resolvent.max((direct - via_inverse).norm());
    }

    let ok = worst_inverse <= 1e-12 && worst_axiom <= 1e-12 && worst_resolvent <= 1e-12;
    verdict_line(
        1,
        "algebra exactness",
        ok,
        &format!(
            "worst inverse {worst_inverse:.2e}, axioms {worst_axiom:.2e}, \
             resolvent {worst_resolvent:.2e}"
        ),
    );
}

#[test]
fn criterion_02_extension_matches_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let s = Subspace::harmonic_family(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    let mut worst = 0.0_f64;
    for text in CATALOG {
        let f: HoloFn = text.parse().unwrap();
        for _ in 0..100 {
            let p = random_point(3, 1.0, &mut rng);
            let zeta = s.embed(&p).unwrap();
            let by_jet = principal_extension(&f, &s, &p).unwrap();
            let direct = f.eval_a3(zeta).unwrap();
            let rel = (by_jet - direct).norm() / (1.0 + direct.norm());
            worst = worst.max(rel);
        }
    }
    verdict_line(
        2,
        "jet recombination vs direct algebra evaluation",
        worst <= 1e-10,
        &format!("worst relative gap {worst:.2e} over {} functions", CATALOG.len()),
    );
}

#[test]
fn criterion_03_quadrature_agreement_and_convergence() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let s = Subspace::harmonic_family(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    let mut max32 = 0.0_f64;
    let mut max64 = 0.0_f64;
    for text in ["z^3 - 2*z + 1", "exp(z)"] {
        let m = MonogenicFn::extension_of(s.clone(), text.parse().unwrap());
        for _ in 0..100 {
            let p = random_point(3, 1.0, &mut rng);
            let w = s.embed(&p).unwrap().f();
            // the point sits at relative distance q ∈ [0.2, 0.55] from the
            // centre, inside the 0.9 margin with room to spare
            let q = rng.gen_range(0.2..0.55);
            let angle = rng.gen_range(0.0..std::f64::consts::TAU);
            let center = w + q * Complex::new(0.0, angle).exp();
            let exact = eval_monogenic(&m, &p, &EvalMode::ClosedForm).unwrap();
            let scale = 1.0 + exact.norm();
            for (nodes, worst) in [(32usize, &mut max32), (64usize, &mut max64)] {
                let mode = EvalMode::Quadrature(Contour::new(center, 1.0, nodes).unwrap());
                let err = (eval_monogenic(&m, &p, &mode).unwrap() - exact).norm() / scale;
                *worst = worst.max(err);
            }
        }
    }
    let ok = max64 <= 1e-8 && max32 / max64 >= 10.0;
    verdict_line(
        3,
        "contour quadrature",
        ok,
        &format!("max relative error {max64:.2e} at 64 nodes, {max32:.2e} at 32"),
    );
}

#[test]
fn criterion_04_extensions_pass_the_directional_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let harmonic = Subspace::harmonic_family(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    let skew = loop {
        let s = random_valid_subspace(3, &mut rng);
        if !s.is_harmonic(1e-9).unwrap() {
            break s;
        }
    };

    let mut worst_residual = 0.0_f64;
    let mut worst_star_gap = 0.0_f64;
    let mut all_pass = true;
    for s in [&harmonic, &skew] {
        let m = MonogenicFn::extension_of(s.clone(), "z^2 + exp(z)".parse().unwrap());
        let phi = SampledFn::Extension(m.clone());
        let d = s.canonical_directions();
        for _ in 0..100 {
            let p = random_point(3, 1.0, &mut rng);
            let report = check_kprime(&phi, s, &p, &d, 1e-4).unwrap();
            all_pass &= report.verdict.passed();
            let scale = 1.0 + report.phi_star.norm();
            for r in &report.residuals {
                worst_residual = worst_residual.max(r / scale);
            }
            let analytic = gateaux_of_extension(&m, &p).unwrap();
            worst_star_gap =
                worst_star_gap.max((report.phi_star - analytic).norm() / scale);
        }
    }
    let ok = all_pass && worst_star_gap <= 1e-5;
    verdict_line(
        4,
        "monogenicity of extensions",
        ok,
        &format!(
            "worst relative residual {worst_residual:.2e}, \
             derivative gap {worst_star_gap:.2e} over two bases"
        ),
    );
}

#[test]
fn criterion_05_negative_controls() {
    let s = Subspace::harmonic_family(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    let d = s.canonical_directions();
    let sample_box = [(-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0)];

    let summary = grid_verify(&SampledFn::ConjF, &s, &sample_box, 100, &d, 1e-4, 105).unwrap();
    let report = check_kprime(&SampledFn::ConjF, &s, &[0.3, 0.4, 0.1], &d, 1e-4).unwrap();
    let first_residual = report.residuals[0];

    let mut conj_floor = f64::INFINITY;
    for delta in [1e-2, 1e-3, 1e-4] {
        let r = check_lorch(
            &SampledFn::ConjF,
            &s,
            &[0.3, 0.4, 0.1],
            &report.phi_star,
            32,
            delta,
            105,
        )
        .unwrap();
        conj_floor = conj_floor.min(r);
    }

    let m = MonogenicFn::extension_of(s.clone(), "z^2".parse().unwrap());
    let p = [0.3, 0.4, 0.1];
    let dv = gateaux_of_extension(&m, &p).unwrap();
    let good = SampledFn::Extension(m);
    let decayed = check_lorch(&good, &s, &p, &dv, 32, 1e-4, 105).unwrap();

    let ok = summary.pass_fraction == 0.0
        && (1.9..=2.1).contains(&first_residual)
        && conj_floor >= 0.5
        && decayed <= 1e-3;
    verdict_line(
        5,
        "negative controls",
        ok,
        &format!(
            "conjugation fails {}/100 points, pinned residual {first_residual:.4}, \
             remainder floor {conj_floor:.3} vs extension remainder {decayed:.2e}",
            ((1.0 - summary.pass_fraction) * 100.0).round()
        ),
    );
}

#[test]
fn criterion_06_radical_mechanics() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let bases = [
        Subspace::harmonic_family(c(1.0, 0.0), c(0.0, 0.0)).unwrap(),
        structured(4),
        random_valid_subspace(5, &mut rng),
    ];

    let mut worst_dd = 0.0_f64;
    let mut exact_invariance = true;
    for s in &bases {
        // ρ²·Ext(F₂): the whole value lives in the top radical layer
        let top = SampledFn::Extension(MonogenicFn::new(
            s.clone(),
            HoloFn::zero(),
            HoloFn::zero(),
            "exp(z)".parse().unwrap(),
        ));
        let full = MonogenicFn::new(
            s.clone(),
            "exp(z)".parse().unwrap(),
            "z^2".parse().unwrap(),
            "sin(z)".parse().unwrap(),
        );
        for _ in 0..20 {
            let p = random_point(s.k(), 1.0, &mut rng);
            for v in s.radical_basis() {
                let dd =
                    directional_derivative(&top, s, &p, v, DEFAULT_DELTA0, DEFAULT_LEVELS)
                        .unwrap();
                worst_dd = worst_dd.max(dd.norm());

                if s.radical_basis()[0].iter().all(|x| x.abs() == 0.0 || x.abs() == 1.0) {
                    // structured bases have exact coordinate kernels, so the
                    // visible part must not move by even one bit
                    let base = eval_monogenic(&full, &p, &EvalMode::ClosedForm).unwrap().f();
                    let q: Vec<f64> =
                        p.iter().zip(v).map(|(x, t)| x + 0.8 * t).collect();
                    let moved =
                        eval_monogenic(&full, &q, &EvalMode::ClosedForm).unwrap().f();
                    exact_invariance &= base.re.to_bits() == moved.re.to_bits()
                        && base.im.to_bits() == moved.im.to_bits();
                }
            }
        }
    }
    let ok = worst_dd <= 1e-6 && exact_invariance;
    verdict_line(
        6,
        "radical mechanics",
        ok,
        &format!("worst radical derivative {worst_dd:.2e}, exact invariance {exact_invariance}"),
    );
}

/// The step-halving clause of this criterion asks for residual(h)/residual(h/2)
/// in [3.5, 4.5] for the cubic integrand. Over a harmonic basis every real
/// component of that extension is a polynomial of degree ≤ 3 in the
/// coordinates, and the 7-point stencil differentiates cubics exactly, so
/// both residuals are rounding noise (~1e-11) and the ratio carries no
/// signal. The check is implemented as stated and is expected to fail; the
/// measured pairs are printed for inspection. A transcendental integrand
/// (see the property suite) does exhibit the 4:1 ratio.
#[test]
fn criterion_07_harmonic_laplace() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);

    // harmonic family identity
    let mut worst_identity = 0.0_f64;
    for _ in 0..100 {
        let b3 = loop {
            let b = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if b.norm() > 1e-3 {
                break b;
            }
        };
        let c3 = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let s = Subspace::harmonic_family(b3, c3).unwrap();
        let e = s.basis();
        worst_identity = worst_identity.max((e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).norm());
    }
    let identity_ok = worst_identity <= 1e-12;
    println!("criterion 7 identity clause: worst |e1²+e2²+e3²| = {worst_identity:.2e}");

    // interior points with a visible f-image, shared by both FD clauses
    let harmonic = Subspace::harmonic_family(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    let cubic_h = MonogenicFn::extension_of(harmonic.clone(), "z^3".parse().unwrap());
    let points: Vec<Vec<f64>> = (0..10)
        .map(|_| loop {
            let p = random_point(3, 1.0, &mut rng);
            if (p[0] * p[0] + p[1] * p[1]).sqrt() >= 0.2 {
                break p;
            }
        })
        .collect();

    let h = 1e-2;
    let mut ratios_ok = true;
    for p in &points {
        let (r1, r2) = check_laplace(&cubic_h, p, h).unwrap();
        let ratio = r1 / r2;
        ratios_ok &= (3.5..=4.5).contains(&ratio);
        println!(
            "criterion 7 ratio clause at ({:+.3}, {:+.3}, {:+.3}): \
             residual(h) = {r1:.3e}, residual(h/2) = {r2:.3e}, ratio = {ratio:.3}",
            p[0], p[1], p[2]
        );
    }

    // non-harmonic basis: the defect surfaces in the ρ²-channel
    let skew = Subspace::new(vec![A3::ONE, A3::from_complex(c(0.0, 1.0)), A3::RHO]).unwrap();
    let cubic_s = MonogenicFn::extension_of(skew, "z^3".parse().unwrap());
    let mut min_leak = f64::INFINITY;
    for p in &points {
        let mut sum = A3::ZERO;
        let center = eval_monogenic(&cubic_s, p, &EvalMode::ClosedForm).unwrap();
        for axis in 0..3 {
            for sign in [-1.0, 1.0] {
                let mut q = p.clone();
                q[axis] += sign * h;
                sum += eval_monogenic(&cubic_s, &q, &EvalMode::ClosedForm).unwrap();
            }
        }
        let leak = ((sum - center * 6.0) * (1.0 / (h * h))).c.norm();
        min_leak = min_leak.min(leak);
    }
    let leak_ok = min_leak >= 1e-1;
    println!("criterion 7 leak clause: smallest ρ²-channel residual = {min_leak:.2e}");

    verdict_line(
        7,
        "harmonic bases and the Laplacian",
        identity_ok && ratios_ok && leak_ok,
        &format!(
            "identity {}, step-halving ratio {}, non-harmonic leak {}",
            if identity_ok { "ok" } else { "out of band" },
            if ratios_ok {
                "ok"
            } else {
                "out of band (cubic components are differentiated exactly; \
                 residuals are rounding noise)"
            },
            if leak_ok { "ok" } else { "out of band" }
        ),
    );
}

#[test]
fn criterion_08_general_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let plane = structured(2);
    let four = structured(4);
    assert_eq!(four.radical_basis().len(), 2, "kernel computation for k = 4");

    let mut worst_ext = 0.0_f64;
    let mut plane_stays_complex = true;
    let mut worst_quad = 0.0_f64;
    let mut all_pass = true;
    let mut worst_star_gap = 0.0_f64;

    for s in [&plane, &four] {
        let k = s.k();
        for text in CATALOG {
            let f: HoloFn = text.parse().unwrap();
            for _ in 0..25 {
                let p = random_point(k, 1.0, &mut rng);
                let by_jet = principal_extension(&f, s, &p).unwrap();
                let direct = f.eval_a3(s.embed(&p).unwrap()).unwrap();
                worst_ext =
                    worst_ext.max((by_jet - direct).norm() / (1.0 + direct.norm()));
                if k == 2 {
                    plane_stays_complex &=
                        by_jet.b == Complex::new(0.0, 0.0) && by_jet.c == Complex::new(0.0, 0.0);
                }
            }
        }

        let m = MonogenicFn::extension_of(s.clone(), "z^2 + exp(z)".parse().unwrap());
        let phi = SampledFn::Extension(m.clone());
        let d = s.canonical_directions();
        for _ in 0..25 {
            let p = random_point(k, 1.0, &mut rng);
            let w = s.embed(&p).unwrap().f();
            let mode = EvalMode::Quadrature(
                Contour::new(w + c(0.4, 0.1), 1.0, 64).unwrap(),
            );
            let exact = eval_monogenic(&m, &p, &EvalMode::ClosedForm).unwrap();
            worst_quad = worst_quad
                .max((eval_monogenic(&m, &p, &mode).unwrap() - exact).norm()
                    / (1.0 + exact.norm()));

            let report = check_kprime(&phi, s, &p, &d, 1e-4).unwrap();
            all_pass &= report.verdict.passed();
            let analytic = gateaux_of_extension(&m, &p).unwrap();
            worst_star_gap = worst_star_gap.max(
                (report.phi_star - analytic).norm() / (1.0 + report.phi_star.norm()),
            );
        }
    }

    let ok = worst_ext <= 1e-10
        && plane_stays_complex
        && worst_quad <= 1e-8
        && all_pass
        && worst_star_gap <= 1e-5;
    verdict_line(
        8,
        "two- and four-dimensional subspaces",
        ok,
        &format!(
            "extension gap {worst_ext:.2e}, quadrature gap {worst_quad:.2e}, \
             derivative gap {worst_star_gap:.2e}, plane stays complex: {plane_stays_complex}"
        ),
    );
}
