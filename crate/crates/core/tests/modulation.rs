mod common;

use common::fd::jacobian_oracle;
use common::{central_diff, central_diff5, subgrid};
use nalgebra::Matrix4;
use num_complex::Complex64;
use sgn_whitham::modulation::{
    assemble_ab, characteristic_eigenvalues, differential_coefficients, resultant_quartic,
    scan_region, ModulationState, QuasilinearSystem, ScanWindow, SignPattern,
};
use sgn_whitham::poly::{eval_complex, pencil_det, quartic_roots, resultant};
use sgn_whitham::traveling_wave::{
    averaged_h, averaged_hinv, wavelength, MassFluxSign, RootTriple,
};
use sgn_whitham::Error;

const G: f64 = 10.0;

fn state_at(s: f64, tau: f64) -> ModulationState {
    let roots = RootTriple::from_s_tau(s, tau).unwrap();
    ModulationState::at_rest(roots, G, MassFluxSign::Negative).unwrap()
}

fn eigen_re(state: &ModulationState) -> [f64; 4] {
    characteristic_eigenvalues(&assemble_ab(state).unwrap())
        .unwrap()
        .real_parts()
}

fn assert_matrix_close(analytic: &Matrix4<f64>, oracle: &Matrix4<f64>, tol: f64, what: &str) {
    for r in 0..4 {
        let row_scale = (0..4)
            .map(|c| oracle[(r, c)].abs())
            .fold(0.0, f64::max)
            .max(1e-300);
        for c in 0..4 {
            let (x, y) = (analytic[(r, c)], oracle[(r, c)]);
            assert!(
                (x - y).abs() <= tol * y.abs().max(1e-3 * row_scale),
                "{what}[{r},{c}]: analytic {x} vs finite difference {y}"
            );
        }
    }
}

#[test]
fn printed_matrix_entries() {
    let st = state_at(1.5, 0.5);
    let sys = assemble_ab(&st).unwrap();
    let dc = differential_coefficients(&st.roots);
    let c = st.constants();
    let hb = averaged_h(&st.roots);
    assert_eq!(sys.a[(0, 0)], 0.0);
    assert_eq!(sys.a[(1, 0)], 0.0);
    assert_eq!(sys.a[(0, 1)], dc.lambda[0]);
    assert_eq!(sys.b[(0, 0)], -wavelength(&st.roots));
    assert_eq!(sys.a[(2, 0)], hb);
    assert_eq!(sys.a[(3, 0)], hb * st.phase_speed + c.m);
    assert_eq!(sys.b[(1, 0)], hb);
}

/// Five-point differences with a step well inside the root gaps, so the
/// truncation error stays near 1e-12 and roundoff does not swamp small entries.
#[test]
fn differential_coefficients_match_finite_differences() {
    for (s, tau) in subgrid(20, 100.0, 100.0) {
        let roots = RootTriple::from_s_tau(s, tau).unwrap();
        let dc = differential_coefficients(&roots);
        let h = roots.as_array();
        let step = 1e-3 * h[0].min(h[1] - h[0]).min(h[2] - h[1]);
        for j in 0..3 {
            let perturbed = |x: f64| {
                let mut v = h;
                v[j] = x;
                RootTriple::new(v[0], v[1], v[2]).unwrap()
            };
            let fd_phi = central_diff5(|x| averaged_h(&perturbed(x)), h[j], step);
            let fd_psi = central_diff5(|x| averaged_hinv(&perturbed(x)), h[j], step);
            let fd_lam = central_diff5(|x| wavelength(&perturbed(x)), h[j], step);
            for (name, v, fd) in [
                ("Phi", dc.phi[j], fd_phi),
                ("Psi", dc.psi[j], fd_psi),
                ("Lambda", dc.lambda[j], fd_lam),
            ] {
                assert!(
                    (v - fd).abs() <= 1e-6 * fd.abs(),
                    "{name}{j} at ({s},{tau}): {v} vs {fd}"
                );
            }
        }
    }
}

#[test]
fn differential_coefficients_at_short_step() {
    // Plain central differences at step 1e-7·h2 on the reference wave.
    let roots = RootTriple::new(1.0, 1.5, 2.0).unwrap();
    let dc = differential_coefficients(&roots);
    let h = roots.as_array();
    for j in 0..3 {
        let perturbed = |x: f64| {
            let mut v = h;
            v[j] = x;
            RootTriple::new(v[0], v[1], v[2]).unwrap()
        };
        let step = 1e-7 * h[2];
        let fd = central_diff(|x| averaged_hinv(&perturbed(x)), h[j], step);
        assert!((dc.psi[j] - fd).abs() <= 1e-6 * fd.abs());
        let fd = central_diff(|x| averaged_h(&perturbed(x)), h[j], step);
        assert!((dc.phi[j] - fd).abs() <= 1e-6 * fd.abs());
        let fd = central_diff(|x| wavelength(&perturbed(x)), h[j], step);
        assert!((dc.lambda[j] - fd).abs() <= 1e-6 * fd.abs());
    }
}

#[test]
fn reference_differential_coefficients() {
    let dc = differential_coefficients(&RootTriple::new(1.0, 1.5, 2.0).unwrap());
    let phi = [-0.030_673_335_004, 0.604_400_088_964, 0.426_273_246_040];
    let psi = [0.010_362_385_573, -0.232_372_241_516, -0.123_179_796_803];
    let lam = [9.110_724_878_793, -0.916_752_769_441, -0.159_648_507_713];
    for j in 0..3 {
        assert!((dc.phi[j] - phi[j]).abs() < 1e-11);
        assert!((dc.psi[j] - psi[j]).abs() < 1e-11);
        assert!((dc.lambda[j] - lam[j]).abs() < 1e-11);
    }
}

#[test]
fn uniform_shift_chain_rule() {
    let roots = RootTriple::new(1.0, 1.5, 2.0).unwrap();
    let dc = differential_coefficients(&roots);
    let shifted = |a: f64| averaged_h(&RootTriple::new(1.0 + a, 1.5 + a, 2.0 + a).unwrap());
    let fd = central_diff5(shifted, 0.0, 1e-3);
    assert!((dc.phi.iter().sum::<f64>() - fd).abs() < 1e-10);
}

#[test]
fn euler_homogeneity_of_coefficients() {
    for (s, tau) in subgrid(5, 50.0, 50.0) {
        let roots = RootTriple::from_s_tau(s, tau).unwrap();
        let dc = differential_coefficients(&roots);
        let h = roots.as_array();
        let dot = |v: [f64; 3]| v[0] * h[0] + v[1] * h[1] + v[2] * h[2];
        assert!((dot(dc.phi) - averaged_h(&roots)).abs() < 1e-8 * averaged_h(&roots));
        assert!((dot(dc.psi) + averaged_hinv(&roots)).abs() < 1e-8 * averaged_hinv(&roots));
        assert!((dot(dc.lambda) - wavelength(&roots)).abs() < 1e-8 * wavelength(&roots));
    }
}

#[test]
fn quasilinear_matrices_match_jacobians_of_conservative_form() {
    for (s, tau) in subgrid(20, 100.0, 100.0) {
        for st in [state_at(s, tau), state_at(s, tau).shifted(1.3)] {
            let sys = assemble_ab(&st).unwrap();
            let (a, b) = jacobian_oracle(&st);
            assert_matrix_close(&sys.a, &a, 1e-6, &format!("A at ({s},{tau})"));
            assert_matrix_close(&sys.b, &b, 1e-6, &format!("B at ({s},{tau})"));
        }
    }
}

#[test]
fn charpoly_matches_direct_determinant() {
    for (s, tau) in [(1.5, 0.5), (3.0, 7.0), (40.0, 0.01), (90.0, 90.0)] {
        let sys = assemble_ab(&state_at(s, tau)).unwrap();
        let scale = sys.b.norm() + sys.a.norm();
        for lambda in [-3.7, -0.4, 0.9, 2.2, 5.1] {
            let lam = lambda * scale.sqrt().max(1.0) / 4.0;
            let p = eval_complex(&sys.charpoly, Complex64::new(lam, 0.0)).re;
            let d = pencil_det(&sys.a, &sys.b, lam);
            assert!(
                (p - d).abs() <= 1e-10 * d.abs(),
                "({s},{tau}) at {lam}: {p} vs {d}"
            );
        }
        let det_a = sys.a.determinant();
        assert!((sys.charpoly[4] - det_a).abs() <= 1e-10 * det_a.abs());
    }
}

#[test]
fn reference_state_is_strictly_hyperbolic() {
    let st = ModulationState::at_rest(
        RootTriple::new(1.0, 1.5, 2.0).unwrap(),
        G,
        MassFluxSign::Negative,
    )
    .unwrap();
    let e = characteristic_eigenvalues(&assemble_ab(&st).unwrap()).unwrap();
    assert!(e.all_real && e.distinct && e.strictly_hyperbolic());
    assert_eq!((e.n_positive, e.n_negative), (3, 1));
    let expected = [-4.146_905_51, 1.611_597_93, 2.083_187_18, 4.104_425_31];
    for (z, x) in e.roots.iter().zip(expected) {
        assert!((z.re - x).abs() < 1e-7);
        assert_eq!(z.im, 0.0);
    }
    assert!(e.resultant > 0.0);
}

#[test]
fn galilean_shift_moves_every_eigenvalue() {
    for (s, tau) in subgrid(6, 100.0, 100.0) {
        let base = state_at(s, tau);
        let l0 = eigen_re(&base);
        for c in [-2.0, 0.5, 2.5, 10.0] {
            let l1 = eigen_re(&base.shifted(c));
            for j in 0..4 {
                let expect = l0[j] + c;
                assert!(
                    (l1[j] - expect).abs() <= 1e-9 * expect.abs().max(1.0),
                    "({s},{tau}) c={c}: {} vs {expect}",
                    l1[j]
                );
            }
        }
    }
}

#[test]
fn depth_scaling_multiplies_eigenvalues_by_sqrt_alpha() {
    for (s, tau) in [(1.5, 0.5), (2.0, 3.0), (30.0, 0.2), (80.0, 60.0)] {
        let roots = RootTriple::from_s_tau(s, tau).unwrap();
        let l0 = eigen_re(&ModulationState::at_rest(roots, G, MassFluxSign::Negative).unwrap());
        for alpha in [0.25, 4.0, 9.0] {
            let st =
                ModulationState::at_rest(roots.scaled(alpha).unwrap(), G, MassFluxSign::Negative)
                    .unwrap();
            let l1 = eigen_re(&st);
            for j in 0..4 {
                let expect = alpha.sqrt() * l0[j];
                assert!(
                    (l1[j] - expect).abs() <= 1e-8 * expect.abs(),
                    "alpha={alpha}: {} vs {expect}",
                    l1[j]
                );
            }
        }
    }
}

#[test]
fn flipping_mass_flux_sign_negates_eigenvalues() {
    for (s, tau) in subgrid(5, 100.0, 100.0) {
        let roots = RootTriple::from_s_tau(s, tau).unwrap();
        let neg = eigen_re(&ModulationState::at_rest(roots, G, MassFluxSign::Negative).unwrap());
        let pos = eigen_re(&ModulationState::at_rest(roots, G, MassFluxSign::Positive).unwrap());
        for j in 0..4 {
            assert!((pos[j] + neg[3 - j]).abs() <= 1e-9 * neg[3 - j].abs().max(1.0));
        }
    }
}

fn poly_from_roots(r: [f64; 4]) -> [f64; 5] {
    let mut c = vec![1.0];
    for x in r {
        let mut next = vec![0.0; c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i + 1] += v;
            next[i] -= x * v;
        }
        c = next;
    }
    [c[0], c[1], c[2], c[3], c[4]]
}

#[test]
fn resultant_of_distinct_and_repeated_roots() {
    let p = poly_from_roots([1.0, 2.0, 3.0, 4.0]);
    assert!((resultant_quartic(&p) - 144.0).abs() < 1e-9);
    let q = poly_from_roots([1.0, 1.0, 2.0, 3.0]);
    let norm = q.iter().map(|v| v.abs()).sum::<f64>();
    assert!(resultant_quartic(&q).abs() < 1e-9 * norm);
}

#[test]
fn resultant_matches_product_formula() {
    let p = [-1.0, 0.0, 0.0, 0.0, 1.0];
    let dp = [0.0, 0.0, 0.0, 4.0];
    let roots = quartic_roots(&p);
    let product: Complex64 = roots.iter().map(|z| eval_complex(&dp, *z)).product();
    assert!(product.im.abs() < 1e-10);
    assert!((product.re + 256.0).abs() < 1e-10 * 256.0);
    assert!((resultant_quartic(&p) - product.re).abs() < 1e-10 * 256.0);
    assert!((resultant(&p, &dp) - product.re).abs() < 1e-10 * 256.0);
}

#[test]
fn degenerate_pencil_is_an_error() {
    let sys = QuasilinearSystem::from_matrices(Matrix4::zeros(), Matrix4::identity());
    let err = characteristic_eigenvalues(&sys).unwrap_err();
    assert!(matches!(err, Error::DegeneratePencil { .. }));
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn default_window_scan_is_strictly_hyperbolic() {
    let report = scan_region(&ScanWindow::default(), G, MassFluxSign::Negative, None).unwrap();
    assert_eq!(report.points.len(), 2500);
    assert_eq!(report.failures(), 0);
    assert!(report.all_strictly_hyperbolic());
    assert!(report.resultant_sign_constant());
    let expected = vec![
        SignPattern {
            positive: 2,
            negative: 2,
        },
        SignPattern {
            positive: 3,
            negative: 1,
        },
    ];
    assert_eq!(report.sign_patterns(), expected);
    assert!(report.transitions_per_row().iter().all(|&t| t == 1));
}

#[test]
fn flipped_sign_scan_mirrors_patterns() {
    let neg = scan_region(&ScanWindow::default(), G, MassFluxSign::Negative, None).unwrap();
    let pos = scan_region(&ScanWindow::default(), G, MassFluxSign::Positive, None).unwrap();
    for (a, b) in neg.points.iter().zip(&pos.points) {
        let (ea, eb) = (a.outcome.as_ref().unwrap(), b.outcome.as_ref().unwrap());
        assert_eq!(
            (ea.n_positive, ea.n_negative),
            (eb.n_negative, eb.n_positive)
        );
        for j in 0..4 {
            let (x, y) = (ea.roots[j].re, eb.roots[3 - j].re);
            assert!((x + y).abs() <= 1e-9 * x.abs().max(1.0));
        }
    }
}

/// `τ` at which `det B = 0` for fixed `s`, with `B` taken from finite
/// differences of the conservative fluxes. A zero root of `det(B − λA)`
/// marks the change of sign pattern.
fn zero_speed_tau(s: f64, lo: f64, hi: f64) -> f64 {
    let det_b = |tau: f64| jacobian_oracle(&state_at(s, tau)).1.determinant();
    let (mut a, mut b) = (lo, hi);
    let fa = det_b(a);
    assert!(
        fa * det_b(b) < 0.0,
        "no sign change of det B on [{lo}, {hi}] at s = {s}"
    );
    for _ in 0..50 {
        let mid = 0.5 * (a + b);
        if det_b(mid) * fa > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

#[test]
fn pattern_boundary_matches_zero_speed_curve() {
    let w = ScanWindow::new(1.0, 4.0, 0.0, 20.0, 40);
    let report = scan_region(&w, G, MassFluxSign::Negative, None).unwrap();
    assert_eq!(report.sign_patterns().len(), 2);
    let dtau = (w.tau_max - w.tau_min - 2.0 * w.margin) / (w.grid_n - 1) as f64;
    for row in report.rows() {
        let s = row[0].s;
        let idx = row
            .windows(2)
            .position(|p| p[0].pattern() != p[1].pattern())
            .unwrap();
        assert_eq!(
            row[idx].pattern(),
            Some(SignPattern {
                positive: 3,
                negative: 1
            })
        );
        let tau_star = zero_speed_tau(s, 1.0, 20.0);
        assert!(
            row[idx].tau <= tau_star + 1e-9 && tau_star <= row[idx + 1].tau + 1e-9,
            "s = {s}: boundary {tau_star} outside [{}, {}]",
            row[idx].tau,
            row[idx + 1].tau
        );
        assert!(row[idx + 1].tau - row[idx].tau <= dtau * (1.0 + 1e-9));
    }
}

#[test]
fn shallow_corner_is_three_plus_one_minus() {
    // The zero-speed curve stays above τ ≈ 7.7 for 1 < s < 4.
    let lowest = (1..=30)
        .map(|i| zero_speed_tau(1.0 + 0.1 * i as f64, 1.0, 20.0))
        .fold(f64::INFINITY, f64::min);
    assert!(
        lowest > 7.0 && lowest < 8.5,
        "lowest boundary tau = {lowest}"
    );
    let w = ScanWindow::new(1.0, 4.0, 0.0, 4.0, 30);
    let report = scan_region(&w, G, MassFluxSign::Negative, None).unwrap();
    assert_eq!(
        report.sign_patterns(),
        vec![SignPattern {
            positive: 3,
            negative: 1
        }]
    );
}

#[test]
fn scan_output_independent_of_thread_count() {
    let w = ScanWindow::new(1.0, 20.0, 0.0, 20.0, 16);
    let mut one = Vec::new();
    let mut four = Vec::new();
    scan_region(&w, G, MassFluxSign::Negative, Some(1))
        .unwrap()
        .write_csv(&mut one)
        .unwrap();
    scan_region(&w, G, MassFluxSign::Negative, Some(4))
        .unwrap()
        .write_csv(&mut four)
        .unwrap();
    assert_eq!(one, four);
}
