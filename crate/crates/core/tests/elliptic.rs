#![allow(clippy::excessive_precision)]

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use common::{central_diff, e_oracle, k_oracle, pi_oracle, rel_err};
use proptest::prelude::*;
use sgn_whitham::elliptic::{
    ellip_derivatives, ellip_derivatives_with_tol, ellip_e, ellip_k, ellip_pi, CompleteIntegrals,
    EllipticModulus,
};
use sgn_whitham::Error;

// 30-digit reference values at k = 1/√2, n = 1/4.
const K_REF: f64 = 1.854_074_677_301_371_918_43;
const E_REF: f64 = 1.350_643_881_047_675_502_52;
const PI_REF: f64 = 2.167_619_360_766_555_959_91;

#[test]
fn reference_values() {
    assert!(rel_err(ellip_k(FRAC_1_SQRT_2).unwrap(), K_REF) < 1e-14);
    assert!(rel_err(ellip_e(FRAC_1_SQRT_2).unwrap(), E_REF) < 1e-14);
    assert!(rel_err(ellip_pi(0.25, FRAC_1_SQRT_2).unwrap(), PI_REF) < 1e-13);
}

#[test]
fn oracle_agrees_with_reference_values() {
    assert!(rel_err(k_oracle(FRAC_1_SQRT_2), K_REF) < 1e-14);
    assert!(rel_err(e_oracle(FRAC_1_SQRT_2), E_REF) < 1e-14);
    assert!(rel_err(pi_oracle(0.25, FRAC_1_SQRT_2), PI_REF) < 1e-14);
}

#[test]
fn first_and_second_kind_match_quadrature() {
    for j in 0..=40 {
        let k = 0.98 * j as f64 / 40.0;
        assert!(
            rel_err(ellip_k(k).unwrap(), k_oracle(k)) < 1e-13,
            "K at {k}"
        );
        assert!(
            rel_err(ellip_e(k).unwrap(), e_oracle(k)) < 1e-13,
            "E at {k}"
        );
    }
}

#[test]
fn third_kind_matches_quadrature() {
    for i in 0..=12 {
        for j in 0..=12 {
            let n = 0.95 * i as f64 / 12.0;
            let k = 0.95 * j as f64 / 12.0;
            let v = ellip_pi(n, k).unwrap();
            assert!(rel_err(v, pi_oracle(n, k)) < 1e-12, "Pi({n}, {k})");
        }
    }
}

#[test]
fn legendre_relation() {
    for j in 1..200 {
        let k = j as f64 / 200.0;
        let kp = (1.0 - k * k).sqrt();
        let (kk, ee) = (ellip_k(k).unwrap(), ellip_e(k).unwrap());
        let (kkp, eep) = (ellip_k(kp).unwrap(), ellip_e(kp).unwrap());
        let lhs = ee * kkp + eep * kk - kk * kkp;
        assert!(
            (lhs - FRAC_PI_2).abs() < 1e-12 * FRAC_PI_2,
            "k = {k}: {lhs}"
        );
    }
}

#[test]
fn trivial_values_and_domain() {
    assert!((ellip_k(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
    assert!((ellip_e(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
    assert_eq!(ellip_e(1.0).unwrap(), 1.0);
    assert!((ellip_pi(0.0, 0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
    assert!(matches!(ellip_k(1.0), Err(Error::Domain(_))));
    assert!(matches!(ellip_k(-0.1), Err(Error::Domain(_))));
    assert!(matches!(ellip_e(1.01), Err(Error::Domain(_))));
    assert!(matches!(ellip_pi(1.0, 0.5), Err(Error::Domain(_))));
    assert!(matches!(ellip_pi(0.5, 1.0), Err(Error::Domain(_))));
    assert!(ellip_k(f64::NAN).is_err());
}

#[test]
fn pi_with_zero_characteristic_is_k() {
    for j in 0..50 {
        let k = 0.99 * j as f64 / 50.0;
        assert_eq!(ellip_pi(0.0, k).unwrap(), ellip_k(k).unwrap());
    }
}

#[test]
fn derivatives_match_finite_differences() {
    let step = 1e-6;
    for i in 1..10 {
        for j in 1..10 {
            let n = 0.9 * i as f64 / 10.0;
            let k = 0.9 * j as f64 / 10.0;
            if (n - k * k).abs() < 0.02 {
                continue;
            }
            let d = ellip_derivatives(n, k).unwrap();
            let fd_k = central_diff(|x| ellip_k(x).unwrap(), k, step);
            let fd_e = central_diff(|x| ellip_e(x).unwrap(), k, step);
            let fd_pn = central_diff(|x| ellip_pi(x, k).unwrap(), n, step);
            let fd_pk = central_diff(|x| ellip_pi(n, x).unwrap(), k, step);
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-7 * b.abs().max(1.0);
            assert!(
                close(d.dk_dk, fd_k),
                "dK/dk at k={k}: {} vs {fd_k}",
                d.dk_dk
            );
            assert!(
                close(d.de_dk, fd_e),
                "dE/dk at k={k}: {} vs {fd_e}",
                d.de_dk
            );
            assert!(
                close(d.dpi_dn, fd_pn),
                "dPi/dn at ({n},{k}): {} vs {fd_pn}",
                d.dpi_dn
            );
            assert!(
                close(d.dpi_dk, fd_pk),
                "dPi/dk at ({n},{k}): {} vs {fd_pk}",
                d.dpi_dk
            );
        }
    }
}

#[test]
fn derivative_reference_value() {
    let d = ellip_derivatives(0.25, FRAC_1_SQRT_2).unwrap();
    assert!((d.de_dk + 0.711_958_659_778_263_8).abs() < 1e-14);
    assert!((d.de_dk - (E_REF - K_REF) / FRAC_1_SQRT_2).abs() < 1e-14);
}

#[test]
fn derivatives_refuse_singular_and_boundary_configurations() {
    let k = 0.6;
    assert!(matches!(
        ellip_derivatives(k * k, k),
        Err(Error::SingularConfiguration(_))
    ));
    assert!(matches!(
        ellip_derivatives(k * k * (1.0 + 1e-13), k),
        Err(Error::SingularConfiguration(_))
    ));
    assert!(ellip_derivatives_with_tol(k * k * (1.0 + 1e-6), k, 1e-12).is_ok());
    assert!(matches!(
        ellip_derivatives_with_tol(k * k * (1.0 + 1e-6), k, 1e-5),
        Err(Error::SingularConfiguration(_))
    ));
    assert!(matches!(ellip_derivatives(0.3, 0.0), Err(Error::Domain(_))));
    assert!(matches!(ellip_derivatives(0.3, 1.0), Err(Error::Domain(_))));
}

#[test]
fn integrals_from_roots_use_the_modulus() {
    let m = EllipticModulus::from_roots(1.0, 1.5, 2.0);
    assert!((m.k - FRAC_1_SQRT_2).abs() < 1e-15);
    assert_eq!(m.n, 0.25);
    let c = CompleteIntegrals::at(&m);
    assert!(rel_err(c.k, K_REF) < 1e-14);
    assert!(rel_err(c.pi, PI_REF) < 1e-13);
}

proptest! {
    #[test]
    fn k_increases_and_e_decreases(a in 0.0f64..0.999, b in 0.0f64..0.999) {
        prop_assume!((a - b).abs() > 1e-9);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(ellip_k(lo).unwrap() < ellip_k(hi).unwrap());
        prop_assert!(ellip_e(lo).unwrap() > ellip_e(hi).unwrap());
    }

    #[test]
    fn pi_increases_with_characteristic(k in 0.0f64..0.95, a in 0.0f64..0.95, b in 0.0f64..0.95) {
        prop_assume!((a - b).abs() > 1e-9);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(ellip_pi(lo, k).unwrap() < ellip_pi(hi, k).unwrap());
    }

    #[test]
    fn bounds_e_le_pi_over_2_le_k(k in 0.0f64..0.999) {
        let (kk, ee) = (ellip_k(k).unwrap(), ellip_e(k).unwrap());
        prop_assert!(ee <= FRAC_PI_2 + 1e-15 && kk >= FRAC_PI_2 - 1e-15);
    }
}
