//! Cross-module properties through the public API.

use legendre_qix::eval::{q_ferrers, q_hobson, q_scalar};
use legendre_qix::exactpoly::{
    LogRationalForm, a0_closed, ferrers_numerator, legendre_p, log_free_derivative, substitute_imaginary,
};
use legendre_qix::quadrature::{PiMultiple, gram_matrix, inner_product, normalization_exact};
use legendre_qix::{Complex64, Error, FerrersEvaluator64, LegendreIndex, Parity};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn idx(k: u32, l: u32) -> LegendreIndex {
    LegendreIndex::new(k, l).unwrap()
}

/// `Q^k_ℓ(ix)` straight from `(−1)^k (1−z²)^{k/2} R(z) / (1−z²)^k` at `z = ix`,
/// bypassing the integer numerator and its even/odd split.
fn from_derivative(k: u32, l: u32, x: f64) -> Complex64 {
    let r = substitute_imaginary(&log_free_derivative(l, k).unwrap());
    let value = r.coeffs().iter().rev().fold(Complex64::zero(), |acc, c| {
        acc * x + Complex64::new(c.re.to_f64().unwrap(), c.im.to_f64().unwrap())
    });
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    value * sign / (1.0 + x * x).powf(f64::from(k) / 2.0)
}

#[test]
fn closed_form_matches_raw_derivative() {
    for index in LegendreIndex::all_up_to(10) {
        for x in [-3.5, -0.25, 0.0, 0.6, 2.0, 9.0] {
            let a = q_ferrers(index, x).unwrap();
            let b = from_derivative(index.k(), index.l(), x);
            assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0), "{index:?} x={x}: {a} vs {b}");
        }
    }
}

#[test]
fn orders_one_and_two_are_derivatives_of_the_scalar_function() {
    // Q^1_ℓ = −(1−z²)^{1/2} Q_ℓ' and Q^2_ℓ = (1−z²) Q_ℓ'', so on z = ix
    // d/dx Q_ℓ(ix) = −i Q^1_ℓ(ix) / √(1+x²) and d²/dx² Q_ℓ(ix) = −Q^2_ℓ(ix) / (1+x²).
    let h = 1e-4;
    let i = Complex64::new(0.0, 1.0);
    for x in [-1.7, 0.3, 2.4] {
        let w = 1.0 + x * x;
        let d1 = (q_scalar::<f64>(0, x + h) - q_scalar(0, x - h)) / (2.0 * h);
        let want1 = -i * q_ferrers(idx(1, 0), x).unwrap() / w.sqrt();
        assert!((d1 - want1).norm() < 1e-7, "x={x}: {d1} vs {want1}");
        for l in 0..2 {
            let d2 = (q_scalar::<f64>(l, x + h) - q_scalar(l, x) * 2.0 + q_scalar(l, x - h)) / (h * h);
            let want2 = -q_ferrers(idx(2, l), x).unwrap() / w;
            assert!((d2 - want2).norm() < 1e-5, "l={l} x={x}: {d2} vs {want2}");
        }
    }
}

#[test]
fn f32_evaluator_agrees_with_f64() {
    for index in LegendreIndex::all_up_to(6) {
        for x in [-4.0_f32, -0.5, 0.0, 1.5, 30.0] {
            let single = q_ferrers::<f32>(index, x).unwrap();
            let double = q_ferrers::<f64>(index, f64::from(x)).unwrap();
            let err = ((f64::from(single.re) - double.re).powi(2) + (f64::from(single.im) - double.im).powi(2)).sqrt();
            assert!(err <= 1e-5 * double.norm().max(1e-30), "{index:?} x={x}");
        }
    }
}

#[test]
fn f32_quadrature_reaches_single_precision() {
    let r = inner_product::<f32>(3, 1, 1, 1e-5).unwrap();
    assert!((r.value.re - PiMultiple((-8).into()).to_real::<f32>()).abs() < 1e-4 * 8.0 * std::f32::consts::PI);
}

#[test]
fn gram_expected_values_follow_the_product_formula() {
    let g = gram_matrix::<f64>(5, 1e-10).unwrap();
    for l in 0..5 {
        for lp in 0..5 {
            let want = if l == lp { normalization_exact(5, l as u32).unwrap() } else { PiMultiple(0.into()) };
            assert_eq!(g.expected[l][lp], want);
        }
    }
    assert!(g.max_off_diagonal_magnitude() <= 1e-8 * g.max_diagonal_magnitude());
    assert!(g.max_abs_deviation <= 1e-8 * g.max_diagonal_magnitude());
}

#[test]
fn base_constant_is_a0() {
    for l in 0..20 {
        let n = ferrers_numerator(idx(l + 1, l)).unwrap();
        assert_eq!(n.poly().coeffs(), [a0_closed(l)]);
        // Q^{ℓ+1}_ℓ(ix) = A₀(ℓ) / (1+x²)^{(ℓ+1)/2}
        let x = 0.75_f64;
        let want = a0_closed(l).to_f64().unwrap() / (1.0 + x * x).powf(f64::from(l + 1) / 2.0);
        let got = q_ferrers(idx(l + 1, l), x).unwrap();
        assert!((got.re - want).abs() <= 1e-13 * want.abs());
    }
}

#[test]
fn first_log_free_order_is_degree_plus_one() {
    for l in 0..8u32 {
        let p = legendre_p(l);
        assert_eq!(p.degree(), Some(l as usize));
        let via_log = LogRationalForm::q_scalar(l).nth_derivative(l + 1);
        assert_eq!(via_log.rational, log_free_derivative(l, l + 1).unwrap());
    }
}

#[test]
fn index_guards() {
    assert!(matches!(LegendreIndex::new(3, 3), Err(Error::InvalidIndex { .. })));
    assert!(matches!(LegendreIndex::new(65, 0), Err(Error::IndexTooLarge { .. })));
    assert!(matches!(normalization_exact(2, 5), Err(Error::InvalidIndex { .. })));
    assert!(gram_matrix::<f64>(0, 1e-10).is_err());
    assert!(inner_product::<f64>(2, 0, 2, 1e-10).is_err());
}

#[test]
fn exact_rationals_stay_exact() {
    let r = log_free_derivative(3, 5).unwrap();
    assert!(r.coeffs().iter().all(BigRational::is_integer));
}

proptest! {
    #[test]
    fn parity_rule(k in 1u32..=12, lseed in 0u32..12, x in -20.0f64..20.0) {
        let l = lseed % k;
        let ev = FerrersEvaluator64::new(idx(k, l)).unwrap();
        let (a, b) = (ev.value(x), ev.value(-x));
        let sign = if ev.sigma() == Parity::Odd { -1.0 } else { 1.0 };
        prop_assert!((a - b * sign).norm() <= 1e-13 * a.norm().max(1e-300));
        // purely real for σ = 0, purely imaginary for σ = 1
        match ev.sigma() {
            Parity::Even => prop_assert_eq!(a.im, 0.0),
            Parity::Odd => prop_assert_eq!(a.re, 0.0),
        }
    }

    #[test]
    fn hobson_has_unit_modulus_phase(k in 1u32..=10, lseed in 0u32..10, x in 0.1f64..20.0) {
        let l = lseed % k;
        for x in [x, -x] {
            let f = q_ferrers(idx(k, l), x).unwrap();
            let h = q_hobson(idx(k, l), x).unwrap();
            prop_assert!((f.norm() - h.norm()).abs() <= 1e-13 * f.norm().max(1e-300));
        }
    }

    #[test]
    fn inner_products_are_symmetric(k in 2u32..=5, a in 0u32..5, b in 0u32..5) {
        let (l, lp) = (a % k, b % k);
        let ab = inner_product::<f64>(k, l, lp, 1e-10).unwrap().value;
        let ba = inner_product::<f64>(k, lp, l, 1e-10).unwrap().value;
        prop_assert_eq!(ab, ba);
    }
}
