//! Gamma function and Pochhammer symbol.
//!
//! Integer and half-integer arguments go through exact factorial and
//! double-factorial products so that values at those points are bitwise
//! reproducible. Everything else uses Lanczos (g = 7, n = 9) with reflection.

use crate::scalar::{Real, as_integer, is_nonpositive_integer, sin_pi};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Rising factorial `x (x+1) ... (x+n-1)` by iterated multiplication, so it
/// stays finite (and exactly zero where appropriate) at non-positive integers.
pub fn pochhammer<T: Real>(x: T, n: usize) -> T {
    let mut acc = T::one();
    let mut t = x;
    for _ in 0..n {
        acc = acc * t;
        t = t + T::one();
    }
    acc
}

/// `(n-1)!` for positive integer `n`.
fn gamma_positive_integer<T: Real>(n: i64) -> T {
    let mut acc = T::one();
    for i in 2..n {
        acc = acc * T::from_i64_exact(i);
    }
    acc
}

/// `Γ(n/2) = (n-2)!! √π / 2^{(n-1)/2}` for odd positive `n`.
fn gamma_positive_half_integer<T: Real>(n: i64) -> T {
    let mut dfact = T::one();
    let mut i = n - 2;
    while i > 1 {
        dfact = dfact * T::from_i64_exact(i);
        i -= 2;
    }
    let halvings = (n - 1) / 2;
    let scale = T::lit(2.0).powi(-(halvings as i32));
    dfact * scale * T::PI().sqrt()
}

fn gamma_lanczos<T: Real>(x: T) -> T {
    let x = x - T::one();
    let mut a = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + T::lit(c) / (x + T::from_usize_exact(i));
    }
    let t = x + T::lit(LANCZOS_G + 0.5);
    let half_pow = t.powf((x + T::lit(0.5)) / T::lit(2.0));
    (T::lit(2.0) * T::PI()).sqrt() * a * half_pow * (half_pow * (-t).exp())
}

/// Gamma function. Returns NaN at the poles `0, -1, -2, ...`.
pub fn gamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) || x.is_nan() {
        return T::nan();
    }
    if let Some(n) = as_integer(x) {
        return gamma_positive_integer(n);
    }
    if let Some(n) = as_integer(x * T::lit(2.0)) {
        if n > 0 {
            return gamma_positive_half_integer(n);
        }
    }
    if x < T::lit(0.5) {
        // Γ(x) Γ(1-x) = π / sin(πx)
        T::PI() / (sin_pi(x) * gamma(T::one() - x))
    } else {
        gamma_lanczos(x)
    }
}

/// `1/Γ(x)`, zero at the poles of Γ.
pub fn rgamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        T::zero()
    } else {
        T::one() / gamma(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(5.0_f64, 0), 1.0);
        assert_eq!(pochhammer(3.0_f64, 2), 12.0);
        assert_eq!(pochhammer(0.5_f64, 2), 0.75);
        assert_eq!(pochhammer(-2.0_f64, 3), 0.0);
        assert_eq!(pochhammer(-2.0_f64, 2), 2.0);
    }

    #[test]
    fn gamma_integers_are_factorials() {
        assert_eq!(gamma(1.0_f64), 1.0);
        assert_eq!(gamma(5.0_f64), 24.0);
        assert_eq!(gamma(11.0_f64), 3_628_800.0);
        assert!(gamma(0.0_f64).is_nan());
        assert!(gamma(-3.0_f64).is_nan());
        assert_eq!(rgamma(-3.0_f64), 0.0);
    }

    #[test]
    fn gamma_half_integers() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_eq!(gamma(0.5_f64), sqrt_pi);
        assert_eq!(gamma(1.5_f64), 0.5 * sqrt_pi);
        assert!((gamma(4.5_f64) - 105.0 / 16.0 * sqrt_pi).abs() < 1e-15 * gamma(4.5_f64));
        // Γ(1/2 − ℓ) = (−1)^ℓ 2^{2ℓ} ℓ! √π / (2ℓ)!
        assert!((gamma(-0.5_f64) + 2.0 * sqrt_pi).abs() < 1e-15);
        assert!((gamma(-1.5_f64) - 4.0 / 3.0 * sqrt_pi).abs() < 1e-15);
        assert!((gamma(-2.5_f64) + 8.0 / 15.0 * sqrt_pi).abs() < 1e-15);
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn gamma_general_arguments() {
        // 30-digit reference values
        let cases = [
            (0.1_f64, 9.513_507_698_668_731),
            (2.3, 1.166_711_905_198_160_2),
            (7.7, 2_769.830_362_327_314_6),
            (-0.3, -4.326_851_108_825_193),
            (-3.7, 0.251_643_995_902_422_7),
            (30.2, 1.741_009_444_591_131_2e31),
        ];
        for (x, want) in cases {
            let got = gamma(x);
            assert!(((got - want) / want).abs() < 5e-14, "Γ({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn gamma_recurrence() {
        for i in 0..40 {
            let x = -6.9 + 0.37 * i as f64;
            if (x - x.round()).abs() < 1e-9 {
                continue;
            }
            let lhs = gamma(x + 1.0);
            let rhs = x * gamma(x);
            assert!(((lhs - rhs) / rhs).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn gamma_f32() {
        assert_eq!(gamma(4.0_f32), 6.0);
        assert!((gamma(2.3_f32) - 1.166_711_9).abs() < 1e-5);
    }
}
