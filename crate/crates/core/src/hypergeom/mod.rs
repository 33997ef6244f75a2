//! Hypergeometric machinery: the regularized Gauss series and its `|z| > 1`
//! connection formula, the large-argument expansion of `Q^k_ℓ`, and the
//! terminating `₃F₂` / Saalschütz identities behind `A₀(ℓ)`.

mod gamma;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly;
use crate::scalar::{Real, as_integer, cos_pi, is_nonpositive_integer, sin_pi};

pub use gamma::{gamma, pochhammer, rgamma};

/// Default cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 10_000;

/// Partial sum of a (possibly asymptotic) series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOutcome<T> {
    pub value: Complex<T>,
    pub terms_used: usize,
    pub converged: bool,
    /// Magnitude of the first omitted term, in units of `value`.
    pub truncation_estimate: T,
    /// A negligible real or imaginary component was zeroed.
    pub purity_snapped: bool,
}

/// Stopping rule for convergent series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig<T> {
    pub tol: T,
    pub max_terms: usize,
}

impl<T: Real> Default for SeriesConfig<T> {
    fn default() -> Self {
        Self { tol: T::epsilon(), max_terms: MAX_SERIES_TERMS }
    }
}

fn abs_floor<T: Real>() -> T {
    T::lit(1e-300).max(T::min_positive_value())
}

fn purity_threshold<T: Real>() -> T {
    T::lit(1e-13).max(T::lit(8.0) * T::epsilon())
}

/// Zeroes a component that is negligible against the magnitude.
fn snap<T: Real>(z: Complex<T>) -> (Complex<T>, bool) {
    let mag = z.norm();
    let thr = purity_threshold::<T>() * mag;
    if z.im != T::zero() && z.im.abs() < thr {
        (Complex::new(z.re, T::zero()), true)
    } else if z.re != T::zero() && z.re.abs() < thr {
        (Complex::new(T::zero(), z.im), true)
    } else {
        (z, false)
    }
}

fn finish<T: Real>(value: Complex<T>, terms_used: usize, truncation: T, tol: T) -> SeriesOutcome<T> {
    let (value, purity_snapped) = snap(value);
    let converged = truncation <= tol * value.norm() || truncation <= abs_floor::<T>();
    SeriesOutcome { value, terms_used, converged, truncation_estimate: truncation, purity_snapped }
}

/// Number of the last non-vanishing term if `a` or `b` is a non-positive integer.
fn termination_index<T: Real>(params: &[T]) -> Option<usize> {
    params
        .iter()
        .filter(|&&p| is_nonpositive_integer(p))
        .map(|&p| (-as_integer(p).unwrap_or(0)) as usize)
        .min()
}

/// Regularized Gauss function `₂F̃₁(a, b; c; z) = Σ (a)_s (b)_s z^s / (Γ(c+s) s!)`.
///
/// Requires `|z| < 1` unless the series terminates.
pub fn reg_2f1_series<T: Real>(a: T, b: T, c: T, z: Complex<T>) -> Result<SeriesOutcome<T>> {
    reg_2f1_series_with(a, b, c, z, SeriesConfig::default())
}

pub fn reg_2f1_series_with<T: Real>(
    a: T,
    b: T,
    c: T,
    z: Complex<T>,
    config: SeriesConfig<T>,
) -> Result<SeriesOutcome<T>> {
    let last = termination_index(&[a, b]);
    if last.is_none() && z.norm() >= T::one() {
        return Err(Error::Domain(format!(
            "non-terminating 2F1 series needs |z| < 1 (got |z| = {}); use the connection formula",
            z.norm()
        )));
    }
    // terms vanish identically while c + s sits on a pole of Γ
    let first_live = match as_integer(c) {
        Some(m) if m <= 0 => (1 - m) as usize,
        _ => 0,
    };
    if last.is_some_and(|last| last < first_live) {
        return Ok(finish(Complex::zero(), 0, T::zero(), config.tol));
    }

    let mut s = first_live;
    let head = pochhammer(a, s) * pochhammer(b, s) * rgamma(c + T::from_usize_exact(s))
        / gamma(T::from_usize_exact(s + 1));
    let mut term = z.powi(s as i32) * head;
    let mut sum = term;
    let mut used = 1;
    loop {
        let sf = T::from_usize_exact(s);
        let next = term * z * ((a + sf) * (b + sf) / ((sf + T::one()) * (c + sf)));
        s += 1;
        if let Some(last) = last {
            if s > last {
                return Ok(finish(sum, used, T::zero(), config.tol));
            }
        } else if next.norm() <= config.tol * sum.norm() + abs_floor::<T>() {
            return Ok(finish(sum, used, next.norm(), config.tol));
        }
        if used >= config.max_terms {
            return Ok(finish(sum, used, next.norm(), config.tol));
        }
        sum = sum + next;
        term = next;
        used += 1;
    }
}

/// `₂F̃₁(a, b; c; z)` for `|z| > 1` from the connection formula
///
/// `sin((b−a)π)/π · ₂F̃₁(a,b;c;z) = (−z)^{−a} / (Γ(b)Γ(c−a)) ₂F̃₁(a, a−c+1; a−b+1; 1/z)
///                               − (−z)^{−b} / (Γ(a)Γ(c−b)) ₂F̃₁(b, b−c+1; b−a+1; 1/z)`
///
/// with principal-branch powers. Integer `b − a` is rejected.
pub fn reg_2f1_connection<T: Real>(a: T, b: T, c: T, z: Complex<T>) -> Result<SeriesOutcome<T>> {
    if z.norm() <= T::one() {
        return Err(Error::Domain(format!("connection formula needs |z| > 1 (got |z| = {})", z.norm())));
    }
    if as_integer(b - a).is_some() {
        return Err(Error::Degenerate(format!("b - a = {} is an integer", b - a)));
    }
    let w = z.inv();
    let minus_z = -z;
    let config = SeriesConfig::default();

    let branch = |weight: T, exponent: T, p: T, q: T, r: T| -> Result<(Complex<T>, usize, T)> {
        if weight == T::zero() {
            return Ok((Complex::zero(), 0, T::zero()));
        }
        let series = reg_2f1_series_with(p, q, r, w, config)?;
        let factor = minus_z.powf(-exponent) * weight;
        Ok((factor * series.value, series.terms_used, factor.norm() * series.truncation_estimate))
    };

    let (t1, n1, e1) = branch(rgamma(b) * rgamma(c - a), a, a, a - c + T::one(), a - b + T::one())?;
    let (t2, n2, e2) = branch(rgamma(a) * rgamma(c - b), b, b, b - c + T::one(), b - a + T::one())?;
    let scale = T::PI() / sin_pi(b - a);
    let value = (t1 - t2) * scale;
    Ok(finish(value, n1 + n2, (e1 + e2) * scale.abs(), T::lit(1e-12).max(config.tol)))
}

/// Leading large-`|x|` behaviour of `₂F₁(1/2, ℓ+1; 3/2; −x²)`,
/// `(−1)^ℓ π / Γ(1/2 − ℓ) · √π / (2 Γ(ℓ+1) |x|)`. Requires `|x| ≥ 10`.
pub fn asymptotic_2f1_half<T: Real>(l: u32, x: T) -> Result<T> {
    if !(x.abs() >= T::lit(10.0)) {
        return Err(Error::Domain(format!("asymptotic regime needs |x| >= 10 (got {x})")));
    }
    let lf = T::from_usize_exact(l as usize);
    let sign = if l.is_multiple_of(2) { T::one() } else { -T::one() };
    let pi = T::PI();
    Ok(sign * pi / gamma(T::lit(0.5) - lf) * pi.sqrt() / (T::lit(2.0) * gamma(lf + T::one()) * x.abs()))
}

/// `(ix)^p` on the principal branch, with the phase `e^{±iπp/2}` taken from
/// exact trig so integer powers land exactly on an axis.
fn imag_power<T: Real>(x: T, p: T) -> Complex<T> {
    let half_turns = if x > T::zero() { p / T::lit(2.0) } else { -p / T::lit(2.0) };
    let mag = x.abs().powf(p);
    Complex::new(cos_pi(half_turns), sin_pi(half_turns)) * mag
}

/// One term family `Σ_s coef_s z^{p − 2s}` of the large-z expansion.
struct TermFamily<T> {
    /// Prefactor multiplying the whole family.
    weight: Complex<T>,
    /// Exponent of z in the s = 0 term (after absorbing the outer power).
    power: T,
    alpha: T,
    beta: T,
    /// Γ-argument offset: term s carries `1/Γ(s + gamma_shift)`.
    gamma_shift: T,
}

struct FamilySum<T> {
    value: Complex<T>,
    derivative: Complex<T>,
    used: usize,
    omitted: T,
}

impl<T: Real> TermFamily<T> {
    /// Sums `(1−z²)^{k/2}`-stripped terms and their x-derivative, truncating
    /// at `max_terms`, at the smallest term, or once terms are negligible.
    fn sum(&self, x: T, k: T, max_terms: usize) -> FamilySum<T> {
        let z = Complex::new(T::zero(), x);
        let one_minus_z2 = T::one() + x * x;
        let mut value = Complex::zero();
        let mut derivative = Complex::zero();
        let mut coef = rgamma(self.gamma_shift);
        let mut prev_mag = T::infinity();
        let mut used = 0;
        let mut omitted = T::zero();
        for s in 0..=max_terms {
            let sf = T::from_usize_exact(s);
            if s > 0 {
                // Γ(s + shift) has no poles here: half-integer ℓ is rejected up front
                let prev = sf - T::one();
                coef = coef * (self.alpha + prev) * (self.beta + prev) / (sf * (self.gamma_shift + prev));
            }
            let p = self.power - T::lit(2.0) * sf;
            let term = self.weight * imag_power(x, p) * coef;
            let mag = term.norm();
            if s == max_terms || (s > 0 && mag > prev_mag) {
                omitted = mag;
                break;
            }
            value = value + term;
            // d/dx = i d/dz ; d/dz [(1−z²)^{k/2} z^p] / (1−z²)^{k/2} = z^p (−k z/(1−z²) + p/z)
            let log_deriv = Complex::new(T::zero(), T::one()) * (z * (-k / one_minus_z2) + z.inv() * p);
            derivative = derivative + term * log_deriv;
            used += 1;
            if mag <= T::epsilon() * value.norm() * T::lit(0.25) && s > 0 {
                omitted = mag;
                break;
            }
            prev_mag = mag;
        }
        FamilySum { value, derivative, used, omitted }
    }
}

/// `Q^k_ℓ(ix)` and its x-derivative from the large-argument expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticValue<T> {
    pub outcome: SeriesOutcome<T>,
    pub derivative: Complex<T>,
}

/// Large-`|x|` expansion of the Ferrers function `Q^k_ℓ(z)` at `z = ix`:
///
/// `Q^k_ℓ(z) = 2^{−(ℓ+2)} e^{ikπ} √π (1−z²)^{k/2} / (cos(ℓπ) z^{k+ℓ+1})
///   × [ i 2^{2ℓ+1} Γ(k−ℓ) sin((k−ℓ)π) z^{2ℓ+1} Σ_s ((k−ℓ)/2)_s ((k−ℓ+1)/2)_s / (Γ(s−ℓ+½) s! z^{2s})
///     + (cos((k+ℓ)π) + e^{i(ℓ−k)π}) Γ(k+ℓ+1) Σ_s ((k+ℓ+1)/2)_s ((k+ℓ+2)/2)_s / (Γ(s+ℓ+3/2) s! z^{2s}) ]`.
///
/// Both sums converge for `|z| > 1`. The first family is the Euler transform
/// of the `z^{ν+μ}(z²−1)^{−μ/2}` expansion of `P^μ_ν`, whence the
/// `(k−ℓ+1)/2` parameter. For integer `ℓ` it is dropped outright since
/// `sin((k−ℓ)π)` vanishes identically.
///
/// The expression holds on the upper half of the imaginary axis; for `x < 0`
/// the value is taken from `Q(−i|x|) = conj Q(i|x|)`, valid for real `k, ℓ`.
pub fn q_asymptotic<T: Real>(k: u32, l: T, x: T, max_terms: usize) -> Result<SeriesOutcome<T>> {
    q_asymptotic_with_derivative(k, l, x, max_terms).map(|v| v.outcome)
}

pub fn q_asymptotic_with_derivative<T: Real>(k: u32, l: T, x: T, max_terms: usize) -> Result<AsymptoticValue<T>> {
    if k == 0 {
        return Err(Error::Domain("order k must be a positive integer".into()));
    }
    if !(x.abs() > T::one()) {
        return Err(Error::Domain(format!("asymptotic expansion needs |x| > 1 (got {x})")));
    }
    if !(l > -T::one()) {
        return Err(Error::Domain(format!("degree must exceed -1 (got {l})")));
    }
    let kf = T::from_usize_exact(k as usize);
    let integer_l = as_integer(l);
    if let Some(li) = integer_l {
        if li >= k as i64 {
            return Err(Error::Domain(format!("integer degree needs k > l (k={k}, l={li})")));
        }
    }
    let cos_l = cos_pi(l);
    if cos_l == T::zero() {
        return Err(Error::Pole(format!("cos(l pi) vanishes at half-integer degree l = {l}")));
    }

    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let i = Complex::new(T::zero(), T::one());
    let parity = if k.is_multiple_of(2) { T::one() } else { -T::one() };
    let outer = two.powf(-(l + two)) * parity * T::PI().sqrt() / cos_l;
    let outer_power = -(kf + l + T::one());

    let mut families = Vec::with_capacity(2);
    if integer_l.is_none() {
        let w = i * (two.powf(two * l + T::one()) * gamma(kf - l) * sin_pi(kf - l) * outer);
        families.push(TermFamily {
            weight: w,
            power: outer_power + two * l + T::one(),
            alpha: (kf - l) / two,
            beta: (kf - l + T::one()) / two,
            gamma_shift: half - l,
        });
    }
    let phase = Complex::new(cos_pi(kf + l) + cos_pi(l - kf), sin_pi(l - kf));
    families.push(TermFamily {
        weight: phase * (gamma(kf + l + T::one()) * outer),
        power: outer_power,
        alpha: (kf + l + T::one()) / two,
        beta: (kf + l + two) / two,
        gamma_shift: l + T::lit(1.5),
    });

    if x < T::zero() {
        let mirrored = q_asymptotic_with_derivative(k, l, -x, max_terms)?;
        let mut outcome = mirrored.outcome;
        outcome.value = outcome.value.conj();
        return Ok(AsymptoticValue { outcome, derivative: -mirrored.derivative.conj() });
    }

    let envelope = (T::one() + x * x).powf(kf / two);
    let mut value = Complex::zero();
    let mut derivative = Complex::zero();
    let mut used = 0;
    let mut omitted = T::zero();
    for fam in &families {
        let part = fam.sum(x, kf, max_terms);
        value = value + part.value;
        derivative = derivative + part.derivative;
        used += part.used;
        omitted = omitted + part.omitted;
    }
    let value = value * envelope;
    let derivative = derivative * envelope;
    let outcome = finish(value, used, omitted * envelope, T::lit(4.0) * T::epsilon());
    Ok(AsymptoticValue { outcome, derivative })
}

/// Terminating `₃F₂(a, b, c; d, e; 1) = Σ (a)_n (b)_n (c)_n / ((d)_n (e)_n n!)`.
pub fn f3f2_unit<T: Real>(a: T, b: T, c: T, d: T, e: T) -> Result<T> {
    let last = termination_index(&[a, b, c])
        .ok_or_else(|| Error::Domain("3F2 at unit argument is only summed when it terminates".into()))?;
    let mut term = T::one();
    let mut sum = T::one();
    for n in 0..last {
        let nf = T::from_usize_exact(n);
        if (d + nf) == T::zero() || (e + nf) == T::zero() {
            return Err(Error::Pole(format!("lower parameter hits zero at n = {n}")));
        }
        term = term * (a + nf) * (b + nf) * (c + nf) / ((d + nf) * (e + nf) * (nf + T::one()));
        sum = sum + term;
    }
    Ok(sum)
}

/// Saalschütz' closed form
/// `₃F₂(a, b, −n; c, a+b−c−n+1; 1) = (c−a)_n (c−b)_n / ((c)_n (c−a−b)_n)`.
pub fn saalschutz_3f2<T: Real>(a: T, b: T, n: usize, c: T) -> Result<T> {
    let den = pochhammer(c, n) * pochhammer(c - a - b, n);
    if den == T::zero() {
        return Err(Error::Pole(format!("zero denominator Pochhammer (c = {c}, c-a-b = {}, n = {n})", c - a - b)));
    }
    Ok(pochhammer(c - a, n) * pochhammer(c - b, n) / den)
}

/// The balanced `₃F₂` parameters `(a, b, c; d, e)` whose value times
/// `C(2ℓ, ℓ)` is the inner sum of `A₀(ℓ)`:
/// `(1/2, (1−ℓ)/2, −ℓ/2; 3/2, 1/2 − ℓ)`.
pub fn a0_family_parameters<T: Real>(l: u32) -> [T; 5] {
    let lf = T::from_usize_exact(l as usize);
    let half = T::lit(0.5);
    [half, (T::one() - lf) * half, -lf * half, T::lit(1.5), half - lf]
}

/// Evaluates the `A₀(ℓ)` family through [`saalschutz_3f2`]. Whichever of
/// `(1−ℓ)/2`, `−ℓ/2` is a non-positive integer plays the role of `−n`.
pub fn a0_family_saalschutz<T: Real>(l: u32) -> Result<T> {
    let [a, b, c, d, _] = a0_family_parameters::<T>(l);
    if l.is_multiple_of(2) {
        saalschutz_3f2(a, b, (l / 2) as usize, d)
    } else {
        saalschutz_3f2(a, c, ((l - 1) / 2) as usize, d)
    }
}

/// `S(ℓ) = 2^{2ℓ} / (ℓ+1)`, exactly.
pub fn s_closed(l: u32) -> BigRational {
    BigRational::new(BigInt::one() << (2 * l as usize), BigInt::from(l + 1))
}

/// The finite sum `S(ℓ)` summed term by term in exact arithmetic.
pub fn s_sum(l: u32) -> BigRational {
    exactpoly::a0_inner_sum(l)
}

/// `C(2ℓ, ℓ)`, the factor relating `S(ℓ)` to the `₃F₂` value.
pub fn central_binomial(l: u32) -> BigInt {
    exactpoly::binomial(2 * l, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn series_trivial_and_terminating() {
        let r = reg_2f1_series(1.0, 1.0, 2.0, c(0.0)).unwrap();
        assert_eq!(r.value, c(1.0));
        assert!(r.converged);
        let r = reg_2f1_series(-1.0, 2.0, 1.0, c(0.5)).unwrap();
        assert_eq!(r.value, c(0.0));
        assert_eq!(r.terms_used, 2);
        // terminating series are fine outside the unit disc
        let r = reg_2f1_series(-2.0, 1.0, 3.0, c(-5.0)).unwrap();
        // 1/Γ(3) [1 + (−2)(1)(−5)/3 + (−2)(−1)(1)(2)(25)/(3·4·2)] = (1 + 10/3 + 25/6)/2
        assert!((r.value.re - (1.0 + 10.0 / 3.0 + 25.0 / 6.0) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn series_arctan_identity() {
        // ₂F₁(1/2, 1; 3/2; −x²) = arctan(x)/x
        let x = 0.5_f64;
        let r = reg_2f1_series(0.5, 1.0, 1.5, c(-x * x)).unwrap();
        let want = x.atan() / x / gamma(1.5);
        assert!(r.converged);
        assert!((r.value.re - want).abs() < 1e-15);
        assert!((r.value.re - 1.046_340_605_740_311).abs() < 1e-14);
    }

    #[test]
    fn series_nonpositive_integer_c() {
        // ₂F̃₁(a,b;−m;z) = (a)_{m+1}(b)_{m+1} z^{m+1} ₂F₁(a+m+1, b+m+1; m+2; z)/(m+1)!
        let (a, b, z) = (0.3_f64, 0.7, 0.2);
        let lhs = reg_2f1_series(a, b, -1.0, c(z)).unwrap().value.re;
        let inner = reg_2f1_series(a + 2.0, b + 2.0, 3.0, c(z)).unwrap().value.re * gamma(3.0);
        let rhs = pochhammer(a, 2) * pochhammer(b, 2) * z * z * inner / 2.0;
        assert!((lhs - rhs).abs() < 1e-14, "{lhs} vs {rhs}");
    }

    #[test]
    fn series_rejects_outside_disc() {
        assert!(matches!(reg_2f1_series(0.5, 1.0, 1.5, c(-4.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn connection_arctan() {
        let r = reg_2f1_connection(0.5, 1.0, 1.5, c(-4.0)).unwrap();
        let want = 2.0_f64.atan() / 2.0 / gamma(1.5);
        assert!((r.value.re - want).abs() < 1e-12);
        assert_eq!(r.value.im, 0.0);

        let r = reg_2f1_connection(0.5, 1.0, 1.5, c(-1e4)).unwrap();
        let lead = std::f64::consts::FRAC_PI_2 / 100.0 / gamma(1.5);
        assert!(((r.value.re - lead) / lead).abs() < 0.01);
        let exact = 100.0_f64.atan() / 100.0 / gamma(1.5);
        assert!((r.value.re - exact).abs() < 1e-12);
    }

    #[test]
    fn connection_near_unit_circle() {
        for &x in &[1.05_f64, 1.1, 1.3] {
            let r = reg_2f1_connection(0.5, 1.0, 1.5, c(-x * x)).unwrap();
            let want = x.atan() / x / gamma(1.5);
            assert!(((r.value.re - want) / want).abs() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn connection_errors() {
        assert!(matches!(reg_2f1_connection(0.5, 1.0, 1.5, c(-0.5)), Err(Error::Domain(_))));
        assert!(matches!(reg_2f1_connection(0.5, 2.5, 1.5, c(-4.0)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn connection_agrees_with_terminating_series() {
        for &(a, b, cc, z) in &[(-3.0_f64, 0.5, 1.7, -3.0), (-2.0, 1.25, 0.4, 5.0), (0.3, -4.0, 2.2, -7.5)] {
            let s = reg_2f1_series(a, b, cc, c(z)).unwrap().value;
            let k = reg_2f1_connection(a, b, cc, c(z)).unwrap().value;
            assert!((s - k).norm() <= 1e-10 * s.norm(), "{a} {b} {cc} {z}: {s} vs {k}");
        }
    }

    #[test]
    fn asymptotic_half_values() {
        let pi = std::f64::consts::PI;
        assert!((asymptotic_2f1_half(0, 100.0).unwrap() - pi / 200.0).abs() < 1e-15);
        assert_eq!(asymptotic_2f1_half(0, -100.0).unwrap(), asymptotic_2f1_half(0, 100.0).unwrap());
        let conn = reg_2f1_connection(0.5, 2.0, 1.5, c(-1e4)).unwrap().value.re * gamma(1.5);
        let asym = asymptotic_2f1_half(1, 100.0).unwrap();
        assert!(((asym - conn) / conn).abs() < 0.01);
        assert!(asymptotic_2f1_half::<f64>(0, 9.9).is_err());
    }

    #[test]
    fn q_asymptotic_closed_forms() {
        let r = q_asymptotic(1, 0.0, 10.0_f64, 60).unwrap();
        assert!((r.value.re + 1.0 / 101.0_f64.sqrt()).abs() < 1e-6);
        assert_eq!(r.value.im, 0.0);
        let r = q_asymptotic(2, 0.0, 10.0_f64, 60).unwrap();
        assert!((r.value.im - 20.0 / 101.0).abs() < 1e-6);
        assert_eq!(r.value.re, 0.0);
    }

    #[test]
    fn q_asymptotic_errors() {
        assert!(matches!(q_asymptotic(1, -0.5, 10.0_f64, 20), Err(Error::Pole(_))));
        assert!(matches!(q_asymptotic(1, 0.0, 0.5_f64, 20), Err(Error::Domain(_))));
        assert!(matches!(q_asymptotic(2, 2.0, 10.0_f64, 20), Err(Error::Domain(_))));
        assert!(matches!(q_asymptotic(1, -1.2, 10.0_f64, 20), Err(Error::Domain(_))));
    }

    #[test]
    fn q_asymptotic_fractional_degree_reference_values() {
        // 30-digit Ferrers Q^k_ν(ix) reference values (hypergeometric evaluation, independent code)
        let cases = [
            (1, -0.25, 10.0, Complex::new(0.074_180_102_818_323_05, -0.103_114_605_885_670_48)),
            (1, -0.25, -10.0, Complex::new(0.074_180_102_818_323_05, 0.103_114_605_885_670_48)),
            (1, -0.75, 100.0, Complex::new(0.021_163_582_176_005_356, -0.373_163_999_610_655_8)),
            (2, -0.25, 3.0, Complex::new(-0.113_456_551_702_466_5, 0.403_544_132_102_895_9)),
            (3, 0.4, 10.0, Complex::new(1.337_138_712_482_305, 0.808_512_614_276_908_9)),
            (1, 2.3, 3.0, Complex::new(74.162_699_702_316_76, 37.784_090_873_360_38)),
        ];
        for (k, l, x, want) in cases {
            let got = q_asymptotic(k, l, x, 200).unwrap();
            assert!(got.converged, "k={k} l={l} x={x}");
            assert!((got.value - want).norm() <= 1e-12 * want.norm(), "k={k} l={l} x={x}: {} vs {want}", got.value);
        }
    }

    #[test]
    fn q_asymptotic_derivative_matches_difference() {
        let h = 1e-5;
        for &(k, l, x) in &[(1u32, -0.25_f64, 12.0_f64), (2, 0.0, 15.0), (3, 1.3, -20.0), (1, -0.75, -11.0)] {
            let d = q_asymptotic_with_derivative(k, l, x, 200).unwrap().derivative;
            let fd = (q_asymptotic(k, l, x + h, 200).unwrap().value - q_asymptotic(k, l, x - h, 200).unwrap().value)
                / (2.0 * h);
            assert!((d - fd).norm() <= 1e-7 * d.norm(), "k={k} l={l} x={x}: {d} vs {fd}");
        }
    }

    #[test]
    fn q_asymptotic_fractional_degree_scaling() {
        // dominant |x|^ℓ family for ℓ ∈ (−1, 0)
        let l = -0.25_f64;
        let a = q_asymptotic(1, l, 1e4, 40).unwrap().value.norm();
        let b = q_asymptotic(1, l, 2e4, 40).unwrap().value.norm();
        let ratio = b / a;
        let want = 2.0_f64.powf(l);
        assert!(((ratio - want) / want).abs() < 0.05, "ratio {ratio}, want {want}");
    }

    #[test]
    fn f3f2_examples() {
        assert_eq!(f3f2_unit(0.3_f64, 1.7, 0.0, 2.5, 3.5).unwrap(), 1.0);
        let [a, b, cc, d, e] = a0_family_parameters::<f64>(2);
        assert!((f3f2_unit(a, b, cc, d, e).unwrap() - 8.0 / 9.0).abs() < 1e-15);
        let [a, b, cc, d, e] = a0_family_parameters::<f64>(4);
        let v = f3f2_unit(a, b, cc, d, e).unwrap() * central_binomial(4).to_f64().unwrap();
        assert!((v - 256.0 / 5.0).abs() < 1e-12);
        assert!(matches!(f3f2_unit(0.5_f64, 0.5, 0.5, 1.5, 1.5), Err(Error::Domain(_))));
        assert!(matches!(f3f2_unit(-3.0_f64, 0.5, 0.5, -1.0, 1.5), Err(Error::Pole(_))));
    }

    #[test]
    fn saalschutz_examples() {
        assert_eq!(saalschutz_3f2(0.3_f64, 0.7, 0, 1.9).unwrap(), 1.0);
        assert!((a0_family_saalschutz::<f64>(2).unwrap() - 8.0 / 9.0).abs() < 1e-15);
        assert!(matches!(saalschutz_3f2(0.5_f64, 0.5, 2, -1.0), Err(Error::Pole(_))));
    }

    #[test]
    fn s_closed_matches_exact_sum() {
        assert_eq!(s_closed(0), BigRational::one());
        assert_eq!(s_closed(2), BigRational::new(16.into(), 3.into()));
        assert_eq!(s_closed(7), BigRational::new(16384.into(), 8.into()));
        for l in 0..=20 {
            assert_eq!(s_sum(l), s_closed(l), "l = {l}");
        }
    }

    proptest! {
        #[test]
        fn saalschutz_matches_direct_sum(a in -3.0f64..3.0, b in -3.0f64..3.0, c in 0.1f64..4.0, n in 0usize..=6) {
            let e = a + b - c - n as f64 + 1.0;
            prop_assume!((0..n).all(|j| (c + j as f64).abs() > 1e-2 && (e + j as f64).abs() > 1e-2));
            prop_assume!((0..n).all(|j| (c - a - b + j as f64).abs() > 1e-2));
            let direct = f3f2_unit(a, b, -(n as f64), c, e).unwrap();
            let closed = saalschutz_3f2(a, b, n, c).unwrap();
            // rounding in the direct sum scales with the largest partial term
            let mut term = 1.0_f64;
            let mut size = 1.0_f64;
            for j in 0..n {
                let jf = j as f64;
                term *= (a + jf) * (b + jf) * (-(n as f64) + jf) / ((c + jf) * (e + jf) * (jf + 1.0));
                size = size.max(term.abs());
            }
            prop_assert!((direct - closed).abs() <= 1e-12 * size.max(closed.abs()), "{direct} vs {closed}");
        }
    }
}
