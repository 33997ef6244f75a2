//! Real-line quadrature and the orthogonality / normalization checks for
//! `Q^k_ℓ(ix)`.
//!
//! Integrals are symmetric-limit Riemann integrals. After `x = tan u` the
//! integrand is folded onto `u ∈ [0, π/2)` as `[f(x) + f(−x)] sec²u`, so the
//! two halves of every panel pair are summed before anything else and odd
//! integrands vanish exactly.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::eval::FerrersEvaluator;
use crate::exactpoly::{LegendreIndex, Parity, factorial, ferrers_numerator};
use crate::hypergeom::q_asymptotic_with_derivative;
use crate::scalar::{Real, as_integer};

// tabulated to 33 digits; the excess is rounded away at compile time
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// 7-point Gauss weights on the odd-indexed Kronrod nodes.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of an improper integral over the real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: Complex<T>,
    pub abs_error_estimate: T,
    /// Number of integrand evaluations.
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_evaluations: usize,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self { abs_tol: T::lit(1e-12), rel_tol: T::lit(1e-10), max_evaluations: 2_000_000 }
    }
}

impl<T: Real> QuadratureConfig<T> {
    fn target(&self, value: Complex<T>) -> T {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    lo: T,
    hi: T,
    value: Complex<T>,
    error: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Real> Eq for Panel<T> {}

impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Panel<T> {
    // largest error first; ties broken by position so the order is total
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.lo.partial_cmp(&self.lo).unwrap_or(Ordering::Equal))
    }
}

fn rescale_error<T: Real>(err: T, res_abs: T, res_asc: T) -> T {
    let mut scaled = err.abs();
    if res_asc != T::zero() && scaled != T::zero() {
        let scale = (T::lit(200.0) * scaled / res_asc).powf(T::lit(1.5));
        scaled = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    let tiny = T::min_positive_value() / (T::lit(50.0) * T::epsilon());
    if res_abs > tiny {
        scaled = scaled.max(T::lit(50.0) * T::epsilon() * res_abs);
    }
    scaled
}

/// 15-point Kronrod estimate with the embedded 7-point Gauss error on `[lo, hi]`.
fn kronrod15<T: Real, G: Fn(T) -> Complex<T>>(g: &G, lo: T, hi: T) -> (Complex<T>, T) {
    let half = T::lit(0.5);
    let center = half * (lo + hi);
    let half_len = half * (hi - lo);
    let mut fvals = [(Complex::zero(), Complex::zero()); 7];
    let f_center = g(center);
    let mut res_k = f_center * T::lit(WGK[7]);
    let mut res_g = f_center * T::lit(WG[3]);
    let mut res_abs = f_center.norm() * T::lit(WGK[7]);
    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let (f1, f2) = (g(center - dx), g(center + dx));
        fvals[j] = (f1, f2);
        res_k = res_k + (f1 + f2) * T::lit(WGK[j]);
        res_abs = res_abs + (f1.norm() + f2.norm()) * T::lit(WGK[j]);
        if j % 2 == 1 {
            res_g = res_g + (f1 + f2) * T::lit(WG[j / 2]);
        }
    }
    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[7]) * (f_center - mean).norm();
    for j in 0..7 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fvals[j].0 - mean).norm() + (fvals[j].1 - mean).norm());
    }
    let scale = half_len.abs();
    let err = rescale_error((res_k - res_g).norm() * scale, res_abs * scale, res_asc * scale);
    (res_k * half_len, err)
}

/// Adaptive integration that always returns its best estimate.
pub fn integrate_real_line_report<T, F>(f: F, config: QuadratureConfig<T>) -> QuadratureResult<T>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    let folded = |u: T| -> Complex<T> {
        let x = u.tan();
        let c = u.cos();
        (f(x) + f(-x)) / (c * c)
    };
    let per_panel = 15 * 2;
    let initial = 4;
    let step = T::FRAC_PI_2() / T::from_usize_exact(initial);
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for i in 0..initial {
        let lo = step * T::from_usize_exact(i);
        let hi = if i + 1 == initial { T::FRAC_PI_2() } else { step * T::from_usize_exact(i + 1) };
        let (value, error) = kronrod15(&folded, lo, hi);
        evaluations += per_panel;
        heap.push(Panel { lo, hi, value, error });
    }

    let totals = |heap: &BinaryHeap<Panel<T>>| {
        let mut panels: Vec<_> = heap.iter().copied().collect();
        panels.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap_or(Ordering::Equal));
        panels
            .iter()
            .fold((Complex::zero(), T::zero()), |(v, e), p| (v + p.value, e + p.error))
    };

    loop {
        let (value, error) = totals(&heap);
        if error <= config.target(value) {
            return QuadratureResult { value, abs_error_estimate: error, evaluations, converged: true };
        }
        let worst = heap.peek().copied();
        let splittable = worst.is_some_and(|p| {
            let mid = T::lit(0.5) * (p.lo + p.hi);
            mid > p.lo && mid < p.hi
        });
        if evaluations + 2 * per_panel > config.max_evaluations || !splittable {
            return QuadratureResult { value, abs_error_estimate: error, evaluations, converged: false };
        }
        let p = heap.pop().expect("heap is never empty");
        let mid = T::lit(0.5) * (p.lo + p.hi);
        for (lo, hi) in [(p.lo, mid), (mid, p.hi)] {
            let (value, error) = kronrod15(&folded, lo, hi);
            heap.push(Panel { lo, hi, value, error });
        }
        evaluations += 2 * per_panel;
    }
}

/// `lim_{a→∞} ∫_{−a}^{a} f(x) dx` for `f` finite on ℝ and decaying at least
/// like `|x|^{−2}` (the caller's responsibility).
pub fn integrate_real_line<T, F>(f: F, abs_tol: T, rel_tol: T) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    let config = QuadratureConfig { abs_tol, rel_tol, ..QuadratureConfig::default() };
    into_result(integrate_real_line_report(f, config), config.max_evaluations)
}

fn into_result<T: Real>(r: QuadratureResult<T>, budget: usize) -> Result<QuadratureResult<T>> {
    if r.converged {
        Ok(r)
    } else {
        Err(Error::BudgetExceeded {
            budget,
            best_re: r.value.re.to_f64().unwrap_or(f64::NAN),
            best_im: r.value.im.to_f64().unwrap_or(f64::NAN),
            abs_error: r.abs_error_estimate.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// An exact integer multiple of π.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiMultiple(pub BigInt);

impl PiMultiple {
    pub fn coefficient(&self) -> &BigInt {
        &self.0
    }

    pub fn to_real<T: Real>(&self) -> T {
        T::lit(self.0.to_f64().unwrap_or(f64::NAN)) * T::PI()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}π", self.0)
    }
}

/// `∫ (Q^k_ℓ(ix))² dx = (2ℓ)! π Π_{i=ℓ+2}^{k} (ℓ+i)(ℓ−i+1)`; the empty
/// product at `k = ℓ + 1` is 1. The sign is `(−1)^{k−ℓ−1}`: the integrand
/// is `Q·Q`, not `|Q|²`.
pub fn normalization_exact(k: u32, l: u32) -> Result<PiMultiple> {
    LegendreIndex::new(k, l)?;
    let li = BigInt::from(l);
    let product = ((l + 2)..=k).fold(BigInt::one(), |acc, i| {
        let i = BigInt::from(i);
        acc * (&li + &i) * (&li - &i + 1)
    });
    Ok(PiMultiple(factorial(2 * l) * product))
}

fn double_factorial(n: i64) -> BigInt {
    (1..=n).rev().step_by(2).fold(BigInt::one(), |acc, m| acc * m)
}

/// `∫ (Q^k_ℓ(ix))² dx / π` integrated term by term from the exact numerator,
/// using `∫ x^{2j} (1+x²)^{−k} dx = π (2j−1)!! (2k−2j−3)!! / (2^{k−1} (k−1)!)`.
/// Shares nothing with the product formula of [`normalization_exact`].
pub fn normalization_from_moments(k: u32, l: u32) -> Result<BigRational> {
    let n = ferrers_numerator(LegendreIndex::new(k, l)?)?;
    let square = n.poly() * n.poly();
    let den = (BigInt::one() << (k as usize - 1)) * factorial(k - 1);
    let kk = i64::from(k);
    let sum = square.coeffs().iter().enumerate().step_by(2).fold(BigRational::zero(), |acc, (p, c)| {
        let j = p as i64 / 2;
        let moment = double_factorial(2 * j - 1) * double_factorial(2 * kk - 2 * j - 3);
        acc + BigRational::new(c * moment, den.clone())
    });
    // Q² carries i^{2σ}
    Ok(if n.sigma() == Parity::Odd { -sum } else { sum })
}

/// Cauchy–Schwarz bound on `|∫ Q^k_ℓ Q^k_{ℓ'} dx|`, used as the absolute
/// tolerance scale. `Q²` is `±|Q|²`, so the diagonal constants are the L² norms.
fn pair_scale<T: Real>(k: u32, l: u32, lp: u32) -> Result<T> {
    let a = normalization_exact(k, l)?.to_real::<T>().abs();
    let b = normalization_exact(k, lp)?.to_real::<T>().abs();
    Ok((a * b).sqrt())
}

fn inner_product_with<T: Real>(
    left: &FerrersEvaluator<T>,
    right: &FerrersEvaluator<T>,
    tol: T,
) -> Result<(QuadratureResult<T>, QuadratureConfig<T>)> {
    let k = left.index().k();
    let scale = pair_scale::<T>(k, left.index().l(), right.index().l())?;
    let config = QuadratureConfig { abs_tol: tol * scale, rel_tol: tol, ..QuadratureConfig::default() };
    let r = integrate_real_line_report(|x| left.value(x) * right.value(x), config);
    Ok((r, config))
}

/// `∫ Q^k_ℓ(ix) Q^k_{ℓ'}(ix) dx` (product, not conjugated).
///
/// `tol` is relative; for entries that vanish the absolute target is
/// `tol` times the geometric mean of the two diagonal magnitudes.
pub fn inner_product<T: Real>(k: u32, l: u32, lp: u32, tol: T) -> Result<QuadratureResult<T>> {
    let left = FerrersEvaluator::new(LegendreIndex::new(k, l)?)?;
    let right = FerrersEvaluator::new(LegendreIndex::new(k, lp)?)?;
    let (r, config) = inner_product_with(&left, &right, tol)?;
    into_result(r, config.max_evaluations)
}

/// Largest order accepted by [`gram_matrix`].
pub const MAX_GRAM_ORDER: u32 = 10;

/// All inner products `⟨Q^k_ℓ, Q^k_{ℓ'}⟩` for `ℓ, ℓ' < k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramReport<T> {
    pub k: u32,
    pub matrix: Vec<Vec<Complex<T>>>,
    pub entries: Vec<Vec<QuadratureResult<T>>>,
    /// Exact expected values; zero off the diagonal.
    pub expected: Vec<Vec<PiMultiple>>,
    pub max_abs_deviation: T,
    pub converged: bool,
}

impl<T: Real> GramReport<T> {
    pub fn max_diagonal_magnitude(&self) -> T {
        (0..self.k as usize).map(|i| self.matrix[i][i].norm()).fold(T::zero(), T::max)
    }

    pub fn max_off_diagonal_magnitude(&self) -> T {
        let n = self.k as usize;
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.matrix[i][j].norm())
            .fold(T::zero(), T::max)
    }

    pub fn deviation(&self, l: usize, lp: usize) -> T {
        (self.matrix[l][lp] - Complex::new(self.expected[l][lp].to_real::<T>(), T::zero())).norm()
    }
}

/// Gram matrix for order `k` (`1 ≤ k ≤ 10`). Entries are integrated in
/// parallel; a non-converged entry flags the report instead of failing it.
pub fn gram_matrix<T: Real>(k: u32, tol: T) -> Result<GramReport<T>> {
    if k == 0 || k > MAX_GRAM_ORDER {
        return Err(Error::Domain(format!("gram matrix order must be in 1..={MAX_GRAM_ORDER} (got {k})")));
    }
    let evaluators = (0..k)
        .map(|l| FerrersEvaluator::<T>::new(LegendreIndex::new(k, l)?))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..k as usize).flat_map(|i| (i..k as usize).map(move |j| (i, j))).collect();
    let computed = pairs
        .par_iter()
        .map(|&(i, j)| inner_product_with(&evaluators[i], &evaluators[j], tol).map(|(r, _)| r))
        .collect::<Result<Vec<_>>>()?;

    let n = k as usize;
    let placeholder = QuadratureResult {
        value: Complex::zero(),
        abs_error_estimate: T::zero(),
        evaluations: 0,
        converged: false,
    };
    let mut entries = vec![vec![placeholder; n]; n];
    for (&(i, j), r) in pairs.iter().zip(computed) {
        entries[i][j] = r;
        entries[j][i] = r;
    }
    let expected = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { normalization_exact(k, i as u32) } else { Ok(PiMultiple(BigInt::zero())) })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix: Vec<Vec<_>> = entries.iter().map(|row| row.iter().map(|r| r.value).collect()).collect();
    let converged = entries.iter().flatten().all(|r| r.converged);
    let mut report = GramReport { k, matrix, entries, expected, max_abs_deviation: T::zero(), converged };
    report.max_abs_deviation = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| report.deviation(i, j))
        .fold(T::zero(), T::max);
    Ok(report)
}

/// Bracket `(1+x²)/(ℓ−n) · (Q^k_n Q^k_ℓ' − Q^k_ℓ Q^k_n')` at `x = ±a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryTerm<T> {
    pub upper: Complex<T>,
    pub lower: Complex<T>,
}

impl<T: Real> BoundaryTerm<T> {
    /// Value at `+a` minus value at `−a`.
    pub fn difference(&self) -> Complex<T> {
        self.upper - self.lower
    }

    /// Larger of the two endpoint magnitudes. For integer pairs with `ℓ + n`
    /// odd the bracket is even in `x` and the difference cancels exactly, so
    /// decay is measured on this instead.
    pub fn magnitude(&self) -> T {
        self.upper.norm().max(self.lower.norm())
    }
}

/// Default number of terms for the asymptotic branch of [`boundary_term`].
pub const BOUNDARY_SERIES_TERMS: usize = 60;

/// Boundary term of the orthogonality identity at `±a`.
///
/// Integer `k > ℓ, n ≥ 0` use the exact closed forms; `ℓ, n ∈ (−1, 0)` use
/// the large-argument expansion and need `a ≥ 10`.
pub fn boundary_term<T: Real>(k: u32, l: T, n: T, a: T) -> Result<BoundaryTerm<T>> {
    if l == n {
        return Err(Error::Domain("boundary term divides by l - n, which is zero".into()));
    }
    if !(a > T::one()) {
        return Err(Error::Domain(format!("boundary abscissa must exceed 1 (got {a})")));
    }
    let width = T::one() + a * a;
    let bracket = |ql: Complex<T>, dql: Complex<T>, qn: Complex<T>, dqn: Complex<T>| {
        (qn * dql - ql * dqn) * (width / (l - n))
    };
    let as_degree = |v: T| as_integer(v).filter(|&d| d >= 0 && d < k as i64).map(|d| d as u32);
    let fractional = |v: T| v > -T::one() && v < T::zero();

    match (as_degree(l), as_degree(n)) {
        (Some(li), Some(ni)) => {
            let el = FerrersEvaluator::<T>::new(LegendreIndex::new(k, li)?)?;
            let en = FerrersEvaluator::<T>::new(LegendreIndex::new(k, ni)?)?;
            let at = |x: T| bracket(el.value(x), el.derivative(x), en.value(x), en.derivative(x));
            Ok(BoundaryTerm { upper: at(a), lower: at(-a) })
        }
        _ if fractional(l) && fractional(n) => {
            if a < T::lit(10.0) {
                return Err(Error::Domain(format!("asymptotic boundary evaluation needs a >= 10 (got {a})")));
            }
            let at = |x: T| -> Result<Complex<T>> {
                let ql = q_asymptotic_with_derivative(k, l, x, BOUNDARY_SERIES_TERMS)?;
                let qn = q_asymptotic_with_derivative(k, n, x, BOUNDARY_SERIES_TERMS)?;
                Ok(bracket(ql.outcome.value, ql.derivative, qn.outcome.value, qn.derivative))
            };
            Ok(BoundaryTerm { upper: at(a)?, lower: at(-a)? })
        }
        _ => Err(Error::Domain(format!(
            "unsupported boundary regime (k={k}, l={l}, n={n}); need integer k > l, n >= 0 or l, n in (-1, 0)"
        ))),
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_loglog_slope<T: Real>(points: &[(T, T)]) -> T {
    let n = T::from_usize_exact(points.len());
    let logs: Vec<(T, T)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().fold(T::zero(), |s, p| s + p.0) / n;
    let my = logs.iter().fold(T::zero(), |s, p| s + p.1) / n;
    let (sxy, sxx) = logs.iter().fold((T::zero(), T::zero()), |(sxy, sxx), &(lx, ly)| {
        (sxy + (lx - mx) * (ly - my), sxx + (lx - mx) * (lx - mx))
    });
    sxy / sxx
}

/// Abscissae `10^{2}, 10^{2.5}, …, 10^{4}` used by [`decay_exponent`].
pub fn decay_abscissae<T: Real>() -> [T; 5] {
    [2.0, 2.5, 3.0, 3.5, 4.0].map(|e| T::lit(10.0).powf(T::lit(e)))
}

/// Fitted log-log slope of `|Q^k_ℓ(ix)|` over `x ∈ [10², 10⁴]`; expected `−(ℓ+1)`.
pub fn decay_exponent<T: Real>(k: u32, l: u32) -> Result<T> {
    let ev = FerrersEvaluator::<T>::new(LegendreIndex::new(k, l)?)?;
    let points: Vec<_> = decay_abscissae::<T>().iter().map(|&x| (x, ev.value(x).norm())).collect();
    Ok(fit_loglog_slope(&points))
}

/// Fitted log-log slope of the boundary-term endpoint magnitude over `radii`.
pub fn boundary_decay_exponent<T: Real>(k: u32, l: T, n: T, radii: &[T]) -> Result<T> {
    let points = radii
        .iter()
        .map(|&a| boundary_term(k, l, n, a).map(|b| (a, b.magnitude())))
        .collect::<Result<Vec<_>>>()?;
    Ok(fit_loglog_slope(&points))
}

/// `true` if `c` is negative; convenience for sign-structure checks.
pub fn is_negative(c: &PiMultiple) -> bool {
    c.0.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn re(v: f64) -> Complex<f64> {
        Complex::new(v, 0.0)
    }

    #[test]
    fn moments_agree_with_the_product_formula() {
        for (k, l) in LegendreIndex::all_up_to(12).map(|i| (i.k(), i.l())) {
            let exact = normalization_exact(k, l).unwrap();
            assert_eq!(normalization_from_moments(k, l).unwrap(), BigRational::from_integer(exact.0), "k={k} l={l}");
        }
    }

    #[test]
    fn lorentzian() {
        let r = integrate_real_line(|x: f64| re(1.0 / (1.0 + x * x)), 1e-12, 1e-10).unwrap();
        assert!((r.value.re - PI).abs() < 1e-12);
        assert!(r.converged);
        assert!(r.abs_error_estimate <= 1e-10 * PI);
    }

    #[test]
    fn odd_integrand_cancels_exactly() {
        let r = integrate_real_line(|x: f64| re(x / (1.0 + x * x).powf(1.5)), 1e-12, 1e-10).unwrap();
        assert_eq!(r.value, re(0.0));
    }

    #[test]
    fn squared_lorentzian() {
        let r = integrate_real_line(|x: f64| re(4.0 / (1.0 + x * x).powi(2)), 1e-12, 1e-10).unwrap();
        assert!((r.value.re - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let config = QuadratureConfig { abs_tol: 0.0, rel_tol: 0.0, max_evaluations: 500 };
        let r = integrate_real_line_report(|x: f64| re(1.0 / (1.0 + x * x)), config);
        assert!(!r.converged);
        assert!(r.evaluations <= 500);
        assert!((r.value.re - PI).abs() < 1e-10);
        let err = into_result(r, 500).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 500, .. }));
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalization_exact(1, 0).unwrap(), PiMultiple(1.into()));
        assert_eq!(normalization_exact(2, 1).unwrap(), PiMultiple(2.into()));
        assert_eq!(normalization_exact(3, 1).unwrap(), PiMultiple((-8).into()));
        assert_eq!(normalization_exact(2, 0).unwrap(), PiMultiple((-2).into()));
        assert!(normalization_exact(2, 2).is_err());
        for index in LegendreIndex::all_up_to(10) {
            let c = normalization_exact(index.k(), index.l()).unwrap();
            assert_eq!(is_negative(&c), index.numerator_degree() % 2 == 1);
        }
    }

    #[test]
    fn inner_product_examples() {
        let r = inner_product(1, 0, 0, 1e-12_f64).unwrap();
        assert!((r.value.re - PI).abs() < 1e-10);
        let r = inner_product(2, 0, 1, 1e-12_f64).unwrap();
        assert!(r.value.norm() < 1e-10);
        let r = inner_product(2, 0, 0, 1e-12_f64).unwrap();
        assert!((r.value.re + 2.0 * PI).abs() < 1e-10);
        assert!(inner_product(2, 0, 2, 1e-10_f64).is_err());
    }

    #[test]
    fn gram_small_orders() {
        let g = gram_matrix(1, 1e-10_f64).unwrap();
        assert!((g.matrix[0][0].re - PI).abs() < 1e-9);
        let g = gram_matrix(2, 1e-10_f64).unwrap();
        assert!(g.converged);
        assert!((g.matrix[0][0].re + 2.0 * PI).abs() < 1e-8);
        assert!((g.matrix[1][1].re - 2.0 * PI).abs() < 1e-8);
        assert!(g.max_off_diagonal_magnitude() < 1e-8);
        assert!(g.max_abs_deviation < 1e-8);
        assert!(gram_matrix(0, 1e-10_f64).is_err());
        assert!(gram_matrix(11, 1e-10_f64).is_err());
    }

    #[test]
    fn gram_order_five_off_diagonal() {
        let g = gram_matrix(5, 1e-10_f64).unwrap();
        assert!(g.converged);
        assert!(g.max_off_diagonal_magnitude() <= 1e-8 * g.max_diagonal_magnitude());
    }

    #[test]
    fn gram_is_deterministic() {
        let a = gram_matrix(4, 1e-10_f64).unwrap();
        let b = gram_matrix(4, 1e-10_f64).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn boundary_integer_pair() {
        let b = boundary_term(2, 1.0_f64, 0.0, 100.0).unwrap();
        // bracket is −4i/(1+x²), even in x
        assert!((b.upper - Complex::new(0.0, -4.0 / 10_001.0)).norm() < 1e-18);
        assert_eq!(b.difference(), Complex::new(0.0, 0.0));
        assert!(b.magnitude() <= 10.0 * 1e-4);
        let b1000 = boundary_term(2, 1.0_f64, 0.0, 1000.0).unwrap();
        let ratio = b1000.magnitude() / b.magnitude();
        assert!(ratio > 0.5e-2 && ratio < 2e-2);
        let slope = boundary_decay_exponent(2, 1.0_f64, 0.0, &[1e2, 1e3, 1e4]).unwrap();
        assert!((slope + 2.0).abs() < 0.1);
    }

    #[test]
    fn boundary_errors() {
        assert!(boundary_term(2, 1.0_f64, 1.0, 100.0).is_err());
        assert!(boundary_term(2, 1.0_f64, 0.0, 0.5).is_err());
        assert!(boundary_term(1, -0.25_f64, -0.75, 5.0).is_err());
        assert!(boundary_term(2, 0.5_f64, 1.0, 100.0).is_err());
    }

    #[test]
    fn boundary_fractional_degrees_do_not_decay() {
        let b10 = boundary_term(1, -0.25_f64, -0.75, 10.0).unwrap().magnitude();
        let b100 = boundary_term(1, -0.25_f64, -0.75, 100.0).unwrap().magnitude();
        assert!(b100 >= b10, "{b10} -> {b100}");
    }

    #[test]
    fn decay_examples() {
        assert!((decay_exponent::<f64>(1, 0).unwrap() + 1.0).abs() < 0.01);
        assert!((decay_exponent::<f64>(3, 1).unwrap() + 2.0).abs() < 0.01);
        assert!((decay_exponent::<f64>(5, 4).unwrap() + 5.0).abs() < 0.02);
    }
}
