//! Floating-point evaluation of `Q^k_ℓ(ix)`, its x-derivatives, the Hobson
//! variant, the scalar `Q_ℓ(ix)` and the imaginary-axis Legendre ODE residual.
//!
//! Values come from the exact numerators of [`crate::exactpoly`]: the phase
//! is the integer `σ`, and `(1 + x²)^{k/2}` is always the positive root.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{
    FerrersNumerator, IntegerPolynomial, LegendreIndex, Parity, RationalPolynomial, ferrers_numerator, legendre_p,
    log_companion,
};
use crate::scalar::Real;

fn to_real<T: Real>(c: &BigInt) -> T {
    T::lit(c.to_f64().unwrap_or(f64::NAN))
}

fn rational_to_real<T: Real>(c: &BigRational) -> T {
    T::lit(c.to_f64().unwrap_or(f64::NAN))
}

/// `M(x) / (1 + x²)^{p/2}` for a single-parity integer polynomial `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalForm<T> {
    /// Coefficients of the parity class only: `coeffs[m]` multiplies `x^{parity + 2m}`.
    coeffs: Vec<T>,
    parity: Parity,
    degree: usize,
    half_power: u32,
}

impl<T: Real> RationalForm<T> {
    fn from_exact(poly: &IntegerPolynomial, half_power: u32) -> Result<Self> {
        let parity = poly
            .parity()
            .ok_or_else(|| Error::Invariant("rational form numerator mixes parities".into()))?;
        let degree = poly.degree().unwrap_or(0);
        let coeffs = (parity.bit() as usize..=degree).step_by(2).map(|j| to_real(&poly.coeff(j))).collect();
        Ok(Self { coeffs, parity, degree, half_power })
    }

    fn denominator(&self, w: T) -> T {
        let p = self.half_power as i32;
        if p % 2 == 0 {
            w.powi(p / 2)
        } else {
            w.powi(p / 2) * w.sqrt()
        }
    }

    pub fn eval(&self, x: T) -> T {
        if self.coeffs.is_empty() {
            return T::zero();
        }
        if x.abs() <= T::one() {
            let w = x * x;
            let inner = self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * w + c);
            let odd = if self.parity == Parity::Odd { x } else { T::one() };
            odd * inner / self.denominator(T::one() + w)
        } else {
            // factor x^degree out of the numerator and |x|^p out of the denominator
            let u = x.recip();
            let w = u * u;
            let inner = self.coeffs.iter().fold(T::zero(), |acc, &c| acc * w + c);
            let sign = if self.degree % 2 == 1 && x < T::zero() { -T::one() } else { T::one() };
            let decay = u.abs().powi(self.half_power as i32 - self.degree as i32);
            sign * decay * inner / self.denominator(T::one() + w)
        }
    }
}

/// `(1 + x²) M' − p x M`: numerator of `d/dx [M / (1+x²)^{p/2}]` over `(1+x²)^{(p+2)/2}`.
pub fn derivative_numerator(m: &IntegerPolynomial, half_power: u32) -> IntegerPolynomial {
    let one_plus_x2 = IntegerPolynomial::new(vec![1.into(), 0.into(), 1.into()]);
    let px = IntegerPolynomial::monomial(BigInt::from(half_power), 1);
    &(&one_plus_x2 * &m.derivative()) - &(&px * m)
}

/// Precompiled evaluator for `Q^k_ℓ(ix)` and its first two x-derivatives.
#[derive(Debug, Clone)]
pub struct FerrersEvaluator<T> {
    numerator: FerrersNumerator,
    value: RationalForm<T>,
    first: RationalForm<T>,
    second: RationalForm<T>,
}

impl<T: Real> FerrersEvaluator<T> {
    pub fn new(index: LegendreIndex) -> Result<Self> {
        let numerator = ferrers_numerator(index)?;
        let k = index.k();
        let n1 = derivative_numerator(numerator.poly(), k);
        let n2 = derivative_numerator(&n1, k + 2);
        Ok(Self {
            value: RationalForm::from_exact(numerator.poly(), k)?,
            first: RationalForm::from_exact(&n1, k + 2)?,
            second: RationalForm::from_exact(&n2, k + 4)?,
            numerator,
        })
    }

    pub fn index(&self) -> LegendreIndex {
        self.numerator.index()
    }

    pub fn sigma(&self) -> Parity {
        self.numerator.sigma()
    }

    pub fn numerator(&self) -> &FerrersNumerator {
        &self.numerator
    }

    fn phased(&self, v: T) -> Complex<T> {
        match self.sigma() {
            Parity::Even => Complex::new(v, T::zero()),
            Parity::Odd => Complex::new(T::zero(), v),
        }
    }

    /// `Q^k_ℓ(ix)`.
    pub fn value(&self, x: T) -> Complex<T> {
        self.phased(self.value.eval(x))
    }

    /// `d/dx Q^k_ℓ(ix)`.
    pub fn derivative(&self, x: T) -> Complex<T> {
        self.phased(self.first.eval(x))
    }

    /// `d²/dx² Q^k_ℓ(ix)`.
    pub fn second_derivative(&self, x: T) -> Complex<T> {
        self.phased(self.second.eval(x))
    }

    /// Hobson's `𝒬^k_ℓ(ix) = e^{∓iπk/2} Q^k_ℓ(ix)` for `x ≷ 0`.
    pub fn hobson(&self, x: T) -> Result<Complex<T>> {
        if x == T::zero() || x.is_nan() {
            return Err(Error::Domain("Hobson phase is ambiguous at x = 0 (sign of Im z undefined)".into()));
        }
        let quarter_turns = if x > T::zero() { 4 - self.index().k() % 4 } else { self.index().k() % 4 };
        let v = self.value(x);
        let i = Complex::new(T::zero(), T::one());
        Ok((0..quarter_turns % 4).fold(v, |acc, _| acc * i))
    }

    /// Left-hand side of `d/dx[(1+x²) Y'] − [ℓ(ℓ+1) − k²/(1+x²)] Y` and the
    /// largest magnitude among its individual terms.
    pub fn ode_terms(&self, x: T) -> (Complex<T>, T) {
        let (k, l) = (T::from_usize_exact(self.index().k() as usize), T::from_usize_exact(self.index().l() as usize));
        let w = T::one() + x * x;
        let y = self.value(x);
        let terms = [
            self.derivative(x) * (T::lit(2.0) * x),
            self.second_derivative(x) * w,
            -y * (l * (l + T::one())),
            y * (k * k / w),
        ];
        let scale = terms.iter().map(|t| t.norm()).fold(T::zero(), T::max);
        (terms.iter().fold(Complex::zero(), |acc, t| acc + t), scale)
    }
}

/// `Q^k_ℓ(ix) = i^σ N(x) / (1 + x²)^{k/2}`.
pub fn q_ferrers<T: Real>(index: LegendreIndex, x: T) -> Result<Complex<T>> {
    Ok(FerrersEvaluator::new(index)?.value(x))
}

/// `d/dx Q^k_ℓ(ix)` from `[(1+x²) N' − k x N] / (1+x²)^{k/2+1}`.
pub fn q_ferrers_derivative<T: Real>(index: LegendreIndex, x: T) -> Result<Complex<T>> {
    Ok(FerrersEvaluator::new(index)?.derivative(x))
}

/// Hobson's `𝒬^k_ℓ(ix)`; errors at `x = 0`.
pub fn q_hobson<T: Real>(index: LegendreIndex, x: T) -> Result<Complex<T>> {
    FerrersEvaluator::new(index)?.hobson(x)
}

fn eval_at_imaginary<T: Real>(p: &RationalPolynomial, x: T) -> Complex<T> {
    let z = Complex::new(T::zero(), x);
    p.coeffs()
        .iter()
        .rev()
        .fold(Complex::zero(), |acc, c| acc * z + Complex::new(rational_to_real::<T>(c), T::zero()))
}

/// `Q_ℓ(ix) = i P_ℓ(ix) arctan(x) − W_ℓ(ix)`.
pub fn q_scalar<T: Real>(l: u32, x: T) -> Complex<T> {
    let p = eval_at_imaginary(&legendre_p(l), x);
    let w = eval_at_imaginary(&log_companion(l), x);
    Complex::new(T::zero(), T::one()) * p * x.atan() - w
}

/// Magnitude of the ODE left-hand side at `x`.
pub fn ode_residual<T: Real>(index: LegendreIndex, x: T) -> Result<T> {
    Ok(FerrersEvaluator::new(index)?.ode_terms(x).0.norm())
}

/// ODE residual divided by the magnitude of its largest term.
pub fn ode_residual_relative<T: Real>(index: LegendreIndex, x: T) -> Result<T> {
    let (lhs, scale) = FerrersEvaluator::new(index)?.ode_terms(x);
    Ok(if scale == T::zero() { lhs.norm() } else { lhs.norm() / scale })
}
