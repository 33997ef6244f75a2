//! Exact symbolic construction of the polynomial objects behind `Q^k_ℓ(ix)`.
//!
//! Everything here is exact: coefficients are arbitrary-precision integers
//! or rationals and nothing is ever rounded.

mod logform;
mod polynomial;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use logform::LogRationalForm;
pub use polynomial::{Coefficient, Parity, Polynomial};

pub type RationalPolynomial = Polynomial<BigRational>;
pub type IntegerPolynomial = Polynomial<BigInt>;
/// Polynomial with Gaussian-rational coefficients, used for identities on the imaginary axis.
pub type GaussianPolynomial = Polynomial<Complex<BigRational>>;

/// Largest order accepted at the public boundary.
pub const MAX_ORDER: u32 = 64;
/// Largest degree accepted at the public boundary.
pub const MAX_DEGREE: u32 = 63;

/// Validated `(k, ℓ)` with `k > ℓ ≥ 0`, inside the supported range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LegendreIndex {
    k: u32,
    l: u32,
}

impl LegendreIndex {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidIndex { k: 0, l: l.into(), reason: "order k must be at least 1" });
        }
        if k <= l {
            return Err(Error::InvalidIndex { k: k.into(), l: l.into(), reason: "order must exceed degree (k > l)" });
        }
        if k > MAX_ORDER || l > MAX_DEGREE {
            return Err(Error::IndexTooLarge {
                k: k.into(),
                l: l.into(),
                max_k: MAX_ORDER,
                max_l: MAX_DEGREE,
            });
        }
        Ok(Self { k, l })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// `k − ℓ − 1`, the degree of the Ferrers numerator.
    pub fn numerator_degree(&self) -> u32 {
        self.k - self.l - 1
    }

    /// All valid indices with `k <= max_k`, ordered by `k` then `ℓ`.
    pub fn all_up_to(max_k: u32) -> impl Iterator<Item = LegendreIndex> {
        (1..=max_k.min(MAX_ORDER)).flat_map(|k| (0..k).map(move |l| LegendreIndex { k, l }))
    }
}

/// Guards a bare degree argument against the public limit.
pub fn check_degree(l: u32) -> Result<()> {
    if l > MAX_DEGREE {
        return Err(Error::IndexTooLarge { k: 0, l: l.into(), max_k: MAX_ORDER, max_l: MAX_DEGREE });
    }
    Ok(())
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn sign(odd: bool) -> BigInt {
    if odd {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// `2^ℓ P_ℓ(z) = (1/ℓ!) d^ℓ/dz^ℓ (z² − 1)^ℓ`, an integer polynomial.
fn rodrigues_scaled(l: u32) -> IntegerPolynomial {
    let mut power = vec![BigInt::zero(); 2 * l as usize + 1];
    for j in 0..=l {
        power[2 * j as usize] = sign((l - j) % 2 == 1) * binomial(l, j);
    }
    let lf = factorial(l);
    IntegerPolynomial::new(power).nth_derivative(l as usize).map(|c| c / &lf)
}

/// Legendre polynomial via Rodrigues' formula, `(1 / 2^ℓ ℓ!) d^ℓ/dz^ℓ (z² − 1)^ℓ`.
pub fn legendre_p(l: u32) -> RationalPolynomial {
    let denom = BigInt::one() << l as usize;
    rodrigues_scaled(l).map(|c| BigRational::new(c.clone(), denom.clone()))
}

/// Legendre polynomial from the explicit finite sum
/// `2^{-ℓ} Σ_p (−1)^p (2ℓ−2p)! / (p! (ℓ−p)! (ℓ−2p)!) z^{ℓ−2p}`.
pub fn legendre_p_explicit(l: u32) -> RationalPolynomial {
    let mut coeffs = vec![BigRational::zero(); l as usize + 1];
    let two_l = BigInt::one() << l as usize;
    for p in 0..=l / 2 {
        let num = sign(p % 2 == 1) * factorial(2 * l - 2 * p);
        let den = factorial(p) * factorial(l - p) * factorial(l - 2 * p) * &two_l;
        coeffs[(l - 2 * p) as usize] = BigRational::new(num, den);
    }
    RationalPolynomial::new(coeffs)
}

/// `W_ℓ(z) = Σ_{j=1}^{ℓ} P_{j−1}(z) P_{ℓ−j}(z) / j`, the polynomial part of `Q_ℓ`.
pub fn log_companion(l: u32) -> RationalPolynomial {
    (1..=l).fold(RationalPolynomial::zero(), |acc, j| {
        let term = &legendre_p(j - 1) * &legendre_p(l - j);
        &acc + &term.scale(&BigRational::new(BigInt::one(), j.into()))
    })
}

/// `T_m(z)` with `d^m/dz^m ln((1+z)/(1−z)) = T_m(z) / (1 − z²)^m`, `m ≥ 1`.
///
/// `T_m = (m−1)! Σ_s C(m,s) ((−1)^{m−1+s} + 1) z^s`; only powers with
/// `m − 1 + s` even survive.
///
/// # Panics
/// If `m == 0`.
pub fn log_derivative_numerator(m: u32) -> RationalPolynomial {
    log_derivative_integer(m).map(|c| rat(c.clone()))
}

fn log_derivative_integer(m: u32) -> IntegerPolynomial {
    assert!(m >= 1, "log derivative order must be positive");
    let lead = factorial(m - 1);
    let coeffs = (0..=m)
        .map(|s| if (m - 1 + s).is_multiple_of(2) { &lead * binomial(m, s) * 2 } else { BigInt::zero() })
        .collect();
    IntegerPolynomial::new(coeffs)
}

/// `(1 − z²)^n` from the binomial theorem.
fn one_minus_z2_pow(n: u32) -> IntegerPolynomial {
    let mut coeffs = vec![BigInt::zero(); 2 * n as usize + 1];
    for j in 0..=n {
        coeffs[2 * j as usize] = sign(j % 2 == 1) * binomial(n, j);
    }
    IntegerPolynomial::new(coeffs)
}

/// Numerator `R(z)` of `d^k/dz^k Q_ℓ(z) = R(z) / (1 − z²)^k` for `k > ℓ`,
/// assembled with Leibniz' rule applied to `½ P_ℓ(z) ln((1+z)/(1−z))`.
///
/// The companion polynomial has degree `ℓ − 1 < k` and drops out, and only
/// the terms `m ≥ k − ℓ` of the Leibniz sum survive. The sum is carried in
/// integers against `2^{ℓ+1}` and divided out at the end.
pub fn log_free_derivative(l: u32, k: u32) -> Result<RationalPolynomial> {
    if k <= l {
        return Err(Error::InvalidIndex {
            k: k.into(),
            l: l.into(),
            reason: "derivative order must exceed degree to eliminate the logarithm",
        });
    }
    let p = rodrigues_scaled(l);
    let mut acc = IntegerPolynomial::zero();
    for m in (k - l)..=k {
        let dp = p.nth_derivative((k - m) as usize).scale(&binomial(k, m));
        acc = &acc + &(&(&dp * &log_derivative_integer(m)) * &one_minus_z2_pow(k - m));
    }
    let denom = BigInt::one() << (l as usize + 1);
    Ok(acc.map(|c| BigRational::new(c.clone(), denom.clone())))
}

/// Substitutes `z = i x` into a rational polynomial.
pub fn substitute_imaginary(p: &RationalPolynomial) -> GaussianPolynomial {
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let c = c.clone();
            match j % 4 {
                0 => Complex::new(c, BigRational::zero()),
                1 => Complex::new(BigRational::zero(), c),
                2 => Complex::new(-c, BigRational::zero()),
                _ => Complex::new(BigRational::zero(), -c),
            }
        })
        .collect();
    Polynomial::new(coeffs)
}

/// `(1 + x²)^j D_j(x)` where `D_j` is the `j`-th x-derivative of `Q_ℓ(ix)`,
/// i.e. `i^j R_j(ix)` with `R_j` from [`log_free_derivative`].
pub fn imaginary_axis_derivative(l: u32, j: u32) -> Result<GaussianPolynomial> {
    let r = substitute_imaginary(&log_free_derivative(l, j)?);
    let zero = BigRational::zero();
    let one = BigRational::one();
    let phase = match j % 4 {
        0 => Complex::new(one, zero),
        1 => Complex::new(zero, one),
        2 => Complex::new(-one, zero),
        _ => Complex::new(zero, -one),
    };
    Ok(r.scale(&phase))
}

/// Checks `d/dx[(1+x²)^k D_k] = (ℓ+k)(ℓ−k+1) (1+x²)^{k−1} D_{k−1}` exactly,
/// for `ℓ + 1 < k`.
pub fn recurrence_identity_holds(k: u32, l: u32) -> Result<bool> {
    if k < l + 2 {
        return Err(Error::InvalidIndex {
            k: k.into(),
            l: l.into(),
            reason: "recurrence identity needs both orders above the degree (k > l + 1)",
        });
    }
    let lhs = imaginary_axis_derivative(l, k)?.derivative();
    let factor = (i64::from(l) + i64::from(k)) * (i64::from(l) - i64::from(k) + 1);
    let rhs = imaginary_axis_derivative(l, k - 1)?.scale(&Complex::new(rat(factor.into()), BigRational::zero()));
    Ok(lhs == rhs)
}

/// Exact numerator of the closed form
/// `Q^k_ℓ(ix) = i^σ N(x) / (1 + x²)^{k/2}` with integer `N` and `σ = (k−ℓ−1) mod 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FerrersNumerator {
    index: LegendreIndex,
    sigma: Parity,
    poly: IntegerPolynomial,
}

impl FerrersNumerator {
    pub fn index(&self) -> LegendreIndex {
        self.index
    }

    pub fn sigma(&self) -> Parity {
        self.sigma
    }

    pub fn poly(&self) -> &IntegerPolynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("Ferrers numerator is never zero")
    }
}

/// Builds `N_{kℓ}` from the Ferrers definition
/// `Q^k_ℓ(z) = (−1)^k (1 − z²)^{k/2} d^k Q_ℓ / dz^k`.
pub fn ferrers_numerator(index: LegendreIndex) -> Result<FerrersNumerator> {
    let (k, l) = (index.k(), index.l());
    let r = log_free_derivative(l, k)?;
    let degree = r.degree().ok_or_else(|| Error::Invariant(format!("vanishing derivative for k={k}, l={l}")))?;
    if degree != index.numerator_degree() as usize {
        return Err(Error::Invariant(format!(
            "numerator degree {degree} differs from k-l-1 = {} (k={k}, l={l})",
            index.numerator_degree()
        )));
    }
    let sigma = r
        .parity()
        .ok_or_else(|| Error::Invariant(format!("numerator mixes parities (k={k}, l={l})")))?;

    // R(ix) = i^σ Σ r_j (−1)^{(j−σ)/2} x^j, and the (−1)^k prefactor is real.
    let mut coeffs = Vec::with_capacity(degree + 1);
    for (j, c) in r.coeffs().iter().enumerate() {
        if c.is_zero() {
            coeffs.push(BigInt::zero());
            continue;
        }
        if !c.is_integer() {
            return Err(Error::Invariant(format!("non-integer coefficient {c} at power {j} (k={k}, l={l})")));
        }
        let flips = (j - sigma.bit() as usize) / 2 + k as usize;
        coeffs.push(c.to_integer() * sign(flips % 2 == 1));
    }
    Ok(FerrersNumerator { index, sigma, poly: IntegerPolynomial::new(coeffs) })
}

/// `A₀(ℓ) = (−1)^{ℓ+1} 2^ℓ ℓ!`.
pub fn a0_closed(l: u32) -> BigInt {
    sign(l.is_multiple_of(2)) * (BigInt::one() << l as usize) * factorial(l)
}

/// `S(ℓ) = Σ_{n=0}^{⌊ℓ/2⌋} (−1)^n (2ℓ−2n)! (2n)! / ((2n+1)! (ℓ−2n)! (ℓ−n)! n!)`, exactly.
pub fn a0_inner_sum(l: u32) -> BigRational {
    (0..=l / 2).fold(BigRational::zero(), |acc, n| {
        let num = sign(n % 2 == 1) * factorial(2 * l - 2 * n) * factorial(2 * n);
        let den = factorial(2 * n + 1) * factorial(l - 2 * n) * factorial(l - n) * factorial(n);
        acc + BigRational::new(num, den)
    })
}

/// `A₀(ℓ)` from the simplified Leibniz summation,
/// `((−1)^{ℓ+1} (ℓ+1)! / 2^ℓ) S(ℓ)`.
pub fn a0_sum(l: u32) -> BigRational {
    let prefactor = BigRational::new(sign(l.is_multiple_of(2)) * factorial(l + 1), BigInt::one() << l as usize);
    prefactor * a0_inner_sum(l)
}

/// `true` if every coefficient is an integer.
pub fn is_integral(p: &RationalPolynomial) -> bool {
    p.coeffs().iter().all(|c| c.is_integer())
}

/// Largest absolute coefficient, useful for sizing float conversions.
pub fn max_abs_coefficient(p: &IntegerPolynomial) -> BigInt {
    p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}
