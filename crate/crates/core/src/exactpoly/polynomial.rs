//! Dense univariate polynomials over an exact coefficient ring.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

/// Coefficient ring for [`Polynomial`]. Blanket-implemented for any type with
/// exact ring arithmetic, e.g. `BigInt`, `BigRational`, `Complex<BigRational>`.
pub trait Coefficient:
    Clone
    + PartialEq
    + Zero
    + One
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<C> Coefficient for C where
    C: Clone
        + PartialEq
        + Zero
        + One
        + FromPrimitive
        + Add<Output = C>
        + Sub<Output = C>
        + Mul<Output = C>
        + Neg<Output = C>
{
}

/// Parity class of a polynomial whose nonzero coefficients all sit on even
/// or all on odd powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// Dense polynomial `c[0] + c[1] z + ... + c[n] z^n`.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector and `degree()` is always exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c z^power`
    pub fn monomial(c: C, power: usize) -> Self {
        let mut coeffs = vec![C::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    /// The identity polynomial `z`.
    pub fn identity() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `z^power`; zero beyond the degree.
    pub fn coeff(&self, power: usize) -> C {
        self.coeffs.get(power).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(p, a)| a.clone() * C::from_usize(p).expect("power fits coefficient"))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut out = self.clone();
        for _ in 0..n {
            if out.is_zero() {
                break;
            }
            out = out.derivative();
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, a| acc * z.clone() + a.clone())
    }

    /// Returns the common parity of all nonzero terms, or `None` if the
    /// polynomial mixes even and odd powers. The zero polynomial is `Even`.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (p, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let here = Parity::of(p);
            match found {
                None => found = Some(here),
                Some(prev) if prev != here => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    pub fn map<D: Coefficient>(&self, f: impl FnMut(&C) -> D) -> Polynomial<D> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Coefficient> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: Self) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|p| self.coeff(p) + rhs.coeff(p)).collect())
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: Self) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|p| self.coeff(p) - rhs.coeff(p)).collect())
    }
}

impl<C: Coefficient> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: Self) -> Polynomial<C> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        Polynomial::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<C: Coefficient> $tr for Polynomial<C> {
            type Output = Polynomial<C>;

            fn $method(self, rhs: Self) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        -&self
    }
}
