//! Closed-form objects of the shape `[A(z) + B(z) ln((1+z)/(1-z))] / (1-z²)^n`.
//!
//! This class is closed under d/dz, which makes it an exact, step-by-step
//! differentiator for `Q_ℓ` and its derivatives, independent of the Leibniz
//! expansion used by [`super::log_free_derivative`].

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{RationalPolynomial, legendre_p, log_companion};

#[derive(Debug, Clone, PartialEq)]
pub struct LogRationalForm {
    /// `A(z)`
    pub rational: RationalPolynomial,
    /// `B(z)`, the coefficient of the logarithm.
    pub log_coeff: RationalPolynomial,
    /// Power `n` of `(1 - z²)` in the denominator.
    pub denom_power: u32,
}

fn one_minus_z2() -> RationalPolynomial {
    RationalPolynomial::new(vec![
        BigRational::one(),
        BigRational::zero(),
        -BigRational::one(),
    ])
}

/// `p' (1 - z²) + 2 n z p`: numerator of d/dz[p / (1-z²)^n] over (1-z²)^(n+1).
fn lift(p: &RationalPolynomial, n: u32) -> RationalPolynomial {
    let two_n_z = RationalPolynomial::monomial(BigRational::from_integer((2 * n).into()), 1);
    &(&p.derivative() * &one_minus_z2()) + &(&two_n_z * p)
}

impl LogRationalForm {
    /// `Q_ℓ(z) = ½ P_ℓ(z) ln((1+z)/(1-z)) − W_ℓ(z)`.
    pub fn q_scalar(l: u32) -> Self {
        let half = BigRational::new(1.into(), 2.into());
        Self {
            rational: -log_companion(l),
            log_coeff: legendre_p(l).scale(&half),
            denom_power: 0,
        }
    }

    pub fn derivative(&self) -> Self {
        let n = self.denom_power;
        let two = BigRational::from_integer(2.into());
        Self {
            rational: &lift(&self.rational, n) + &self.log_coeff.scale(&two),
            log_coeff: lift(&self.log_coeff, n),
            denom_power: n + 1,
        }
    }

    pub fn nth_derivative(&self, count: u32) -> Self {
        (0..count).fold(self.clone(), |acc, _| acc.derivative())
    }

    pub fn has_log(&self) -> bool {
        !self.log_coeff.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn derivative_of_q0() {
        // Q_0 = ½ L, Q_0' = 1 / (1 - z²)
        let d = LogRationalForm::q_scalar(0).derivative();
        assert!(!d.has_log());
        assert_eq!(d.denom_power, 1);
        assert_eq!(d.rational, RationalPolynomial::constant(r(1)));
    }

    #[test]
    fn log_term_survives_up_to_degree() {
        let q = LogRationalForm::q_scalar(3);
        assert!(q.nth_derivative(3).has_log());
        assert!(!q.nth_derivative(4).has_log());
    }
}
