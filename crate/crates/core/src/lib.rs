//! Associated Legendre functions of the second kind on the imaginary axis.
//!
//! For integer order `k` and degree `ℓ` with `k > ℓ ≥ 0`, the Ferrers function
//! `Q^k_ℓ(ix)` is a rational function of `x` times `(1 + x²)^{-k/2}`. This
//! crate builds that closed form exactly ([`exactpoly`]), evaluates it and its
//! relatives in floating point ([`eval`], [`hypergeom`]), and checks the
//! orthogonality and normalization of the family on the real line by
//! quadrature ([`quadrature`], [`verify`]).
//!
//! The numerical layers are generic over [`Real`] (`f32` or `f64`); the
//! `*64` aliases below fix the scalar to `f64`.

// `!(x > a)` guards are meant to reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod eval;
pub mod exactpoly;
pub mod hypergeom;
pub mod quadrature;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use exactpoly::{FerrersNumerator, LegendreIndex, Parity, RationalPolynomial};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type FerrersEvaluator64 = eval::FerrersEvaluator<f64>;
pub type SeriesOutcome64 = hypergeom::SeriesOutcome<f64>;
pub type QuadratureResult64 = quadrature::QuadratureResult<f64>;
pub type GramReport64 = quadrature::GramReport<f64>;
