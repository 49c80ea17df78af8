//! Exact polynomial arithmetic.

pub mod bivariate;
pub mod parse;
pub mod rat;
pub mod univariate;

pub use bivariate::{BivariatePoly, Exp, FloatPoly, Var};
pub use parse::{parse_poly, parse_poly_float};
pub use rat::Rat;
pub use univariate::{Bound, UnivariatePoly};
