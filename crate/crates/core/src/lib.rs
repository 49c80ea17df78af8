//! Invariants, case analysis and boundedness regions for averages over
//! mixed homogeneous polynomial surfaces in R³, with numerical checks.
//!
//! ```
//! use lpimprove::{classifier::classify, poly::parse_poly};
//!
//! let c = classify(&parse_poly("y2^4 + y1^12").unwrap());
//! assert_eq!(c.case.tag(), "C");
//! assert_eq!(c.t, 10);
//! ```

pub mod algebra_checks;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod factorization;
pub mod mixhom;
pub mod numerics;
pub mod oscillation_lab;
pub mod poly;
pub mod region;
pub mod scaling_lab;

pub use error::{Error, Result};
