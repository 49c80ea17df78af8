#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/factorization.md")]
pub mod factorization {}

#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}

#[doc = include_str!("../../../book/src/regions.md")]
pub mod regions {}

#[doc = include_str!("../../../book/src/scaling.md")]
pub mod scaling {}

#[doc = include_str!("../../../book/src/dyadic.md")]
pub mod dyadic {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
