//! Exact Weil heights, p-adic local statistics and explicit height lower
//! bounds for algebraic numbers given by integer minimal polynomials.

pub mod bounds;
pub mod error;
pub mod ff;
pub mod heights;
pub mod padic;
pub mod poly;

pub use error::{Error, Result};
pub use poly::IntPoly;
