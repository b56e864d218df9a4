//! Exact graded exterior algebra over `n` frame generators.

mod form;
mod poly;
mod scalar;
mod vector;

pub use form::{Blade, Parity, Polyform, MAX_DIM};
pub use poly::{Monomial, Poly};
pub use scalar::Scalar;
pub use vector::Vector;
