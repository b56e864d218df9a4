pub mod error;
pub mod courant;
pub mod exterior;
pub mod frame;
pub mod gallery;
pub mod io;
pub mod linalg;
pub mod notation;
pub mod oracle;
pub mod random;
pub mod report;
pub mod solve;
pub mod spinor;
pub mod structures;

pub use error::{Error, Result};
pub use exterior::{Blade, Monomial, Parity, Poly, Polyform, Scalar, Vector};
pub use frame::{parse_nil, FrameAlgebra, Mode};
pub use report::{Check, Report, Status};
