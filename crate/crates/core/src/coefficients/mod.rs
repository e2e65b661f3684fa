//! Coefficient rings: exact scalars and trigonometric polynomials on Tⁿ.

mod scalar;
mod trig;

pub use scalar::{pi_rational, ExactScalar, Gaussian};
pub use trig::{Mode, TrigPoly, ZERO_MODE};
