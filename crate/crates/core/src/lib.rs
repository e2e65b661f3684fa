//! Symbol calculus for odd-class classical pseudodifferential operators on the
//! flat torus, with exact coefficients.

pub mod coefficients;
pub mod decomposition;
pub mod error;
pub mod functionals;
pub mod gen;
pub mod group;
pub mod homogeneous;
pub mod io;
pub mod oracle;
pub mod suites;
pub mod symbol;

pub use coefficients::{ExactScalar, Gaussian, Mode, TrigPoly};
pub use error::{Error, Result};
pub use homogeneous::{Beta, HarmonicPoly, HomogeneousComponent, RawTerm};
pub use symbol::{FormalSymbol, GroupElement};
