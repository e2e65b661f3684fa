use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported inverse: {0}")]
    UnsupportedInverse(String),
    #[error("terms mix homogeneity degrees {0} and {1}")]
    MixedDegrees(i32, i32),
    #[error("unsupported dimension n = {0}: {1}")]
    UnsupportedDimension(usize, &'static str),
    #[error("component has nonzero sphere mean")]
    NonzeroMean,
    #[error("leading component is not a unit monomial times |xi|^a: {0}")]
    UnsupportedLeading(String),
    #[error("insufficient depth: degree {needed} required but floor is {floor}")]
    InsufficientDepth { needed: i32, floor: i32 },
    #[error("symbol is not odd-class (degree {0} violates parity)")]
    NotOddClass(i32),
    #[error("unsupported order {0}: group operations need order <= -1")]
    UnsupportedOrder(i32),
    #[error("order mismatch: functional order {functional}, symbol order {symbol}")]
    OrderMismatch { functional: i32, symbol: i32 },
    #[error("path does not start at the identity (A_0 != 0)")]
    PathStart,
    #[error("point outside the region |xi| >= 1")]
    OutOfRegion,
    #[error("ill-conditioned fit: condition number {0:.3e}")]
    IllConditioned(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
