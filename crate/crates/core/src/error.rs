use thiserror::Error;

use crate::quaternion::Quaternion;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalcError {
    /// The point has no usable imaginary direction.
    #[error("point has (numerically) zero imaginary part: r = {r:e}")]
    PureRealInput { r: f64 },

    /// An su(2) element with no non-scalar part.
    #[error("su(2) element has (numerically) zero non-scalar part: r = {r:e}")]
    PureScalarInput { r: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    /// The operation only makes sense for real-coefficient functions.
    #[error("function `{0}` has non-real coefficients")]
    NotRealCoefficient(String),

    #[error("antiderivative mismatch at t = {t}: h'(t) = {derivative}, f(t) = {integrand}")]
    AntiderivativeMismatch {
        t: f64,
        derivative: Quaternion,
        integrand: Quaternion,
    },

    #[error("all residuals below {floor:e}: expansion is exact, slope undefined")]
    DegenerateResidual { floor: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CalcError>;
