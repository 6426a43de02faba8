use thiserror::Error;

/// Every failure the engine can report.
///
/// Each variant has a stable machine-readable name returned by [`Error::code`],
/// which the command line front end puts into its JSON output.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "exp({arg}) needs a root of unity outside the supported set (only exp(i*pi*s) with 2s integer is reduced)"
    )]
    UnsupportedRootOfUnity { arg: String },
    #[error("{what} is not invertible (only single-term constants can be inverted)")]
    NotInvertible { what: String },
    #[error("{what} is not a perfect square in the constant domain")]
    NotAPerfectSquare { what: String },
    #[error("exponent {what} is not a polynomial in pi and the declared parameters")]
    NonPolynomialExponent { what: String },
    #[error("the zero function has no growth order")]
    ZeroFunction,
    #[error("coefficients make f0 vanish identically, so L(z,f) would vanish as well")]
    DegenerateL,
    #[error("instance is outside the closed-form solver's scope: {reason}")]
    OutOfTheoremScope { reason: String },
    #[error("parameter `{name}` has no numeric binding")]
    UnboundParameter { name: String },
    #[error("contour |z| = {radius} passes too close to a zero of f")]
    ContourTooCloseToZero { radius: f64 },
    #[error("winding number on |z| = {radius} did not settle on an integer (last value {value})")]
    NonIntegerWinding { radius: f64, value: f64 },
    #[error("growth estimate needs at least {needed} radii, got {got}")]
    TooFewRadii { needed: usize, got: usize },
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError { line: usize, column: usize, message: String },
    #[error("parameter `{name}` is used but not declared")]
    UndeclaredParameter { name: String },
    #[error("exponent `{text}` is not an integer literal")]
    NonIntegerExponent { text: String },
    #[error("{what}")]
    InvalidInput { what: String },
    #[error("division by {what}, which is not a nonzero single-term constant")]
    NonConstantDivisor { what: String },
    #[error("input does not have the form f^n + L(z,f) = q(z)exp(p(z)): {reason}")]
    NotOfEquationForm { reason: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnsupportedRootOfUnity { .. } => "UnsupportedRootOfUnity",
            Error::NotInvertible { .. } => "NotInvertible",
            Error::NotAPerfectSquare { .. } => "NotAPerfectSquare",
            Error::NonPolynomialExponent { .. } => "NonPolynomialExponent",
            Error::ZeroFunction => "ZeroFunction",
            Error::DegenerateL => "DegenerateL",
            Error::OutOfTheoremScope { .. } => "OutOfTheoremScope",
            Error::UnboundParameter { .. } => "UnboundParameter",
            Error::ContourTooCloseToZero { .. } => "ContourTooCloseToZero",
            Error::NonIntegerWinding { .. } => "NonIntegerWinding",
            Error::TooFewRadii { .. } => "TooFewRadii",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::UndeclaredParameter { .. } => "UndeclaredParameter",
            Error::NonIntegerExponent { .. } => "NonIntegerExponent",
            Error::InvalidInput { .. } => "InvalidInput",
            Error::NonConstantDivisor { .. } => "NonConstantDivisor",
            Error::NotOfEquationForm { .. } => "NotOfEquationForm",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
