use std::fmt;

/// Errors surfaced by the exact-arithmetic pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation required a nonzero form.
    ZeroForm,
    /// Power sums of degree zero are not defined.
    DegreeZero,
    /// A linear form must have a nonzero coefficient pair.
    ZeroLinearForm,
    /// A projective point must have a nonzero coordinate pair.
    ZeroPoint,
    /// Coefficient vector length does not match `degree + 1`.
    CoefficientCount { degree: usize, got: usize },
    /// A graded degree was outside its allowed range.
    DegreeOutOfRange { k: usize, max: usize },
    /// Two forms were expected to share a degree.
    DegreeMismatch { expected: usize, got: usize },
    /// Matrix entry vector length does not match `rows * cols`.
    EntryCount { rows: usize, cols: usize, got: usize },
    /// Vector length does not match the ambient dimension.
    AmbientMismatch { expected: usize, got: usize },
    /// An operation received an empty input list.
    EmptyInput,
    /// Right-hand side length does not match the row count.
    RhsLength { expected: usize, got: usize },
    /// Supplied vectors were not linearly independent.
    DependentVectors,
    /// The input forms are linearly dependent; the problem reduces to fewer
    /// independent forms, which the caller must do explicitly.
    DependentForms,
    /// The witness search requires a nonzero subspace.
    ZeroSubspace,
    /// Root extraction requires a squarefree form.
    NotSquarefree,
    /// More interpolation points than the degree supports.
    TooManyPoints { count: usize, max: usize },
    /// An exact linear system that must be consistent by construction was not;
    /// this indicates an internal logic error upstream.
    InconsistentSystem,
    /// The numeric root iteration did not converge within its caps.
    NonConvergence { iterations: u32 },
    /// Recovered roots collided under normalization.
    DuplicateRoots,
    /// A curve needs exactly `d - n` spanning forms for its projection center.
    WrongCenterCount { expected: usize, got: usize },
    /// The projection center contains a pure d-th power, so the projection is
    /// not defined on the whole rational normal curve.
    CenterMeetsCurve,
    /// Curve parameters must satisfy `d > n >= 1`.
    InvalidCurveParams { d: usize, n: usize },
    /// Secant plane dimension out of range (`a` must be in `0..n`).
    SecantIndexOutOfRange { a: usize, n: usize },
    /// Only the extremal multisecant case `b - a = d - n + 1` is computable
    /// through the apolar identification.
    NotExtremal { a: usize, b: usize, expected_gap: usize },
    /// Number of forms out of range (`1 <= r <= d + 1`).
    RankOutOfRange { r: usize, max: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroForm => write!(f, "operation requires a nonzero form"),
            Error::DegreeZero => write!(f, "degree must be at least 1"),
            Error::ZeroLinearForm => write!(f, "linear form coefficients must not both be zero"),
            Error::ZeroPoint => write!(f, "projective point coordinates must not both be zero"),
            Error::CoefficientCount { degree, got } => write!(
                f,
                "a degree-{degree} form needs {} coefficients, got {got}",
                degree + 1
            ),
            Error::DegreeOutOfRange { k, max } => {
                write!(f, "degree {k} out of range (maximum {max})")
            }
            Error::DegreeMismatch { expected, got } => {
                write!(f, "expected a form of degree {expected}, got degree {got}")
            }
            Error::EntryCount { rows, cols, got } => write!(
                f,
                "a {rows}x{cols} matrix needs {} entries, got {got}",
                rows * cols
            ),
            Error::AmbientMismatch { expected, got } => {
                write!(f, "vector length {got} does not match ambient dimension {expected}")
            }
            Error::EmptyInput => write!(f, "input list must not be empty"),
            Error::RhsLength { expected, got } => {
                write!(f, "right-hand side has length {got}, expected {expected}")
            }
            Error::DependentVectors => write!(f, "vectors are linearly dependent"),
            Error::DependentForms => write!(
                f,
                "forms are linearly dependent; reduce to an independent subset first"
            ),
            Error::ZeroSubspace => write!(f, "subspace is zero"),
            Error::NotSquarefree => write!(f, "form has a repeated root"),
            Error::TooManyPoints { count, max } => {
                write!(f, "{count} points exceed the maximum of {max} for this degree")
            }
            Error::InconsistentSystem => {
                write!(f, "exact coefficient system is inconsistent (internal logic error)")
            }
            Error::NonConvergence { iterations } => {
                write!(f, "root iteration failed to converge within {iterations} iterations")
            }
            Error::DuplicateRoots => write!(f, "recovered roots are not pairwise distinct"),
            Error::WrongCenterCount { expected, got } => {
                write!(f, "projection center needs {expected} forms, got {got}")
            }
            Error::CenterMeetsCurve => {
                write!(f, "projection center contains a pure power of a linear form")
            }
            Error::InvalidCurveParams { d, n } => {
                write!(f, "curve parameters must satisfy d > n >= 1, got d = {d}, n = {n}")
            }
            Error::SecantIndexOutOfRange { a, n } => {
                write!(f, "secant plane dimension a = {a} out of range for target space P^{n}")
            }
            Error::NotExtremal { a, b, expected_gap } => write!(
                f,
                "only the extremal case b - a = {expected_gap} is computable, got a = {a}, b = {b}"
            ),
            Error::RankOutOfRange { r, max } => {
                write!(f, "number of forms {r} out of range (1..={max})")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
