use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("zero polynomial has no content")]
    ZeroPolynomial,
    #[error("cannot evaluate a pi^{0} factor in exact mode")]
    PiInExactMode(u32),
    #[error("pi powers differ ({0} vs {1})")]
    PiPowerMismatch(u32, u32),

    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("undeclared identifier `{name}` at line {line}, column {col}")]
    UndeclaredIdentifier { name: String, line: usize, col: usize },
    #[error("duplicate definition of `{name}` at line {line}")]
    DuplicateDefinition { name: String, line: usize },
    #[error("bad coefficient index ({0}, {1})")]
    BadIndex(u32, u32),

    #[error("unperturbed part is not the linear center: {0}")]
    NotPerturbationOfLinearCenter(String),
    #[error("term of degree >= 2 in the perturbation parameters: {0}")]
    NonlinearInEps(String),

    #[error("linear trace at the origin is not zero: lambda = {0}")]
    NonzeroLinearTrace(String),
    #[error("linear part at the origin is not (-y, x): {0}")]
    WrongLinearPart(String),
    #[error("linearization at the origin is not of center-focus type: {0}")]
    NotCenterFocus(String),
    #[error("bindings of step {step} do not annihilate L({k}); remainder {remainder}")]
    SubstitutionDoesNotVanish { step: usize, k: usize, remainder: String },
    #[error("invalid focal order {0}")]
    InvalidOrder(usize),

    #[error("half-integer power of h survived integration")]
    HalfPowerResidue,
    #[error("Melnikov function has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("first-order Melnikov function does not vanish: M1 = {0}")]
    FirstOrderNotZero(String),
    #[error("no polynomial decomposition up to ansatz degree {0}")]
    DecompositionNotFound(usize),
    #[error("unsupported pole order {0} in y")]
    UnsupportedPoleOrder(u32),

    #[error("curve is the zero polynomial")]
    ZeroCurve,
    #[error("curve admits neither univariate nor graded division: {0}")]
    NonMonicUndividable(String),

    #[error("tolerance {0:e} outside [1e-13, 1e-3]")]
    InvalidTolerance(f64),
    #[error("step size underflow at t = {0}")]
    StepSizeUnderflow(f64),
    #[error("solution blew up at t = {0}")]
    Blowup(f64),
    #[error("orbit from x0 = {0} did not return to the section")]
    NoReturn(f64),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("quadrature did not converge (error estimate {0:e})")]
    QuadratureNonConvergence(f64),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Input problems (malformed files, unknown or unbound names) as opposed
    /// to failures of a mathematical precondition.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::UnknownSymbol(_)
                | Error::UnboundSymbol(_)
                | Error::Syntax { .. }
                | Error::UndeclaredIdentifier { .. }
                | Error::DuplicateDefinition { .. }
                | Error::BadIndex(..)
                | Error::InvalidTolerance(_)
                | Error::InvalidOrder(_)
                | Error::InvalidRange(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
