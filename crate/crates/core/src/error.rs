use thiserror::Error;

/// Errors raised by the evaluators.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("precision must be at least 64 working bits and 8 guard bits (got {working} / {guard})")]
    InvalidPrecision { working: u32, guard: u32 },

    #[error("gamma has a pole at the nonpositive integer {0}")]
    PoleAtNonpositiveInteger(i64),

    #[error("no convergence after {iterations} iterations in {what}")]
    ConvergenceFailure { what: &'static str, iterations: usize },

    #[error("Tate gamma factor has a {kind} at s = {at}")]
    PoleOrZero { kind: PoleOrZeroKind, at: String },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("pole encountered in {0}")]
    PoleEncountered(String),

    #[error("decay envelope cannot reach the requested tolerance: {0}")]
    DecayEnvelopeInsufficient(String),

    #[error("quadrature did not converge: {0}")]
    QuadratureNonconvergent(String),

    #[error("integer s = {0} is not allowed here")]
    IntegerSRejected(i64),

    #[error("boundary case {case} is not valid at s = {s}")]
    CaseOutOfRange { case: String, s: String },

    #[error("root isolation failed: {0}")]
    RootIsolationFailure(String),

    #[error("test function rejected at registration: {0}")]
    Registration(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleOrZeroKind {
    Pole,
    Zero,
}

impl std::fmt::Display for PoleOrZeroKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PoleOrZeroKind::Pole => f.write_str("pole"),
            PoleOrZeroKind::Zero => f.write_str("zero"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
