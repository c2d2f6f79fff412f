use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: operands live in different polynomial rings")]
    RingMismatch,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("computation exceeded its deadline")]
    Timeout,
    #[error("wrong monomial order: {0}")]
    WrongOrder(String),
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionLimit { dim: usize, max: usize },
    #[error("ideal is not squarefree monomial")]
    NotSquarefree,
    #[error("not a monomial ideal: {0}")]
    NotMonomial(String),
    #[error("witness lies in the ideal")]
    WitnessInIdeal,
    #[error("ideal was not asserted prime")]
    PrimalityNotAsserted,
    #[error("symbolic power is only a lower bound; pass the override to use it")]
    InexactSymbolicPower,
    #[error("element is not integral over the ideal: {0}")]
    NotIntegral(String),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("graded-sequence axiom violated: a_{s} * a_{t} is not contained in a_{sum}", sum = s + t)]
    AxiomViolation { s: u32, t: u32 },
    #[error("no stabilization at level {n} for l <= {max_l}")]
    NoStabilization { n: u32, max_l: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("no ring declared")]
    NoRing,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unbound name `{0}`")]
    UnboundName(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for this error: 2 for usage and parse problems,
    /// 3 for resource exhaustion, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit(_) | Error::Timeout | Error::DimensionLimit { .. } => 3,
            Error::Parse { .. }
            | Error::NoRing
            | Error::UnknownVariable(_)
            | Error::UnboundName(_)
            | Error::Type(_)
            | Error::InvalidArgument(_)
            | Error::InvalidRing(_)
            | Error::Io(_) => 2,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
