use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty input")]
    Empty,

    #[error("points and masses differ in length ({points} vs {masses})")]
    LengthMismatch { points: usize, masses: usize },

    #[error("non-finite support value {0}")]
    NonFinitePoint(f64),

    #[error("mass at index {index} is not strictly positive ({value})")]
    NonPositiveMass { index: usize, value: f64 },

    #[error("masses sum to {sum}, expected 1 within {tolerance}")]
    MassSum { sum: f64, tolerance: f64 },

    #[error("count for value {value} must be at least 1")]
    ZeroCount { value: f64 },

    #[error("count total overflows")]
    CountOverflow,

    #[error("{family}: {reason}")]
    ParameterOutOfDomain { family: &'static str, reason: String },

    #[error("tail budget must lie in (0, 1), got {0}")]
    InvalidTailBudget(f64),

    #[error("support of {size} points exceeds the cap of {cap}")]
    SupportTooLarge { size: usize, cap: usize },

    #[error("scale factor must be non-zero and finite")]
    ZeroScale,

    #[error("map is not strictly monotone on the support (between {left} and {right})")]
    NotStrictlyMonotone { left: f64, right: f64 },

    #[error("eps must be non-negative, got {0}")]
    NegativeEpsilon(f64),

    #[error("support does not lie on a lattice")]
    NotLattice,

    #[error("lattice steps {0} and {1} have no common refinement")]
    IncompatibleLattices(f64, f64),

    #[error("distribution needs at least two support points")]
    Degenerate,

    #[error("order r must satisfy r >= 1, got {0}")]
    InvalidOrder(f64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid family expression `{0}`")]
    BadFamilyExpr(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("unknown example id {0} (expected 1-4)")]
    UnknownExample(u32),

    #[error("censored row `>={0}` rejected by censor policy")]
    CensoredRejected(f64),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
