use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("branch point {0} appears more than once")]
    DuplicateBranchPoint(String),
    #[error("first branch point must be 0, got {0}")]
    FirstBranchPointNotZero(String),
    #[error("need at least 8 branch points (genus >= 3), got {0}")]
    TooFewBranchPoints(usize),
    #[error("number of branch points must be even, got {0}")]
    OddBranchPointCount(usize),
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("coefficient z^{index} requested but series is only known below z^{order}")]
    BeyondTruncation { index: usize, order: usize },
    #[error("valuation undetermined: all coefficients below z^{order} vanish")]
    UndeterminedValuation { order: usize },
    #[error("series is not divisible by z^{0}")]
    NotDivisible(usize),
    #[error("series has no multiplicative inverse (constant term zero or unknown)")]
    NotInvertible,
    #[error("quadric is not in the kernel of mu_{0}")]
    NotInPreviousKernel(usize),
    #[error("quadric is not in the kernel of mu_{0}")]
    NotInKernel(usize),
    #[error("pair ({n},{r}) exceeds the licensed range: vanishing threshold is {threshold}")]
    BeyondThreshold { n: usize, r: usize, threshold: usize },
    #[error("basis element {index} of A_{{{k},0}} has threshold {threshold}, expected at least {expected}")]
    ThresholdNotExtended {
        k: usize,
        index: usize,
        threshold: usize,
        expected: usize,
    },
    #[error("no witness in A_{{{k},0}} \\ A_{{{k},0,0}}")]
    NoWitnessFound { k: usize },
    #[error("genus mismatch: expected {expected}, got {got}")]
    GenusMismatch { expected: usize, got: usize },
    #[error("level k = {k} out of range for genus {g}")]
    InvalidLevel { g: usize, k: usize },
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DuplicateBranchPoint(_) => "DuplicateBranchPoint",
            Error::FirstBranchPointNotZero(_) => "FirstBranchPointNotZero",
            Error::TooFewBranchPoints(_) => "TooFewBranchPoints",
            Error::OddBranchPointCount(_) => "OddBranchPointCount",
            Error::MalformedRational(_) => "MalformedRational",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::InvalidIndex(_) => "InvalidIndex",
            Error::BeyondTruncation { .. } => "BeyondTruncation",
            Error::UndeterminedValuation { .. } => "UndeterminedValuation",
            Error::NotDivisible(_) => "NotDivisible",
            Error::NotInvertible => "NotInvertible",
            Error::NotInPreviousKernel(_) => "NotInPreviousKernel",
            Error::NotInKernel(_) => "NotInKernel",
            Error::BeyondThreshold { .. } => "BeyondThreshold",
            Error::ThresholdNotExtended { .. } => "ThresholdNotExtended",
            Error::NoWitnessFound { .. } => "NoWitnessFound",
            Error::GenusMismatch { .. } => "GenusMismatch",
            Error::InvalidLevel { .. } => "InvalidLevel",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
