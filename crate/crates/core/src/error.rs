use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter {name} = {value} is outside the open interval (0, 1)")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("tau1 + tau2 = {sum} must be strictly below 1")]
    TauSumTooLarge { sum: f64 },

    #[error("point ({y}, {z}) is not in the image of branch {branch}")]
    NotInBranchImage { branch: u8, y: f64, z: f64 },

    #[error("the derivative is undefined on the singular plane x = 0")]
    OnSingularity,

    #[error("shifted window [{lo}, {hi}] no longer covers index 0")]
    WindowExhausted { lo: i64, hi: i64 },

    #[error("invalid symbol window: {0}")]
    InvalidWindow(String),

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("cylinder depth {0} exceeds the limit of 24")]
    DepthTooLarge(u32),

    #[error("beta1 + beta2 = {sum} < 1; the beta-tau Moran equation has no nonnegative root")]
    WrongRegime { sum: f64 },

    #[error("beta1 + beta2 = {beta_sum} must exceed tau1 + tau2 = {tau_sum}")]
    HypothesisViolated { beta_sum: f64, tau_sum: f64 },

    #[error("scaling fit needs at least 3 scales, got {0}")]
    DegenerateRange(usize),

    #[error("every query point had an empty ball at the smallest scale ({dropped} dropped)")]
    AllQueriesDegenerate { dropped: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Short stable identifier, used for error columns in sweep output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::OutOfRange { .. } => "OutOfRange",
            Error::TauSumTooLarge { .. } => "TauSumTooLarge",
            Error::NotInBranchImage { .. } => "NotInBranchImage",
            Error::OnSingularity => "OnSingularity",
            Error::WindowExhausted { .. } => "WindowExhausted",
            Error::InvalidWindow(_) => "InvalidWindow",
            Error::InvalidProbability(_) => "InvalidProbability",
            Error::DepthTooLarge(_) => "DepthTooLarge",
            Error::WrongRegime { .. } => "WrongRegime",
            Error::HypothesisViolated { .. } => "HypothesisViolated",
            Error::DegenerateRange(_) => "DegenerateRange",
            Error::AllQueriesDegenerate { .. } => "AllQueriesDegenerate",
            Error::EmptyInput(_) => "EmptyInput",
        }
    }
}
