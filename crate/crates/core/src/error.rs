use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series is not a unit: constant term is zero")]
    NotAUnit,

    #[error("t-exponent {exponent} scaled by {ratio} is not a nonnegative integer")]
    FractionalExponent { exponent: usize, ratio: String },

    #[error("series has support outside integral q-exponents")]
    NotIntegralSeries,

    #[error("requested t-exponent {requested} exceeds truncation order {available}")]
    OrderExceeded { requested: usize, available: usize },

    #[error("invalid eta quotient: {0}")]
    InvalidSpec(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{what} = {value} exceeds the supported bound {bound}")]
    RangeExceeded {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no polynomial fit: coefficient of t^{t_exponent} is {expected}, fit gives {fitted}")]
    NoFit {
        t_exponent: usize,
        expected: String,
        fitted: String,
    },

    #[error("under-determined fit: {0}")]
    UnderDetermined(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("congruence suite needs odd ell, got {0}")]
    InvalidEll(u64),

    #[error("L-value vanishes for weight {weight} and character {character}")]
    ZeroLValue { weight: u32, character: String },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
