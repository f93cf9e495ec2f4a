use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the toolkit can report.
///
/// Two variants are analytic negatives rather than failures:
/// [`Error::NoRepeat`] and [`Error::NotApplicable`]. Callers that need to
/// separate "the method does not apply" from "something went wrong" should
/// use [`Error::is_analytic_negative`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("morphism is not prolongable: {0}")]
    NotProlongable(String),
    #[error("morphic image is finite: {0}")]
    FiniteImage(String),
    #[error("window of length {len} is too short for factors of length {n}")]
    WindowTooShort { n: usize, len: usize },
    #[error("no repeated factor of length {n} in a prefix of length {len}")]
    NoRepeat { n: usize, len: usize },
    #[error("extraction invariant violated: {0}")]
    ExtractionBug(String),
    #[error("method does not apply: {0}")]
    NotApplicable(String),
    #[error("floor of digit {digit} stays ambiguous at {bits} bits of precision")]
    AmbiguousFloor { digit: usize, bits: u32 },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("need {needed} digits, got {got}")]
    InsufficientDigits { needed: usize, got: usize },
    #[error("linear form enclosure still contains zero after {digits} digits")]
    NeedMoreDigits { digits: usize },
}

impl Error {
    /// Stable variant name, used in reports and CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidWord(_) => "InvalidWord",
            Error::InvalidExponent(_) => "InvalidExponent",
            Error::InvalidAlphabet(_) => "InvalidAlphabet",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse { .. } => "ParseError",
            Error::NotProlongable(_) => "NotProlongable",
            Error::FiniteImage(_) => "FiniteImage",
            Error::WindowTooShort { .. } => "WindowTooShort",
            Error::NoRepeat { .. } => "NoRepeat",
            Error::ExtractionBug(_) => "ExtractionBug",
            Error::NotApplicable(_) => "NotApplicable",
            Error::AmbiguousFloor { .. } => "AmbiguousFloor",
            Error::OutOfRange(_) => "OutOfRange",
            Error::Undecided(_) => "Undecided",
            Error::Reducible(_) => "Reducible",
            Error::InsufficientDigits { .. } => "InsufficientDigits",
            Error::NeedMoreDigits { .. } => "NeedMoreDigits",
        }
    }

    pub fn is_analytic_negative(&self) -> bool {
        matches!(self, Error::NoRepeat { .. } | Error::NotApplicable(_))
    }
}
