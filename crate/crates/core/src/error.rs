use thiserror::Error;

/// Errors raised by every module of the crate.
///
/// Variant names match the failure kinds the CLI surfaces to users.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("SignatureMismatch: r1 + 2*r2 = {got} but degree = {degree}")]
    SignatureMismatch { degree: u32, got: u32 },
    #[error("NegativeDiscriminant: log_disc = {0}")]
    NegativeDiscriminant(f64),
    #[error("DiscriminantMismatch: {0}")]
    DiscriminantMismatch(String),
    #[error("DomainError: {0}")]
    Domain(String),
    #[error("PoleError: {0}")]
    Pole(String),
    #[error("PrecisionError: {0}")]
    Precision(String),
    #[error("RangeError: {0}")]
    Range(String),
    #[error("NoSolution: {0}")]
    NoSolution(String),
    #[error("MultipleSolutions: {0}")]
    MultipleSolutions(String),
    #[error("DegenerateDenominator: {0}")]
    DegenerateDenominator(String),
    #[error("MalformedMeasure: {0}")]
    MalformedMeasure(String),
    #[error("UnsupportedField: {0}")]
    UnsupportedField(String),
    #[error("InsufficientTable: {0}")]
    InsufficientTable(String),
    #[error("ParseError at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("OrderError at line {line}: {msg}")]
    Order { line: usize, msg: String },
    #[error("MetaError: {0}")]
    Meta(String),
    #[error("CoverageError: {0}")]
    Coverage(String),
    #[error("IoError: {0}")]
    Io(String),
}

impl Error {
    /// Name of the failure kind, e.g. `DomainError`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SignatureMismatch { .. } => "SignatureMismatch",
            Error::NegativeDiscriminant(_) => "NegativeDiscriminant",
            Error::DiscriminantMismatch(_) => "DiscriminantMismatch",
            Error::Domain(_) => "DomainError",
            Error::Pole(_) => "PoleError",
            Error::Precision(_) => "PrecisionError",
            Error::Range(_) => "RangeError",
            Error::NoSolution(_) => "NoSolution",
            Error::MultipleSolutions(_) => "MultipleSolutions",
            Error::DegenerateDenominator(_) => "DegenerateDenominator",
            Error::MalformedMeasure(_) => "MalformedMeasure",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::InsufficientTable(_) => "InsufficientTable",
            Error::Parse { .. } => "ParseError",
            Error::Order { .. } => "OrderError",
            Error::Meta(_) => "MetaError",
            Error::Coverage(_) => "CoverageError",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
