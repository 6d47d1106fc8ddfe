use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ppm: {message} at byte {offset}")]
    Ppm { offset: usize, message: String },

    #[error("image has no pixels")]
    EmptyImage,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("label {label} does not fit in {bits} bits")]
    LabelOutOfRange { label: u32, bits: u32 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid schedule: {0}")]
    Schedule(String),

    #[error("generation {g} outside schedule horizon {horizon}")]
    GenerationOutOfRange { g: usize, horizon: usize },

    #[error("neoteny archive is empty at generation {0}")]
    EmptyArchive(usize),

    #[error("oracle instance too large: {0} assignments (limit 10^7)")]
    InstanceTooLarge(u128),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("aggregate: {0}")]
    Aggregate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn ppm(offset: usize, message: impl Into<String>) -> Self {
        Error::Ppm {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn config(line: usize, message: impl Into<String>) -> Self {
        Error::Config {
            line,
            message: message.into(),
        }
    }
}
