use thiserror::Error;

use crate::tx::ModulationFormat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid PRBS seed {seed:#x} for order {order}")]
    InvalidSeed { order: u32, seed: u64 },

    #[error("unknown modulation format `{0}` (expected one of nrz, rz, csrz, modb, mdrz)")]
    InvalidFormat(String),

    #[error("degenerate signal: {0}")]
    DegenerateSignal(&'static str),

    #[error("filter cutoff {cutoff_hz} Hz must be below Nyquist ({nyquist_hz} Hz)")]
    InvalidCutoff { cutoff_hz: f64, nyquist_hz: f64 },

    #[error("insufficient eye data: {marks} marks and {spaces} spaces (need at least 4 of each)")]
    InsufficientData { marks: usize, spaces: usize },

    #[error("nothing to emit: result list is empty")]
    EmptyOutput,

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("run failed for {format} at {value}: {source}")]
    Run {
        format: ModulationFormat,
        value: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    /// True for errors caused by bad user input rather than a failed run.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::InvalidArgument(_)
                | Error::InvalidFormat(_)
                | Error::InvalidSeed { .. }
                | Error::InvalidCutoff { .. }
                | Error::InvalidSeries(_)
        )
    }
}
