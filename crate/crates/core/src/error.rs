use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("zero temperature is unreachable from a finite occupation (n_th = 0)")]
    ZeroTemperatureUnreachable,

    #[error("non-physical covariance: {what} = {value:e}")]
    NonPhysical { what: &'static str, value: f64 },

    #[error("unsupported covariance form: {0}")]
    UnsupportedForm(&'static str),

    #[error("invalid bipartition `{0}` (expected one of mm, oo, hl, hc)")]
    InvalidBipartition(String),

    #[error("drift matrix is not stable (max real eigenvalue part {max_real:e})")]
    Unstable { max_real: f64 },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("csv output: {0}")]
    Csv(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

pub(crate) fn require(
    name: &'static str,
    value: f64,
    ok: bool,
    reason: &'static str,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason,
        })
    }
}
