use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid earth model: {0}")]
    InvalidEarthModel(String),

    #[error("invalid orbital elements: {0}")]
    InvalidElements(String),

    #[error("invalid satellite parameters: {0}")]
    InvalidSatellite(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The propagated state is not on an ellipse consistent with the elements.
    #[error("state inconsistent with elements: R = {radius} km, 2a = {two_a} km")]
    NonElliptic { radius: f64, two_a: f64 },

    #[error("orbit decayed below the Earth's surface at t = {t} s (R = {radius} km)")]
    Impact { t: f64, radius: f64 },

    #[error("eigenvalue iteration did not converge")]
    EigenNoConvergence,

    #[error("insufficient trajectory span: {0}")]
    InsufficientSpan(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Whether the error stems from the inputs rather than from the run.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidEarthModel(_)
                | Error::InvalidElements(_)
                | Error::InvalidSatellite(_)
                | Error::InvalidScenario(_)
                | Error::Config(_)
        )
    }
}
