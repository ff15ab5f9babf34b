use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("total degree is zero")]
    ZeroTotalDegree,
    #[error("configuration has no susceptible vertices")]
    NoSusceptibles,
    #[error("configuration is not supercritical (alpha = {alpha})")]
    Subcritical { alpha: f64 },
    #[error("degenerate susceptible degree moments (lambda2 = {lambda2}, lambda3 = {lambda3})")]
    DegenerateMoments { lambda2: f64, lambda3: f64 },
    #[error("adaptive quadrature did not reach tolerance {tolerance:e}")]
    QuadratureFailure { tolerance: f64 },
    #[error("total degree {0} is odd")]
    OddTotalDegree(u64),
    #[error("degree sequence is not graphical")]
    NotGraphical,
    #[error("no simple graph after {0} attempts")]
    AttemptsExhausted(usize),
    #[error("state specification does not fit the realised degrees: {0}")]
    SpecMismatch(String),
    #[error("deterministic trajectories require no initially recovered vertices")]
    UnsupportedInitialRecovered,
    #[error("prediction needs a finite-nu regime, got {0}")]
    RegimeMismatch(String),
    #[error("no large outbreaks in the pool")]
    NoLargeOutbreaks,
    #[error("no seed count reaches alpha * X_I0 = {target} within 10%")]
    TargetUnreachable { target: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Errors caused by a model outside the supported regime rather than by
    /// malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::ZeroTotalDegree
                | Error::NoSusceptibles
                | Error::Subcritical { .. }
                | Error::DegenerateMoments { .. }
                | Error::OddTotalDegree(_)
                | Error::NotGraphical
                | Error::AttemptsExhausted(_)
                | Error::SpecMismatch(_)
                | Error::UnsupportedInitialRecovered
                | Error::RegimeMismatch(_)
                | Error::NoLargeOutbreaks
                | Error::TargetUnreachable { .. }
        )
    }
}
