use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GtError {
    #[error("denominator vanishes: {0}")]
    DenominatorVanishes(String),
    #[error("point is not in normal form for the given refinement")]
    NotInNormalForm,
    #[error("weight {0:?} is not dominant integral")]
    NotDominant(Vec<i64>),
    #[error("|S_eta| = {size} exceeds the configured bound {bound}")]
    BoundExceeded { size: u64, bound: u64 },
    #[error("lattice violation: coefficient {0} is not in B_eta")]
    LatticeViolation(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, GtError>;

impl GtError {
    /// The variant name, as surfaced in reports.
    pub fn name(&self) -> &'static str {
        match self {
            GtError::DenominatorVanishes(_) => "DenominatorVanishes",
            GtError::NotInNormalForm => "NotInNormalForm",
            GtError::NotDominant(_) => "NotDominant",
            GtError::BoundExceeded { .. } => "BoundExceeded",
            GtError::LatticeViolation(_) => "LatticeViolation",
            GtError::Invalid(_) => "Invalid",
            GtError::Internal(_) => "Internal",
        }
    }
}
