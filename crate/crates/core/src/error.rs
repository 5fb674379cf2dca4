use crate::geom::GeomError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not simple")]
    Simplicity,
    #[error("polygon has zero area")]
    DegeneratePolygon,
    #[error("pocket is not present in the current polygon")]
    StalePocket,
    #[error("flipturn record does not match the polygon being undone")]
    BadUndo,
    #[error("search exceeded its node budget of {0}")]
    SearchBudget(usize),
    #[error("sibling subhulls are not pseudo-disks")]
    NotPseudoDisks,
    #[error("potential check failed: {0}")]
    PotentialViolation(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("polygon is already convex")]
    ConvexInput,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("generator gave up after {0} attempts")]
    GenerationBudget(usize),
    #[error("generator self-check failed: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors caused by bad input data rather than by a broken invariant.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::TooFewVertices(_)
                | Error::Simplicity
                | Error::DegeneratePolygon
                | Error::InvalidArgument(_)
                | Error::Json(_)
                | Error::Io(_)
                | Error::StalePocket
                | Error::ConvexInput
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
