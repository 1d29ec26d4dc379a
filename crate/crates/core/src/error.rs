use thiserror::Error;

/// Errors raised while building or validating a [`LinkDiagram`](crate::LinkDiagram).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("inconsistent orientation on edge {edge}: {detail}")]
    InconsistentOrientation { edge: usize, detail: String },
    #[error("crossing {crossing} declares sign {declared} but its slots give {actual}")]
    SignMismatch {
        crossing: usize,
        declared: i64,
        actual: i64,
    },
    #[error("edge {edge} has a dangling end")]
    DisconnectedEdge { edge: usize },
    #[error("crossing graph is not connected ({components} components)")]
    Disconnected { components: usize },
    #[error("rotation system is not planar (V - E + F = {euler})")]
    NonPlanar { euler: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("smoothing has length {got}, diagram has {expected} crossings")]
    LengthMismatch { expected: usize, got: usize },
    #[error("diagram has {crossings} crossings, cap is {cap}")]
    CapExceeded { crossings: usize, cap: usize },
    #[error("move not applicable: {0}")]
    NotApplicable(String),
    #[error("duality violation at (i,j,k) = {grading:?}: {detail}")]
    DualityViolation {
        grading: (i32, i32, i32),
        detail: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl DiagramError {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            DiagramError::MalformedInput(_) => "malformed_input",
            DiagramError::InconsistentOrientation { .. } => "inconsistent_orientation",
            DiagramError::SignMismatch { .. } => "sign_mismatch",
            DiagramError::DisconnectedEdge { .. } => "disconnected_edge",
            DiagramError::Disconnected { .. } => "disconnected",
            DiagramError::NonPlanar { .. } => "non_planar",
        }
    }
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Diagram(e) => e.code(),
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::NotApplicable(_) => "not_applicable",
            Error::DualityViolation { .. } => "duality_violation",
        }
    }
}
