use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: EdgeId, vertex: VertexId },

    #[error("edge {edge} has endpoint {vertex} outside 0..{n}")]
    EndpointOutOfRange { edge: EdgeId, vertex: VertexId, n: usize },

    #[error("edges {first} and {second} are parallel and neither is a separation edge")]
    IllegalParallelEdge { first: EdgeId, second: EdgeId },

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("inconsistent rotation system: {0}")]
    InconsistentRotation(String),

    #[error("graph is not biconnected")]
    NotBiconnected,

    #[error("graph is not triconnected (separation pair {0:?})")]
    NotTriconnected((VertexId, VertexId)),

    #[error("({s}, {t}) is not an edge of the outer face")]
    StNotOuterEdge { s: VertexId, t: VertexId },

    #[error("orientation contains a directed cycle")]
    CycleDetected,

    #[error("face {face} is not a quadrangle of four distinct vertices")]
    NotQuadrangle { face: usize },

    #[error("no saturating assignment for crossing face {face}")]
    HallViolation { face: usize },

    #[error("{m} edges on {n} vertices exceeds the 4n-8 bound of {bound}")]
    DensityViolation { n: usize, m: usize, bound: usize },

    #[error("rim size {0} must be even and at least 6")]
    BadRim(usize),

    #[error("family needs at least {min} vertices, got {n}")]
    TooSmall { n: usize, min: usize },

    #[error("graph is not a member of a known witness family")]
    UnknownFamily,

    #[error("block structure not supported by side-by-side composition: {0}")]
    UnsupportedBlockStructure(String),

    #[error("expected schema \"onevis/1\", found {0:?}")]
    Schema(String),

    #[error("layout does not match graph: {0}")]
    IdMismatch(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable name of the variant, for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SelfLoop { .. } => "SelfLoop",
            Error::EndpointOutOfRange { .. } => "EndpointOutOfRange",
            Error::IllegalParallelEdge { .. } => "IllegalParallelEdge",
            Error::InvalidEmbedding(_) => "InvalidEmbedding",
            Error::InconsistentRotation(_) => "InconsistentRotation",
            Error::NotBiconnected => "NotBiconnected",
            Error::NotTriconnected(_) => "NotTriconnected",
            Error::StNotOuterEdge { .. } => "StNotOuterEdge",
            Error::CycleDetected => "CycleDetected",
            Error::NotQuadrangle { .. } => "NotQuadrangle",
            Error::HallViolation { .. } => "HallViolation",
            Error::DensityViolation { .. } => "DensityViolation",
            Error::BadRim(_) => "BadRim",
            Error::TooSmall { .. } => "TooSmall",
            Error::UnknownFamily => "UnknownFamily",
            Error::UnsupportedBlockStructure(_) => "UnsupportedBlockStructure",
            Error::Schema(_) => "Schema",
            Error::IdMismatch(_) => "IdMismatch",
            Error::Json(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
