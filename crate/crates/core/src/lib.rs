//! 1-visibility representations of embedded 1-planar graphs.
pub mod augmentation;
pub mod crossing;
pub mod embedding;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod layout;
pub mod pipeline;
pub mod planar_layout;
pub mod plane;
pub mod svg;
pub mod verify;
pub use error::{Error, Result};
pub use graph::{check_density, Dart, DensityReport, Edge, EdgeId, EdgeKind, Graph, VertexId};
