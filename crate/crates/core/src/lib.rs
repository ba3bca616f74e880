pub mod error;
pub mod graph;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub mod families;
pub mod clutter;
pub mod ideal;
pub mod resolution;
pub mod enumerate;
pub mod io;
pub mod verifier;
