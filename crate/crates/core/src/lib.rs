//! Star-like Kauffman bracket and trigraded homologies of oriented link diagrams.

pub mod bracket;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod khovanov;
pub mod laurent;
pub mod moves;
pub mod random;
pub mod resolution;
pub mod snf;

pub use diagram::{parse_diagram, LinkDiagram};
pub use error::{DiagramError, Error, Result};
pub use laurent::{BiLaurent, Laurent};
