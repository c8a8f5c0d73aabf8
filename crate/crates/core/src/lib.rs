//! Independence complexes of graphs: construction, exact reduced homology,
//! fold reductions and closed-form homotopy predictions for paths, cycles and
//! their wedges.

pub mod complex;
pub mod error;
pub mod graph;
pub mod homology;
pub mod predictor;
pub mod reduction;

pub use complex::{independence_complex, FVector, SimplicialComplex};
pub use error::{Error, Result};
pub use graph::{Graph, WedgeLayout, WedgeSpec};
pub use homology::{reduced_homology, Coefficients, HomologyProfile};
pub use predictor::HomotopyType;
