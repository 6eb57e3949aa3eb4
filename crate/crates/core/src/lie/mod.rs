//! Complex Lie algebras presented by structure constants.

mod algebra;
mod decomposition;
mod series;
mod subspace;

pub use algebra::{validate_constants, LieAlgebra, ValidationReport, DEFAULT_TOL};
pub use decomposition::DecompositionVerdict;
pub use series::{SeriesKind, SeriesReport};
pub use subspace::Subspace;
