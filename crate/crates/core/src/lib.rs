//! Analysis of finite-dimensional complex Lie algebras given by structure
//! constants, together with truncated Fock-space realizations of one-mode
//! pseudo-bosonic ladder operators and the bridge between the two.
//!
//! * [`lie`]: centers, derived subalgebras, central series, nilpotency class,
//!   semidirect and central sum checks.
//! * [`catalog`]: named algebras and a fingerprint classifier for nilpotent
//!   algebras of dimension at most five.
//! * [`cohomology`]: second cohomology with trivial coefficients (Schur
//!   multiplier dimension) from the Chevalley–Eilenberg complex.
//! * [`fock`]: ladder operators, pseudo-boson models and their biorthogonal
//!   families on a truncated number basis.
//! * [`extraction`]: commutator tables of model operators turned back into
//!   structure constants, plus consolidated model audits.

pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod extraction;
pub mod fock;
pub mod io;
pub mod lie;
pub mod linalg;

pub use error::{Error, Result};
pub use lie::{LieAlgebra, Subspace};
pub use linalg::C64;
