//! Zero sets of Fock-space functions: generators for lattice-type point sets
//! and their perturbations, Weierstrass-type products evaluated in log space,
//! Fock and weighted `L^p` norms with divergence verdicts, and numerical
//! checks of the stability conditions for complete interpolating sequences.

pub mod cli;
pub mod error;
pub mod logspace;
pub mod measures;
pub mod numeric;
pub mod products;
pub mod sequences;
pub mod spatial;
pub mod verify;

pub use error::{Error, Result};
pub use logspace::LogComplex;
