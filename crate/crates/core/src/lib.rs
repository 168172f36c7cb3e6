//! Copositivity of quadratic functions over quadratic constraints: a
//! symmetric eigensolver, quadratic-function utilities with a
//! counterexample oracle, planar cone calculus and an S-lemma certifier.

pub mod cone2d;
pub mod format;
pub mod quadform;
pub mod selftest;
pub mod slemma;
pub mod symcore;

pub use quadform::{Counterexample, QuadraticFunction};
pub use slemma::{certify, CertifyOptions, CopositivityVerdict};
pub use symcore::SymMatrix;
