//! Exact computations for Landau-Ginzburg A- and B-models of quasihomogeneous
//! polynomials with diagonal Abelian symmetry groups.

pub mod amodel;
pub mod cli;
pub mod error;
pub mod groebner;
pub mod milnor;
pub mod mirror;
pub mod polycore;
pub mod rational;
pub mod snf;
pub mod symmetry;

pub use error::{Error, Result};
