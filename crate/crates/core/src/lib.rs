//! Exact computation and certification of covering functionals of the
//! three-dimensional cross-polytope.

pub mod assign;
pub mod body;
pub mod cell;
pub mod configs;
pub mod cover;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod radius;
pub mod rational;
pub mod search;
pub mod table;
pub mod witness;

pub use error::{Error, Result};
pub use rational::Rational;
