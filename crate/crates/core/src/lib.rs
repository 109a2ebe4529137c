//! Operator moduli, unitarily invariant norms, checks for the sharp
//! triangle-type inequalities relating them, and a derivative-free search for
//! extremal matrix tuples.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod inequalities;
pub mod linalg;
pub mod moduli;
pub mod norms;
pub mod search;

pub use error::{Error, Result};
