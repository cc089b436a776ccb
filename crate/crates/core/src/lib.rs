//! Exact finite-model computations around the decalage functor `L eta_f`,
//! Koszul complexes, a cyclotomic model of `A_inf` and the `q`-de Rham complex
//! of the torus.

pub mod arith;
pub mod complexes;
pub mod decalage;
pub mod error;
pub mod qderham;
pub mod suite;
pub mod torus;
pub mod witt_ainf;

pub use error::{Error, Result};
