//! Character-lattice computations for CM abelian varieties and their
//! reductions over finite fields: Mumford-Tate and Frobenius kernels,
//! exotic Hodge and Tate classes, and verdicts on when the Tate
//! conjecture for the reduction follows from the Hodge conjecture.
//!
//! Everything is computed inside a finite Galois group `G = Gal(K/Q)`
//! given by its multiplication table.

pub mod cli;
pub mod cm;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod hodge;
pub mod lattice;
pub mod reduction;
pub mod report;
pub mod scenario;
pub mod verdict;
pub mod weil;

pub use error::{Error, Result};
