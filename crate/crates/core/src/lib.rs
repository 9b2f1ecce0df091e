//! Exact workbench for A-hypergeometric and Horn systems: lattice algebra,
//! Weyl-algebra arithmetic, Gröbner bases, M-subgraphs and truncated
//! Puiseux series solutions.

pub mod error;
pub mod cli;
pub mod exact;
pub mod example;
pub mod groebner;
pub mod json;
pub mod mgraph;
pub mod poly;
pub mod series;
pub mod systems;
pub mod weyl;

pub use error::{Error, Result};
