//! Exact computation of Tutte–Whitney-type graph polynomials, partial
//! colouring polynomials, binary-function invariants and equality
//! certificates.

pub mod binary;
pub mod canon;
pub mod cert;
pub mod colouring;
pub mod config;
pub mod error;
pub mod exec;
pub mod go;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod partition;
pub mod poly;
pub mod tutte;

pub use config::Config;
pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{LabelledGraph, Multigraph};
pub use poly::{MultiPoly, Rational};
