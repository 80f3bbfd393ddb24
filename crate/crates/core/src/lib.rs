//! Exact finite limits and colimits of comodules over finite-dimensional
//! rational coalgebras, with machine-checked universal properties.

pub mod coalg;
pub mod colimits;
pub mod comod;
pub mod diagram;
pub mod dsl;
pub mod error;
pub mod exactlin;
pub mod limits;
pub mod report;
pub mod selftest;

pub use error::{Error, Result};
