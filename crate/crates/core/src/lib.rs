//! Simulation of anonymous synchronous message-passing models (SB, MB,
//! their bandwidth-limited variants, B-CONGEST and LOCAL) on random graphs,
//! together with the labeling schemes, protocols and reproducible
//! experiments built on top.

pub mod error;
pub mod experiments;
pub mod gen;
pub mod graph;
pub mod labeling;
pub mod protocols;
pub mod sim;

pub use error::{Error, Result};
