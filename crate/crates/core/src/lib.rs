//! Random bipartite graphs near the planarity threshold.
//!
//! The crate samples binomial random bipartite graphs G(n1, n2, p),
//! classifies their component structure, tests planarity, certifies
//! per-instance genus intervals, evaluates the limiting constants of the
//! model numerically, and drives seeded Monte Carlo experiments that tie
//! the samples to the theory.

pub mod error;
pub mod genus;
pub mod graph;
pub mod harness;
pub mod planarity;
pub mod projection;
pub mod sampler;
pub mod structure;
pub mod theory;

pub use error::{Error, Result};
