//! Finite N-free partial orders: modular decomposition with valued
//! decomposition trees, poset and graph substitution, classification of
//! N-free posets, sibling reports, and brute-force oracles.
//!
//! Points are positional (`0..n`). Every structure is an immutable value once
//! built, so all operations are pure functions.

pub mod classify;
pub mod construct;
pub mod decomposition;
pub mod embedding;
mod error;
pub mod expr;
pub mod io;
pub mod order;
pub mod substitution;

pub use error::{Error, Result};
pub use order::{BinaryStructure, Graph, Poset};
