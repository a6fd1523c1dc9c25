//! Exact arithmetic for diagram algebras with beads, their Lie-algebra and
//! Lie-group weight systems, and the maps between them.

pub mod algebra;
pub mod bridge;
pub mod character;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod lie;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
