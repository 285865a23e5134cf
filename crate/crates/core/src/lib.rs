//! Cartan geometry on coordinate charts.
//!
//! The crate is layered: [`lie`] holds the matrix groups and algebras,
//! [`forms`] the exterior calculus over symbolic fields and Taylor jets,
//! [`cartan`] the local connection data and jet-space maps, [`lagrangian`]
//! the Chern–Simons and Palatini forms, and [`harness`] the discretized
//! variational problems.

pub mod error;
pub mod cartan;
pub mod forms;
pub mod harness;
pub mod lagrangian;
pub mod lie;

pub use error::{Error, Result};
