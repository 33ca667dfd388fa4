//! Exact arithmetic for divided-power de Rham forms on simplicial sets.
//!
//! The crate is `no_std` and only needs an allocator.  Modules build on each
//! other in the order they are declared: polynomial arithmetic, enveloping
//! algebra words, forms, chain combinatorics, simplicial sets, integration,
//! holonomy and the A-infinity layer.

#![no_std]

extern crate alloc;

pub mod ainfty;
pub mod chains;
pub mod checks;
pub mod derham;
pub mod dpalg;
pub mod error;
pub mod holonomy;
pub mod integrate;
pub mod linfty;
pub mod ordinal;
pub mod simplicial;

pub use error::{Error, Result};
