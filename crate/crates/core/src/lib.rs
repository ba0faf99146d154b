#![no_std]
#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::suspicious_arithmetic_impl, clippy::len_without_is_empty)]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod exact;
pub mod geometry;
pub mod hopf;
pub mod lie;
pub mod linalg;
pub mod ncalg;
pub mod qmomentum;
pub mod reduction;
pub mod report;

pub use error::{Error, Result};
