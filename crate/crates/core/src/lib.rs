#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod cocycle;
pub mod error;
pub mod fixtures;
pub mod framework;
pub mod group;
pub mod hopf;
pub mod instances;
pub mod scalar;
pub mod twisted;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::Verdict;
