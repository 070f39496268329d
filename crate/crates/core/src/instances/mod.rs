//! Concrete component systems.

pub mod burnside;
pub mod group_algebra;
