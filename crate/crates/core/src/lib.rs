//! Axial elements of group actions on sets: tame/wild classification,
//! wilderness intervals, projection data, and finite approximations of the
//! resulting quasi-trees.

pub mod action;
pub mod complex;
pub mod error;
pub mod group;
pub mod harness;
pub mod projections;
pub mod wildness;

pub use error::{Error, Result};
