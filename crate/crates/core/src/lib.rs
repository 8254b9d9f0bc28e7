//! Rigid-origami crease pattern design as a single-player board game.
//!
//! A crease pattern is grown on a grid board one vertex extension at a time,
//! folded with three-unit forward kinematics, scored against a target shape or
//! an abstract objective, and searched with one of several strategies.

pub mod env;
pub mod error;
pub mod geom;
pub mod io;
pub mod kinematics;
pub mod objectives;
pub mod pattern;
pub mod search;

pub use error::{Error, Result};
