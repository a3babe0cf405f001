//! Polydiagonal subspaces of weighted coupled cell networks: exact
//! enumeration, invariance testing, counting, and numerical checks of the
//! resulting dynamics.

pub mod graph;
pub mod linalg;
pub mod partitions;
pub mod invariance;
pub mod counting;
pub mod dynamics;
pub mod catalog;
pub mod sampling;
