//! Isomorphism testing and canonical forms for finite groups given by
//! their multiplication tables.
//!
//! Groups are encoded as vertex-colored graphs built from composition
//! series, or from Hall systems of solvable groups, and then compared
//! with a graph canonizer.

pub mod bench;
pub mod bitset;
pub mod canon;
pub mod cli;
pub mod construct;
pub mod encoding;
pub mod error;
pub mod forms;
pub mod group;
pub mod iso;
pub mod numth;
pub mod series;
pub mod structure;

pub use error::{Error, Result};
pub use group::{parse_gtab, GroupTable, Subgroup};
