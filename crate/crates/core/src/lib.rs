//! Exact rational solver for generalized flow maximization and for linear
//! feasibility systems with at most two nonzeros per column.

// index loops mirror the matrix and walk-table math they implement
#![allow(clippy::needless_range_loop)]

pub mod certify;
pub mod constants;
pub mod decompose;
pub mod enhanced;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod gainpath;
pub mod generate;
pub mod graph;
pub mod init;
pub mod lp2;
pub mod maxflow;
pub mod rational;
pub mod scaling;
pub mod trace;
pub mod transform;
pub mod views;
