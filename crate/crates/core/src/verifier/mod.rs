//! Independent checks: bounded enumeration in the Bass–Serre tree, coset
//! enumeration, and brute-force membership.

pub mod ball;
pub mod coset;
pub mod crosscheck;

pub use ball::{ball_map, enumerate_ball_elements, tree_ball, BallMapReport, BallVertex, TreeBall};
pub use coset::{coset_enumerate, CosetResult, CosetTable, Presentation, DEFAULT_COSET_CAP};
pub use crosscheck::{crosscheck, CrosscheckReport};
