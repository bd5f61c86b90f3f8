//! Achievable rate regions for two-user multiple-access channels whose
//! encoders know an interfering state, with common messages or conferencing
//! links between the encoders.
//!
//! - [`geometry`]: rate pentagons and frontiers of their unions
//! - [`gaussian`]: closed-form Gaussian bounds, the cooperative sum-rate
//!   optimum and a covariance-based oracle
//! - [`discrete`]: exact bounds and brute-force search for finite channels
//! - [`conferencing`]: rate splitting over conference links
//! - [`cli`]: config parsing and the command implementations behind the binary

pub mod cli;
pub mod conferencing;
pub mod discrete;
pub mod error;
pub mod gaussian;
pub mod geometry;

pub use error::{Error, Result};
