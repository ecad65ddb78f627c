//! Stochastic-geometry models for UAV relay networks: node placement,
//! fading channels, coverage and collision probabilities, and the MO3DR
//! opportunistic routing algorithm.

pub mod band;
pub mod channel;
pub mod collision;
pub mod coverage;
pub mod deploy;
pub mod distance;
pub mod error;
pub mod model;
pub mod quadrature;
pub mod rng;
pub mod routing;

pub use error::{Error, Result};
pub use model::NetworkConfig;
