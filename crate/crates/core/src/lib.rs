//! Spatial spiking networks and their pseudo-EEG functional samples.
//!
//! The pipeline: [`spatial`] builds a directed network inside a unit
//! semi-sphere, [`lif`] runs leaky integrate-and-fire dynamics on it,
//! [`sensor`] turns membrane potentials into surface recordings,
//! [`funcnet`] thresholds their lagged cross-correlations into a functional
//! network, and [`metrics`] measures both graphs. [`experiment`] runs the
//! whole comparison protocol.

pub mod error;
pub mod experiment;
pub mod funcnet;
pub mod graph;
pub mod io;
pub mod lif;
pub mod metrics;
pub mod rng;
pub mod sensor;
pub mod spatial;
pub mod stats;

pub use error::{Error, Result};
