//! Simulation engines and closed-form predictions for SIR epidemics on
//! configuration-model random graphs just above the epidemic threshold.
//!
//! The crate is organised around the quantities a near-critical outbreak is
//! described by:
//!
//! * [`degree_model`]: degree configurations, criticality measures
//!   (`R0`, `alpha`, `nu`) and the limiting final-size and take-off laws.
//! * [`graph_gen`]: configuration-model multigraphs, simple graphs by
//!   rejection, `G(n,p)` and `G(n,m)`.
//! * [`sir_dynamics`]: three engines with the same final-size law (Gillespie on
//!   a fixed graph, lazy pairing with red/black colouring, and the time-changed
//!   chain) plus the deterministic half-edge trajectories.
//! * [`sellke`]: threshold construction giving final sizes for every initial
//!   condition from one draw of randomness.
//! * [`giant_component`]: component structure of sampled multigraphs.
//! * [`harness`]: replicated Monte Carlo experiments with schedule-independent
//!   results.
//! * [`config`]: the JSON document consumed by the `nearcrit` binary.

pub mod config;
pub mod degree_model;
pub mod error;
pub mod giant_component;
pub mod graph_gen;
pub mod harness;
pub mod rng;
pub mod sellke;
pub mod sir_dynamics;
pub mod stats;

pub use error::{Error, Result};
