//! An instrumented compact genetic algorithm (cGA) on functions of unitation.
//!
//! The crate is organised around four pieces:
//!
//! * [`engine`]: the cGA state machine (sampling, reinforcement, border
//!   clamping) with full-run execution and per-iteration tracing.
//! * [`fitness`]: OneMax and Cliff as precomputed unitation tables.
//! * [`analytics`]: exact Poisson-binomial oracles, normal-approximation
//!   drift predictions around the cliff, Monte-Carlo drift estimates and
//!   one-step concentration bounds.
//! * [`experiments`]: seeded, parallel experiment protocols writing CSV.
//!
//! The [`cli`] module backs the `cga-lab` binary.

pub mod analytics;
pub mod cli;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod fitness;
pub mod rng;

pub use engine::{Bitstring, EventClass, FrequencyModel, RunResult, StepRecord};
pub use error::{Error, Result};
pub use fitness::{FitnessKind, Slope, Unitation, UnitationFunction};
