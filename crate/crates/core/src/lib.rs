//! Quantum memory built from a two-level atom in front of a movable mirror.
//!
//! The atom's decay rate into the guided mode is tuned by the mirror
//! position. Storing a photon means choosing a rate program that absorbs the
//! incoming envelope; retrieving it means choosing one that re-emits the
//! excitation in a chosen shape. Everything numerical is generic over
//! [`Real`] (`f32` or `f64`); the aliases at the crate root fix `f64`.

pub mod config;
pub mod dynamics;
pub mod envelope;
pub mod error;
pub mod grid;
pub mod mirror;
pub mod oracle;
pub mod pulses;
pub mod quadrature;
pub mod read_shaper;
pub mod runner;
pub mod scalar;
pub mod scenario;
mod search;
pub mod write_optimizer;

pub use error::{Error, Result};
pub use scalar::Real;
pub use search::max_candidate;

pub type MemoryConfig = config::MemoryConfig<f64>;
pub type TimeGrid = grid::TimeGrid<f64>;
pub type ComplexEnvelope = envelope::ComplexEnvelope<f64>;
pub type DecayProfile = dynamics::DecayProfile<f64>;
pub type ExcitationTrace = dynamics::ExcitationTrace<f64>;
pub type MirrorTrajectory = mirror::MirrorTrajectory<f64>;
pub type TimeBinSpec = pulses::TimeBinSpec<f64>;
pub type WriteResult = write_optimizer::WriteResult<f64>;
pub type ReadResult = read_shaper::ReadResult<f64>;
pub type ReadOptions = read_shaper::ReadOptions<f64>;
