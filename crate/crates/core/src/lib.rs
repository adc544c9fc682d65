//! Deterministic round-based wireless sensor network simulator.
//!
//! Implements fuzzy informer-homed routing (FIHR), where tentative cluster
//! heads size their communication range with a Mamdani fuzzy controller and
//! compete for non-overlapping coverage, together with the informer-homed
//! (IHR) and dual-homed (DHR) fault-tolerant baselines. Each cluster keeps a
//! backup head that watches the primary and takes over on failure.

pub mod config;
pub mod fuzzy;
pub mod metrics;
pub mod network;
pub mod protocols;
pub mod radio;
pub mod rng;
pub mod sim;

pub use config::{ConfigError, ProtocolConfig, ProtocolKind, Scenario, SimConfig};
pub use fuzzy::FuzzyConfig;
pub use network::{FieldConfig, Network, Point};
pub use radio::{Bits, RadioParams};
pub use sim::{run_simulation, RoundMetrics, RunResult, SimulationResult};
