//! Simulation, protocol and scenario configuration with validated defaults.

use std::fmt;
use std::str::FromStr;

use crate::fuzzy::{FuzzyConfig, FuzzyError};
use crate::network::{FieldConfig, Point};
use crate::radio::{Bits, RadioError, RadioParams};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error("invalid fuzzy configuration: {0}")]
    Fuzzy(#[from] FuzzyError),
    #[error("invalid radio configuration: {0}")]
    Radio(#[from] RadioError),
}

impl ConfigError {
    pub fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::Invalid { field: field.into(), reason: reason.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProtocolKind {
    Fihr,
    Ihr,
    Dhr,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 3] = [ProtocolKind::Fihr, ProtocolKind::Ihr, ProtocolKind::Dhr];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fihr => "fihr",
            Self::Ihr => "ihr",
            Self::Dhr => "dhr",
        }
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProtocolKind {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fihr" => Ok(Self::Fihr),
            "ihr" => Ok(Self::Ihr),
            "dhr" => Ok(Self::Dhr),
            other => Err(ConfigError::invalid("protocol", format!("unknown protocol `{other}`"))),
        }
    }
}

/// Named field layouts with a centered base station.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// 100 nodes on 100 m × 100 m, base station at (50, 50).
    Scenario1,
    /// 200 nodes on 200 m × 200 m, base station at (100, 100).
    Scenario2,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Self::Scenario1 => "scenario1",
            Self::Scenario2 => "scenario2",
        }
    }

    pub fn field(self) -> FieldConfig {
        let (side, nodes) = match self {
            Self::Scenario1 => (100.0, 100),
            Self::Scenario2 => (200.0, 200),
        };
        FieldConfig {
            width: side,
            height: side,
            bs_position: Point::new(side / 2.0, side / 2.0),
            node_count: nodes,
            initial_energy: 3.0,
        }
    }
}

impl FromStr for Scenario {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "scenario1" => Ok(Self::Scenario1),
            "scenario2" => Ok(Self::Scenario2),
            other => Err(ConfigError::invalid("scenario", format!("unknown scenario `{other}`"))),
        }
    }
}

/// How FIHR draws its tentative heads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Candidacy {
    /// LEACH threshold `T(n)` with per-epoch exclusion, as IHR and DHR use.
    Rotating,
    /// A flat `x < T` draw every round.
    Fixed,
}

/// Order in which FIHR candidates claim their ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompetitionOrder {
    /// Highest residual energy first, ties by lower id.
    ResidualEnergy,
    NodeId,
}

impl Candidacy {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Rotating => "rotating",
            Self::Fixed => "fixed",
        }
    }
}

impl CompetitionOrder {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ResidualEnergy => "energy",
            Self::NodeId => "id",
        }
    }
}

impl FromStr for Candidacy {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rotating" => Ok(Self::Rotating),
            "fixed" => Ok(Self::Fixed),
            other => Err(ConfigError::invalid("protocol.candidacy", format!("unknown value `{other}`"))),
        }
    }
}

impl FromStr for CompetitionOrder {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "energy" => Ok(Self::ResidualEnergy),
            "id" => Ok(Self::NodeId),
            other => Err(ConfigError::invalid("protocol.competition_order", format!("unknown value `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolConfig {
    /// Probability of standing as a tentative head (FIHR) or the LEACH `p` (IHR, DHR).
    pub t_probability: f64,
    /// FIHR candidates whose range exceeds this withdraw, meters.
    pub comr_threshold: f64,
    /// Unanswered inquiries tolerated before the backup takes over.
    pub failover_threshold: u32,
    /// Data cycles per round.
    pub m_transmissions: u32,
    pub data_bits: Bits,
    pub ctrl_bits: Bits,
    /// Head advertisement radius for IHR and DHR, meters.
    pub adv_radius: f64,
    pub candidacy: Candidacy,
    pub competition_order: CompetitionOrder,
}

impl ProtocolConfig {
    /// Defaults scaled to `field`: withdrawal threshold at the maximum range,
    /// advertisement at half the diagonal.
    pub fn defaults_for(field: &FieldConfig) -> Self {
        Self {
            t_probability: 0.1,
            comr_threshold: default_max_range(field),
            failover_threshold: 3,
            m_transmissions: 3,
            data_bits: Bits::new(32000).expect("nonzero"),
            ctrl_bits: Bits::new(160).expect("nonzero"),
            adv_radius: 0.5 * field.diagonal(),
            candidacy: Candidacy::Rotating,
            competition_order: CompetitionOrder::ResidualEnergy,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.t_probability > 0.0 && self.t_probability <= 1.0) {
            return Err(ConfigError::invalid("protocol.t_probability", "must be in (0, 1]"));
        }
        if !(self.comr_threshold.is_finite() && self.comr_threshold > 0.0) {
            return Err(ConfigError::invalid("protocol.comr_threshold", "must be > 0"));
        }
        if self.failover_threshold == 0 {
            return Err(ConfigError::invalid("protocol.failover_threshold", "must be >= 1"));
        }
        if self.m_transmissions == 0 {
            return Err(ConfigError::invalid("protocol.m_transmissions", "must be >= 1"));
        }
        if !(self.adv_radius.is_finite() && self.adv_radius > 0.0) {
            return Err(ConfigError::invalid("protocol.adv_radius", "must be > 0"));
        }
        Ok(())
    }
}

/// Upper end of the communication-range universe, as a fraction of the
/// largest node to base station distance.
pub const MAX_RANGE_FRACTION: f64 = 0.05;

pub fn default_max_range(field: &FieldConfig) -> f64 {
    MAX_RANGE_FRACTION * field.max_bs_distance()
}

/// Default fuzzy controller for a field: energy over `[0, E_init]`,
/// distance over `[0, max BS distance]`, range over `[0, default_max_range]`.
pub fn default_fuzzy(field: &FieldConfig) -> Result<FuzzyConfig, FuzzyError> {
    FuzzyConfig::with_defaults(field.initial_energy, field.max_bs_distance(), default_max_range(field))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub protocol: ProtocolKind,
    pub rounds: u64,
    pub field: FieldConfig,
    pub proto: ProtocolConfig,
    pub radio: RadioParams,
    pub fuzzy: FuzzyConfig,
    /// Per-head, per-round probability of a permanent hardware fault.
    pub fault_rate: f64,
    pub seed: u64,
    pub runs: u32,
}

pub const DEFAULT_ROUNDS: u64 = 2000;
pub const DEFAULT_RUNS: u32 = 20;

impl SimConfig {
    pub fn preset(scenario: Scenario, protocol: ProtocolKind) -> Self {
        Self::for_field(scenario.field(), protocol)
    }

    pub fn for_field(field: FieldConfig, protocol: ProtocolKind) -> Self {
        Self {
            protocol,
            rounds: DEFAULT_ROUNDS,
            proto: ProtocolConfig::defaults_for(&field),
            radio: RadioParams::default(),
            fuzzy: default_fuzzy(&field).expect("default partitions are valid for a valid field"),
            fault_rate: 0.0,
            seed: 0,
            runs: DEFAULT_RUNS,
            field,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.field.validate()?;
        self.proto.validate()?;
        self.radio.validate()?;
        if self.rounds == 0 {
            return Err(ConfigError::invalid("simulation.rounds", "must be >= 1"));
        }
        if self.runs == 0 {
            return Err(ConfigError::invalid("simulation.runs", "must be >= 1"));
        }
        if !(0.0..=1.0).contains(&self.fault_rate) {
            return Err(ConfigError::invalid("simulation.fault_rate", "must be in [0, 1]"));
        }
        Ok(())
    }
}
