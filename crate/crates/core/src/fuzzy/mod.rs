//! Mamdani fuzzy controller mapping (residual energy, distance to the base
//! station) to a cluster-head communication range.

mod engine;
mod membership;
mod rules;
mod variable;

pub use engine::{
    comr_partition, three_term_partition, AggregatedOutput, FuzzyConfig, COMR_LABELS, DISTANCE_LABELS, ENERGY_LABELS,
};
pub use membership::MembershipFunction;
pub use rules::{default_rules, Rule, RuleBase};
pub use variable::{FuzzyVariable, Term};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FuzzyError {
    #[error("invalid membership breakpoints: {0}")]
    Breakpoints(String),
    #[error("variable `{name}`: invalid universe [{lo}, {hi}]")]
    Universe { name: String, lo: f64, hi: f64 },
    #[error("variable `{name}`: no term covers {at}")]
    Coverage { name: String, at: f64 },
    #[error("variable `{name}`: duplicate term label `{label}`")]
    DuplicateLabel { name: String, label: String },
    #[error("invalid rule base: {0}")]
    RuleBase(String),
    #[error("variable `{name}`: expected {expected} grades, got {got}")]
    GradeCount { name: String, expected: usize, got: usize },
    #[error("grade {0} outside [0, 1]")]
    Grade(f64),
    #[error("no rule fired")]
    NoRuleFired,
}
