//! TOML run configuration.
//!
//! Every key is optional. Values are layered over a scenario preset, and
//! quantities derived from the field (fuzzy universes, range threshold,
//! advertisement radius) are recomputed after `[field]` is applied unless
//! the file sets them explicitly.
//!
//! ```toml
//! [simulation]
//! scenario = "scenario1"
//! protocol = "all"
//! rounds = 2000
//!
//! [field]
//! initial_energy = 2.0
//!
//! [fuzzy.distance]
//! Close = [10.0, 25.0]
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use fihr::config::{default_max_range, Candidacy, CompetitionOrder};
use fihr::fuzzy::{
    comr_partition, three_term_partition, FuzzyVariable, MembershipFunction, DISTANCE_LABELS, ENERGY_LABELS,
};
use fihr::{Bits, ConfigError, FuzzyConfig, ProtocolConfig, ProtocolKind, Scenario, SimConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("config file `{}` not found", .0.display())]
    NotFound(PathBuf),
    #[error("cannot read config file `{}`: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config file `{}`: {message}", path.display())]
    Syntax { path: PathBuf, message: String },
    #[error(transparent)]
    Invalid(#[from] ConfigError),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub simulation: SimulationSection,
    #[serde(default)]
    pub field: FieldSection,
    #[serde(default)]
    pub protocol: ProtocolSection,
    #[serde(default)]
    pub radio: RadioSection,
    #[serde(default)]
    pub fuzzy: FuzzySection,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    /// `fihr`, `ihr`, `dhr` or `all`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub protocol: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounds: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runs: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault_rate: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bs_x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bs_y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_energy: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_probability: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comr_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failover_threshold: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_transmissions: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data_bits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ctrl_bits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adv_radius: Option<f64>,
    /// `rotating` or `fixed`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidacy: Option<String>,
    /// `energy` or `id`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub competition_order: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadioSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_elec: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_fs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_mp: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_da: Option<f64>,
}

/// Breakpoints per term label, in the variable's own units. Shoulders take
/// two values and triangles three, matching the default shape of the term.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzySection {
    /// Upper end of the communication-range universe, meters.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_range: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub energy: BTreeMap<String, Vec<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub distance: BTreeMap<String, Vec<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub comr: BTreeMap<String, Vec<f64>>,
}

impl ConfigFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self, LoadError> {
        toml::from_str(text).map_err(|e| LoadError::Syntax { path: path.to_owned(), message: e.to_string() })
    }

    pub fn load(path: &Path) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|source| match source.kind() {
            std::io::ErrorKind::NotFound => LoadError::NotFound(path.to_owned()),
            _ => LoadError::Io { path: path.to_owned(), source },
        })?;
        Self::parse(&text, path)
    }

    /// Writes out every value of `cfg` explicitly, so the file reproduces it
    /// regardless of presets.
    pub fn from_sim_config(cfg: &SimConfig) -> Self {
        let terms = |var: &FuzzyVariable| -> BTreeMap<String, Vec<f64>> {
            var.terms().iter().map(|t| (t.label.clone(), t.mf.breakpoints())).collect()
        };
        Self {
            simulation: SimulationSection {
                scenario: None,
                protocol: Some(cfg.protocol.as_str().to_owned()),
                rounds: Some(cfg.rounds),
                runs: Some(cfg.runs),
                seed: Some(cfg.seed),
                fault_rate: Some(cfg.fault_rate),
            },
            field: FieldSection {
                width: Some(cfg.field.width),
                height: Some(cfg.field.height),
                bs_x: Some(cfg.field.bs_position.x),
                bs_y: Some(cfg.field.bs_position.y),
                node_count: Some(cfg.field.node_count),
                initial_energy: Some(cfg.field.initial_energy),
            },
            protocol: ProtocolSection {
                t_probability: Some(cfg.proto.t_probability),
                comr_threshold: Some(cfg.proto.comr_threshold),
                failover_threshold: Some(cfg.proto.failover_threshold),
                m_transmissions: Some(cfg.proto.m_transmissions),
                data_bits: Some(cfg.proto.data_bits.get()),
                ctrl_bits: Some(cfg.proto.ctrl_bits.get()),
                adv_radius: Some(cfg.proto.adv_radius),
                candidacy: Some(cfg.proto.candidacy.as_str().to_owned()),
                competition_order: Some(cfg.proto.competition_order.as_str().to_owned()),
            },
            radio: RadioSection {
                e_elec: Some(cfg.radio.e_elec),
                eps_fs: Some(cfg.radio.eps_fs),
                eps_mp: Some(cfg.radio.eps_mp),
                e_da: Some(cfg.radio.e_da),
            },
            fuzzy: FuzzySection {
                max_range: Some(cfg.fuzzy.comr.universe().1),
                energy: terms(&cfg.fuzzy.energy),
                distance: terms(&cfg.fuzzy.distance),
                comr: terms(&cfg.fuzzy.comr),
            },
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain tables always serialize")
    }
}

/// What to run, after flags, file and preset have been layered.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub base: SimConfig,
    pub protocols: Vec<ProtocolKind>,
    /// Label used in output file names.
    pub scenario_name: String,
}

/// Values given on the command line; they beat the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FlagOverrides {
    pub scenario: Option<Scenario>,
    pub protocols: Option<Vec<ProtocolKind>>,
    pub runs: Option<u32>,
    pub rounds: Option<u64>,
    pub seed: Option<u64>,
    pub fault_rate: Option<f64>,
}

pub fn parse_protocols(s: &str) -> Result<Vec<ProtocolKind>, ConfigError> {
    if s.eq_ignore_ascii_case("all") {
        Ok(ProtocolKind::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

pub fn resolve(file: &ConfigFile, flags: &FlagOverrides) -> Result<Resolved, ConfigError> {
    let sim = &file.simulation;
    let file_scenario = sim.scenario.as_deref().map(str::parse::<Scenario>).transpose()?;
    let scenario = flags.scenario.or(file_scenario).unwrap_or(Scenario::Scenario1);
    let protocols = match (&flags.protocols, sim.protocol.as_deref()) {
        (Some(p), _) => p.clone(),
        (None, Some(s)) => parse_protocols(s)
            .map_err(|_| ConfigError::invalid("simulation.protocol", format!("unknown protocol `{s}`")))?,
        (None, None) => ProtocolKind::ALL.to_vec(),
    };

    let mut field = scenario.field();
    let f = &file.field;
    set(&mut field.width, f.width);
    set(&mut field.height, f.height);
    set(&mut field.bs_position.x, f.bs_x);
    set(&mut field.bs_position.y, f.bs_y);
    set(&mut field.node_count, f.node_count);
    set(&mut field.initial_energy, f.initial_energy);
    field.validate()?;
    let custom_field = field != scenario.field();

    let max_range = file.fuzzy.max_range.unwrap_or_else(|| default_max_range(&field));
    if !(max_range.is_finite() && max_range > 0.0) {
        return Err(ConfigError::invalid("fuzzy.max_range", "must be > 0"));
    }

    let mut cfg = SimConfig::for_field(field, protocols[0]);
    cfg.proto.comr_threshold = max_range;
    apply_protocol(&mut cfg.proto, &file.protocol)?;
    let r = &file.radio;
    set(&mut cfg.radio.e_elec, r.e_elec);
    set(&mut cfg.radio.eps_fs, r.eps_fs);
    set(&mut cfg.radio.eps_mp, r.eps_mp);
    set(&mut cfg.radio.e_da, r.e_da);
    cfg.fuzzy = build_fuzzy(&field, max_range, &file.fuzzy)?;

    set(&mut cfg.rounds, sim.rounds);
    set(&mut cfg.runs, sim.runs);
    set(&mut cfg.seed, sim.seed);
    set(&mut cfg.fault_rate, sim.fault_rate);
    set(&mut cfg.rounds, flags.rounds);
    set(&mut cfg.runs, flags.runs);
    set(&mut cfg.seed, flags.seed);
    set(&mut cfg.fault_rate, flags.fault_rate);
    cfg.validate()?;

    let scenario_name = if custom_field { "custom".to_owned() } else { scenario.name().to_owned() };
    Ok(Resolved { base: cfg, protocols, scenario_name })
}

fn set<T: Copy>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn bits(field: &str, v: Option<u64>, slot: &mut Bits) -> Result<(), ConfigError> {
    if let Some(v) = v {
        *slot = Bits::new(v).map_err(|e| ConfigError::invalid(field, e.to_string()))?;
    }
    Ok(())
}

fn apply_protocol(p: &mut ProtocolConfig, s: &ProtocolSection) -> Result<(), ConfigError> {
    set(&mut p.t_probability, s.t_probability);
    set(&mut p.comr_threshold, s.comr_threshold);
    set(&mut p.failover_threshold, s.failover_threshold);
    set(&mut p.m_transmissions, s.m_transmissions);
    set(&mut p.adv_radius, s.adv_radius);
    bits("protocol.data_bits", s.data_bits, &mut p.data_bits)?;
    bits("protocol.ctrl_bits", s.ctrl_bits, &mut p.ctrl_bits)?;
    if let Some(c) = &s.candidacy {
        p.candidacy = c.parse::<Candidacy>()?;
    }
    if let Some(o) = &s.competition_order {
        p.competition_order = o.parse::<CompetitionOrder>()?;
    }
    Ok(())
}

fn build_fuzzy(field: &fihr::FieldConfig, max_range: f64, section: &FuzzySection) -> Result<FuzzyConfig, ConfigError> {
    fn wrap(name: &'static str) -> impl Fn(fihr::fuzzy::FuzzyError) -> ConfigError {
        move |e| ConfigError::invalid(format!("fuzzy.{name}"), e.to_string())
    }
    let energy = three_term_partition("energy", field.initial_energy, ENERGY_LABELS).map_err(wrap("energy"))?;
    let distance =
        three_term_partition("distance", field.max_bs_distance(), DISTANCE_LABELS).map_err(wrap("distance"))?;
    let comr = comr_partition(max_range).map_err(wrap("comr"))?;
    let energy = override_terms(energy, &section.energy)?;
    let distance = override_terms(distance, &section.distance)?;
    let comr = override_terms(comr, &section.comr)?;
    Ok(FuzzyConfig::new(energy, distance, comr, fihr::fuzzy::default_rules())?)
}

fn override_terms(var: FuzzyVariable, overrides: &BTreeMap<String, Vec<f64>>) -> Result<FuzzyVariable, ConfigError> {
    if overrides.is_empty() {
        return Ok(var);
    }
    let name = var.name().to_owned();
    let mut terms: Vec<(String, MembershipFunction)> = var.terms().iter().map(|t| (t.label.clone(), t.mf)).collect();
    for (label, bp) in overrides {
        let key = format!("fuzzy.{name}.{label}");
        let slot =
            terms.iter_mut().find(|(l, _)| l == label).ok_or_else(|| ConfigError::invalid(&key, "no such term"))?;
        let bad = |e: fihr::fuzzy::FuzzyError| ConfigError::invalid(&key, e.to_string());
        slot.1 = match (slot.1, bp.as_slice()) {
            (MembershipFunction::Triangular { .. }, &[l, p, r]) => {
                MembershipFunction::triangular(l, p, r).map_err(bad)?
            }
            (MembershipFunction::LeftShoulder { .. }, &[a, b]) => {
                MembershipFunction::left_shoulder(a, b).map_err(bad)?
            }
            (MembershipFunction::RightShoulder { .. }, &[c, d]) => {
                MembershipFunction::right_shoulder(c, d).map_err(bad)?
            }
            (MembershipFunction::Triangular { .. }, _) => {
                return Err(ConfigError::invalid(&key, "a triangular term takes 3 breakpoints"))
            }
            _ => return Err(ConfigError::invalid(&key, "a shoulder term takes 2 breakpoints")),
        };
    }
    let (lo, hi) = var.universe();
    FuzzyVariable::new(name.clone(), lo, hi, terms)
        .map_err(|e| ConfigError::invalid(format!("fuzzy.{name}"), e.to_string()))
}

/// Loads and resolves a config file with no command-line overrides.
pub fn parse_config(path: &Path) -> Result<SimConfig, LoadError> {
    let file = ConfigFile::load(path)?;
    Ok(resolve(&file, &FlagOverrides::default())?.base)
}
