//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Three operations are exposed: sampled membership curves of the fuzzy
//! variables, the communication-range response surface, and per-round
//! alive/residual curves of a protocol run.

use fihr::fuzzy::FuzzyVariable;
use fihr::metrics::average_runs;
use fihr::sim::run_single;
use fihr::{ProtocolKind, Scenario, SimConfig};
use wasm_bindgen::prelude::*;

fn scenario(name: &str) -> Result<Scenario, String> {
    name.parse::<Scenario>().map_err(|e| e.to_string())
}

/// Sampled grades of every term of one variable.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Curves {
    labels: Vec<String>,
    x: Vec<f64>,
    grades: Vec<f64>,
}

#[wasm_bindgen]
impl Curves {
    #[wasm_bindgen(getter)]
    pub fn labels(&self) -> Vec<String> {
        self.labels.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    /// Term-major: the grades of term `t` occupy `t * x.len() .. (t + 1) * x.len()`.
    #[wasm_bindgen(getter)]
    pub fn grades(&self) -> Vec<f64> {
        self.grades.clone()
    }
}

/// Mean per-round curves over the requested runs.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Lifetime {
    alive: Vec<f64>,
    residual: Vec<f64>,
    fnd: Option<f64>,
    hna: Option<f64>,
    throughput_kb: f64,
}

#[wasm_bindgen]
impl Lifetime {
    #[wasm_bindgen(getter)]
    pub fn alive(&self) -> Vec<f64> {
        self.alive.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn residual(&self) -> Vec<f64> {
        self.residual.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn fnd(&self) -> Option<f64> {
        self.fnd
    }

    #[wasm_bindgen(getter)]
    pub fn hna(&self) -> Option<f64> {
        self.hna
    }

    #[wasm_bindgen(getter)]
    pub fn throughput_kb(&self) -> f64 {
        self.throughput_kb
    }
}

pub fn sample_variable(var: &FuzzyVariable, samples: usize) -> Curves {
    let samples = samples.max(2);
    let (lo, hi) = var.universe();
    let x: Vec<f64> = (0..samples).map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64).collect();
    let grades = var.terms().iter().flat_map(|t| x.iter().map(|&v| t.mf.eval(v))).collect();
    Curves { labels: var.terms().iter().map(|t| t.label.clone()).collect(), x, grades }
}

pub fn membership_curves_native(scenario_name: &str, variable: &str, samples: usize) -> Result<Curves, String> {
    let cfg = SimConfig::preset(scenario(scenario_name)?, ProtocolKind::Fihr);
    let var = match variable {
        "energy" => &cfg.fuzzy.energy,
        "distance" => &cfg.fuzzy.distance,
        "comr" => &cfg.fuzzy.comr,
        other => return Err(format!("unknown variable `{other}`")),
    };
    Ok(sample_variable(var, samples))
}

/// Row-major `n x n` grid: row `i` is energy `i / (n - 1)` of the initial
/// charge, column `j` is distance `j / (n - 1)` of the maximum.
pub fn comr_surface_native(scenario_name: &str, n: usize) -> Result<Vec<f64>, String> {
    let n = n.max(2);
    let cfg = SimConfig::preset(scenario(scenario_name)?, ProtocolKind::Fihr);
    let (_, e_max) = cfg.fuzzy.energy.universe();
    let (_, d_max) = cfg.fuzzy.distance.universe();
    let step = |k: usize| k as f64 / (n - 1) as f64;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(cfg.fuzzy.compute_comr(e_max * step(i), d_max * step(j)).map_err(|e| e.to_string())?);
        }
    }
    Ok(out)
}

pub fn lifetime_native(
    scenario_name: &str,
    protocol: &str,
    rounds: u32,
    runs: u32,
    seed: u32,
    fault_rate: f64,
) -> Result<Lifetime, String> {
    let protocol: ProtocolKind = protocol.parse().map_err(|e: fihr::ConfigError| e.to_string())?;
    let mut cfg = SimConfig::preset(scenario(scenario_name)?, protocol);
    cfg.rounds = u64::from(rounds);
    cfg.runs = runs;
    cfg.seed = u64::from(seed);
    cfg.fault_rate = fault_rate;
    cfg.validate().map_err(|e| e.to_string())?;
    let results: Vec<_> = (0..runs).map(|k| run_single(&cfg, k)).collect();
    let mean = average_runs(&results).map_err(|e| e.to_string())?;
    Ok(Lifetime {
        alive: mean.series.iter().map(|m| m.alive).collect(),
        residual: mean.series.iter().map(|m| m.total_residual).collect(),
        fnd: mean.summary.fnd.mean,
        hna: mean.summary.hna.mean,
        throughput_kb: mean.summary.throughput_kb,
    })
}

#[wasm_bindgen]
pub fn membership_curves(scenario: &str, variable: &str, samples: usize) -> Result<Curves, JsError> {
    membership_curves_native(scenario, variable, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn comr_surface(scenario: &str, n: usize) -> Result<Vec<f64>, JsError> {
    comr_surface_native(scenario, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lifetime(
    scenario: &str,
    protocol: &str,
    rounds: u32,
    runs: u32,
    seed: u32,
    fault_rate: f64,
) -> Result<Lifetime, JsError> {
    lifetime_native(scenario, protocol, rounds, runs, seed, fault_rate).map_err(|e| JsError::new(&e))
}
