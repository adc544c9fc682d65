//! Round loop: formation, fault injection, data phase, metrics snapshot.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::{ConfigError, ProtocolKind, SimConfig};
use crate::metrics::{self, average_runs, Averaged, Summary};
use crate::network::{Network, NodeId};
use crate::protocols::{self, ClusterState, Link, RoundEvents};
use crate::radio::Bits;
use crate::rng::{stream, Stream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundMetrics {
    /// 1-based round index.
    pub round: u64,
    pub alive: usize,
    pub dead: usize,
    pub total_residual: f64,
    pub packets_cum: u64,
    pub failovers_cum: u64,
}

/// Each current PCH fails permanently with probability `fault_rate`.
/// Returns the ids that failed.
pub fn inject_faults<R: Rng>(state: &ClusterState, net: &mut Network, fault_rate: f64, rng: &mut R) -> Vec<NodeId> {
    if fault_rate <= 0.0 {
        return Vec::new();
    }
    let mut failed = Vec::new();
    for pch in state.heads() {
        if rng.random::<f64>() < fault_rate && net.is_alive(pch) {
            net.fail(pch);
            failed.push(pch);
        }
    }
    failed
}

/// One independent simulation run.
#[derive(Debug, Clone)]
pub struct Simulation<'a> {
    cfg: &'a SimConfig,
    net: Network,
    election: ChaCha8Rng,
    faults: ChaCha8Rng,
    round: u64,
    packets_cum: u64,
    failovers_cum: u64,
}

impl<'a> Simulation<'a> {
    /// Deploys a fresh network from `seed`.
    pub fn new(cfg: &'a SimConfig, seed: u64) -> Self {
        let net = Network::deploy(&cfg.field, &mut stream(seed, Stream::Deployment));
        Self::with_network(cfg, net, seed)
    }

    pub fn with_network(cfg: &'a SimConfig, net: Network, seed: u64) -> Self {
        Self {
            cfg,
            net,
            election: stream(seed, Stream::Election),
            faults: stream(seed, Stream::Faults),
            round: 0,
            packets_cum: 0,
            failovers_cum: 0,
        }
    }

    pub fn network(&self) -> &Network {
        &self.net
    }

    pub fn snapshot(&self) -> RoundMetrics {
        let alive = self.net.alive_count();
        RoundMetrics {
            round: self.round,
            alive,
            dead: self.net.len() - alive,
            total_residual: self.net.total_residual(),
            packets_cum: self.packets_cum,
            failovers_cum: self.failovers_cum,
        }
    }

    pub fn form(&mut self) -> ClusterState {
        let link = Link::new(&self.cfg.radio, &self.cfg.proto);
        let r = self.round;
        match self.cfg.protocol {
            ProtocolKind::Fihr => {
                protocols::fihr_cluster_formation(&mut self.net, link, &self.cfg.fuzzy, r, &mut self.election)
            }
            ProtocolKind::Ihr => protocols::ihr_cluster_formation(&mut self.net, link, r, &mut self.election),
            ProtocolKind::Dhr => protocols::dhr_cluster_formation(&mut self.net, link, r, &mut self.election),
        }
    }

    pub fn data_phase(&mut self, state: &mut ClusterState) -> RoundEvents {
        let link = Link::new(&self.cfg.radio, &self.cfg.proto);
        match self.cfg.protocol {
            ProtocolKind::Fihr => protocols::fihr_data_phase(state, &mut self.net, link),
            ProtocolKind::Ihr => protocols::ihr_data_phase(state, &mut self.net, link),
            ProtocolKind::Dhr => protocols::dhr_data_phase(state, &mut self.net, link),
        }
    }

    /// Formation, fault injection, data phase. A dead network only advances the round counter.
    pub fn run_round(&mut self) -> RoundMetrics {
        if self.net.alive_count() > 0 {
            let mut state = self.form();
            inject_faults(&state, &mut self.net, self.cfg.fault_rate, &mut self.faults);
            let events = self.data_phase(&mut state);
            self.packets_cum += events.packets_delivered;
            self.failovers_cum += events.failovers;
        }
        self.round += 1;
        self.snapshot()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub run: u32,
    pub seed: u64,
    pub series: Vec<RoundMetrics>,
    pub summary: Summary,
    /// Sum of every charge drawn from batteries during the run.
    pub energy_charged: f64,
    pub initial_energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub protocol: ProtocolKind,
    pub data_bits: Bits,
    pub node_count: usize,
    pub runs: Vec<RunResult>,
    pub mean: Averaged,
}

/// Runs one simulation with seed `cfg.seed + run`, for `cfg.rounds` rounds.
/// After the network dies the last snapshot repeats with advancing round numbers.
pub fn run_single(cfg: &SimConfig, run: u32) -> RunResult {
    let seed = cfg.seed.wrapping_add(u64::from(run));
    let mut sim = Simulation::new(cfg, seed);
    let initial_energy = sim.network().total_residual();
    let series: Vec<RoundMetrics> = (0..cfg.rounds).map(|_| sim.run_round()).collect();
    let summary = metrics::summarize(&series, cfg.field.node_count, cfg.proto.data_bits);
    RunResult { run, seed, series, summary, energy_charged: sim.network().ledger().total(), initial_energy }
}

/// Runs `cfg.runs` independent simulations and averages them. Results are
/// ordered by run index whatever the execution order.
pub fn run_simulation(cfg: &SimConfig) -> Result<SimulationResult, ConfigError> {
    cfg.validate()?;
    #[cfg(feature = "parallel")]
    let runs: Vec<RunResult> = {
        use rayon::prelude::*;
        (0..cfg.runs).into_par_iter().map(|k| run_single(cfg, k)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let runs: Vec<RunResult> = (0..cfg.runs).map(|k| run_single(cfg, k)).collect();
    let mean = average_runs(&runs).expect("runs >= 1 with a shared horizon");
    Ok(SimulationResult {
        protocol: cfg.protocol,
        data_bits: cfg.proto.data_bits,
        node_count: cfg.field.node_count,
        runs,
        mean,
    })
}
