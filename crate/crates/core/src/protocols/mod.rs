//! FIHR, IHR and DHR: cluster formation, backup selection and data phases.
//!
//! Every message is charged through [`Network::spend`], so a node that cannot
//! afford an action dies instead of performing it, and dead nodes neither send
//! nor receive afterwards.

mod data;
mod formation;

pub use data::{dhr_data_phase, fihr_data_phase, ihr_data_phase, informer_data_phase};
pub use formation::{
    dhr_cluster_formation, fihr_cluster_formation, form_clusters_around, ihr_cluster_formation, leach_threshold,
    non_overlapping,
};

use crate::config::ProtocolConfig;
use crate::network::{EnergyKind, Network, NodeId};
use crate::radio::{Bits, RadioParams};

#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub pch: NodeId,
    /// Communication range the head advertised with, meters.
    pub comr: f64,
    pub bch: Option<NodeId>,
    /// Every non-PCH node of the cluster, the BCH included.
    pub members: Vec<NodeId>,
    /// Unanswered inquiries from the BCH; reset at every formation.
    pub inquiry_counter: u32,
    /// Set once the BCH has broadcast its informer message and taken over.
    pub failed_over: bool,
}

impl Cluster {
    pub fn new(pch: NodeId, comr: f64) -> Self {
        Self { pch, comr, bch: None, members: Vec::new(), inquiry_counter: 0, failed_over: false }
    }

    /// Node currently collecting the cluster's data.
    pub fn acting_head(&self) -> NodeId {
        match (self.failed_over, self.bch) {
            (true, Some(b)) => b,
            _ => self.pch,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ClusterState {
    pub clusters: Vec<Cluster>,
    /// Alive nodes without a head this round; they report straight to the base station.
    pub orphans: Vec<NodeId>,
}

impl ClusterState {
    pub fn heads(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.clusters.iter().map(|c| c.pch)
    }

    /// Checks the structural invariants against the network: every alive node is
    /// placed exactly once, and each BCH is a member of its own cluster.
    pub fn check_partition(&self, net: &Network) -> Result<(), String> {
        let mut seen = vec![0u32; net.len()];
        for c in &self.clusters {
            seen[c.pch] += 1;
            for &m in &c.members {
                seen[m] += 1;
            }
            if let Some(b) = c.bch {
                if b == c.pch {
                    return Err(format!("node {b} is both PCH and BCH"));
                }
                if !c.members.contains(&b) {
                    return Err(format!("BCH {b} is not a member of cluster {}", c.pch));
                }
            }
        }
        for &o in &self.orphans {
            seen[o] += 1;
        }
        for id in net.alive_ids() {
            if seen[id] != 1 {
                return Err(format!("alive node {id} placed {} times", seen[id]));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RoundEvents {
    /// Distinct sensed packets that reached the base station.
    pub packets_delivered: u64,
    pub failovers: u64,
    /// Joules drawn from each node during the phase, indexed by node id.
    pub energy_spent: Vec<f64>,
}

/// Radio and protocol parameters bundled for message accounting.
#[derive(Debug, Clone, Copy)]
pub struct Link<'a> {
    pub radio: &'a RadioParams,
    pub proto: &'a ProtocolConfig,
}

impl<'a> Link<'a> {
    pub fn new(radio: &'a RadioParams, proto: &'a ProtocolConfig) -> Self {
        Self { radio, proto }
    }

    /// Point-to-point message. The sender pays regardless of the receiver's
    /// state; returns whether the receiver got it.
    pub(crate) fn unicast(&self, net: &mut Network, from: NodeId, to: NodeId, bits: Bits) -> bool {
        self.transmit(net, from, to, bits) && net.is_alive(to) && self.receive(net, to, bits)
    }

    /// Sender side of a point-to-point message only.
    pub(crate) fn transmit(&self, net: &mut Network, from: NodeId, to: NodeId, bits: Bits) -> bool {
        let d = net.distance(from, to);
        net.spend(from, self.radio.tx_energy(bits, d), EnergyKind::Tx)
    }

    pub(crate) fn receive(&self, net: &mut Network, at: NodeId, bits: Bits) -> bool {
        net.spend(at, self.radio.rx_energy(bits), EnergyKind::Rx)
    }

    /// Broadcast at `range`; every alive node in `receivers` pays reception.
    /// Returns whether the sender managed to transmit.
    pub(crate) fn broadcast(
        &self,
        net: &mut Network,
        from: NodeId,
        range: f64,
        bits: Bits,
        receivers: &[NodeId],
    ) -> bool {
        if !net.spend(from, self.radio.tx_energy(bits, range), EnergyKind::Tx) {
            return false;
        }
        let rx = self.radio.rx_energy(bits);
        for &r in receivers {
            if r != from && net.is_alive(r) {
                net.spend(r, rx, EnergyKind::Rx);
            }
        }
        true
    }

    /// Head aggregates `signals` readings and forwards one packet to the base station.
    pub(crate) fn forward_to_bs(&self, net: &mut Network, head: NodeId, signals: u64) -> bool {
        let bits = self.proto.data_bits;
        let agg = self.radio.aggregation_energy(bits, signals.max(1)).expect("signals >= 1");
        if !net.spend(head, agg, EnergyKind::Aggregation) {
            return false;
        }
        self.direct_to_bs(net, head)
    }

    pub(crate) fn direct_to_bs(&self, net: &mut Network, node: NodeId) -> bool {
        let d = net.distance_to_bs(node);
        net.spend(node, self.radio.tx_energy(self.proto.data_bits, d), EnergyKind::Tx)
    }
}

/// Residual energy of every node, for before/after accounting.
pub(crate) fn residuals(net: &Network) -> Vec<f64> {
    net.nodes().iter().map(|n| n.residual_energy).collect()
}

pub(crate) fn spent_since(net: &Network, before: &[f64]) -> Vec<f64> {
    net.nodes().iter().zip(before).map(|(n, b)| b - n.residual_energy).collect()
}
