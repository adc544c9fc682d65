use rand::Rng;

use super::{Cluster, ClusterState, Link};
use crate::config::{Candidacy, CompetitionOrder};
use crate::fuzzy::FuzzyConfig;
use crate::network::{Network, NodeId, Role};

/// Accepts `candidate` against the heads already accepted when its range disk
/// does not reach any of theirs: `comr_i <= d(i, j) - comr_j` for every `j`.
pub fn non_overlapping(net: &Network, candidate: NodeId, comr: f64, accepted: &[(NodeId, f64)]) -> bool {
    accepted.iter().all(|&(j, comr_j)| comr <= net.distance(candidate, j) - comr_j)
}

/// LEACH election threshold for round `round` (0-based).
///
/// Nodes that already served in the current epoch of `ceil(1/p)` rounds get 0.
pub fn leach_threshold(p: f64, round: u64, was_head_this_epoch: bool) -> f64 {
    if was_head_this_epoch {
        return 0.0;
    }
    let epoch = epoch_len(p);
    let t = p / (1.0 - p * (round % epoch) as f64);
    if t.is_finite() && t > 0.0 {
        t.min(1.0)
    } else {
        1.0
    }
}

fn epoch_len(p: f64) -> u64 {
    ((1.0 / p).ceil() as u64).max(1)
}

/// One uniform draw against the LEACH threshold of node `id`.
fn leach_draw<R: Rng>(net: &Network, id: NodeId, p: f64, round: u64, rng: &mut R) -> bool {
    let epoch = epoch_len(p);
    let served = net.node(id).last_head_round.is_some_and(|r| r / epoch == round / epoch);
    rng.random::<f64>() < leach_threshold(p, round, served)
}

/// FIHR formation.
///
/// Tentative heads are drawn against `t_probability` (through the LEACH
/// rotation threshold by default), each sizes its range with the fuzzy
/// controller, candidates above `comr_threshold` withdraw, and the rest claim
/// non-overlapping ranges one at a time in `competition_order`.
pub fn fihr_cluster_formation<R: Rng>(
    net: &mut Network,
    link: Link<'_>,
    fuzzy: &FuzzyConfig,
    round: u64,
    rng: &mut R,
) -> ClusterState {
    net.reset_roles();
    let alive: Vec<NodeId> = net.alive_ids().collect();
    let t = link.proto.t_probability;
    let mut candidates: Vec<NodeId> = match link.proto.candidacy {
        Candidacy::Rotating => alive.iter().copied().filter(|&id| leach_draw(net, id, t, round, rng)).collect(),
        Candidacy::Fixed => alive.iter().copied().filter(|_| rng.random::<f64>() < t).collect(),
    };
    if link.proto.competition_order == CompetitionOrder::ResidualEnergy {
        candidates.sort_by(|&a, &b| {
            let (ea, eb) = (net.node(a).residual_energy, net.node(b).residual_energy);
            eb.total_cmp(&ea).then(a.cmp(&b))
        });
    }

    let mut accepted: Vec<(NodeId, f64)> = Vec::new();
    for id in candidates {
        if !net.is_alive(id) {
            continue;
        }
        let comr = fuzzy
            .compute_comr(net.node(id).residual_energy, net.distance_to_bs(id))
            .expect("covered universes always fire a rule");
        if comr > link.proto.comr_threshold {
            continue;
        }
        if !non_overlapping(net, id, comr, &accepted) {
            continue;
        }
        let in_range: Vec<NodeId> = net.alive_ids().filter(|&n| n != id && net.distance(id, n) <= comr).collect();
        if link.broadcast(net, id, comr, link.proto.ctrl_bits, &in_range) {
            accepted.push((id, comr));
        }
    }
    form_clusters_around(net, link, &accepted, round)
}

/// IHR formation: LEACH self-election, advertisements at `adv_radius`.
pub fn ihr_cluster_formation<R: Rng>(net: &mut Network, link: Link<'_>, round: u64, rng: &mut R) -> ClusterState {
    net.reset_roles();
    let p = link.proto.t_probability;
    let alive: Vec<NodeId> = net.alive_ids().collect();
    let elected: Vec<NodeId> = alive.into_iter().filter(|&id| leach_draw(net, id, p, round, rng)).collect();

    let radius = link.proto.adv_radius;
    let mut heads = Vec::with_capacity(elected.len());
    for id in elected {
        if !net.is_alive(id) {
            continue;
        }
        let in_range: Vec<NodeId> = net.alive_ids().filter(|&n| n != id && net.distance(id, n) <= radius).collect();
        if link.broadcast(net, id, radius, link.proto.ctrl_bits, &in_range) {
            heads.push((id, radius));
        }
    }
    form_clusters_around(net, link, &heads, round)
}

/// DHR elects its heads exactly like IHR; only the data phase differs.
pub fn dhr_cluster_formation<R: Rng>(net: &mut Network, link: Link<'_>, round: u64, rng: &mut R) -> ClusterState {
    ihr_cluster_formation(net, link, round, rng)
}

/// Joins every other alive node to its nearest head, then lets each head pick
/// its highest-energy member as backup and announce it.
pub fn form_clusters_around(net: &mut Network, link: Link<'_>, heads: &[(NodeId, f64)], round: u64) -> ClusterState {
    let heads: Vec<(NodeId, f64)> = heads.iter().copied().filter(|&(h, _)| net.is_alive(h)).collect();
    if heads.is_empty() {
        return ClusterState { clusters: Vec::new(), orphans: net.alive_ids().collect() };
    }
    let mut clusters: Vec<Cluster> = heads.iter().map(|&(h, comr)| Cluster::new(h, comr)).collect();
    for &(h, _) in &heads {
        net.set_role(h, Role::Pch);
        net.mark_head(h, round);
    }

    let joiners: Vec<NodeId> = net.alive_ids().filter(|id| !heads.iter().any(|&(h, _)| h == *id)).collect();
    for id in joiners {
        let (idx, _) = clusters
            .iter()
            .enumerate()
            .map(|(i, c)| (i, net.distance(id, c.pch)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("at least one head");
        let pch = clusters[idx].pch;
        link.unicast(net, id, pch, link.proto.ctrl_bits);
        clusters[idx].members.push(id);
    }

    for c in &mut clusters {
        if !net.is_alive(c.pch) {
            continue;
        }
        let best = c.members.iter().copied().filter(|&m| net.is_alive(m)).fold(None::<NodeId>, |best, m| match best {
            Some(b) if net.node(b).residual_energy >= net.node(m).residual_energy => Some(b),
            _ => Some(m),
        });
        let Some(bch) = best else { continue };
        if link.broadcast(net, c.pch, c.comr, link.proto.ctrl_bits, &c.members) && net.is_alive(bch) {
            c.bch = Some(bch);
            net.set_role(bch, Role::Bch);
        }
    }
    ClusterState { clusters, orphans: Vec::new() }
}
