use super::{residuals, spent_since, ClusterState, Link, RoundEvents};
use crate::network::{Network, NodeId};

/// Data phase shared by FIHR and IHR.
///
/// Each of the `m_transmissions` cycles runs, per cluster: the BCH inquiry
/// (counter up, back down on a response), the failover check, then member
/// data to the acting head, which aggregates and forwards one packet. Orphans
/// report directly. Inquiries precede data, so a failover detected in a cycle
/// already redirects that cycle's data.
pub fn informer_data_phase(state: &mut ClusterState, net: &mut Network, link: Link<'_>) -> RoundEvents {
    let before = residuals(net);
    let ctrl = link.proto.ctrl_bits;
    let data = link.proto.data_bits;
    let mut events = RoundEvents::default();

    for _ in 0..link.proto.m_transmissions {
        for c in &mut state.clusters {
            if let (false, Some(bch)) = (c.failed_over, c.bch) {
                if net.is_alive(bch) && link.transmit(net, bch, c.pch, ctrl) {
                    c.inquiry_counter += 1;
                    if net.is_alive(c.pch) && link.receive(net, c.pch, ctrl) && link.unicast(net, c.pch, bch, ctrl) {
                        c.inquiry_counter -= 1;
                    }
                }
                if c.inquiry_counter > link.proto.failover_threshold
                    && net.is_alive(bch)
                    && link.broadcast(net, bch, c.comr, ctrl, &c.members)
                {
                    c.failed_over = true;
                    events.failovers += 1;
                }
            }

            let head = c.acting_head();
            let senders: Vec<NodeId> = std::iter::once(c.pch)
                .chain(c.members.iter().copied())
                .filter(|&n| n != head && net.is_alive(n))
                .collect();
            let mut received = 0u64;
            for m in senders {
                if link.unicast(net, m, head, data) {
                    received += 1;
                }
            }
            if net.is_alive(head) && link.forward_to_bs(net, head, received + 1) {
                events.packets_delivered += 1;
            }
        }
        events.packets_delivered += orphans_report(&state.orphans, net, link);
    }
    events.energy_spent = spent_since(net, &before);
    events
}

pub fn fihr_data_phase(state: &mut ClusterState, net: &mut Network, link: Link<'_>) -> RoundEvents {
    informer_data_phase(state, net, link)
}

pub fn ihr_data_phase(state: &mut ClusterState, net: &mut Network, link: Link<'_>) -> RoundEvents {
    informer_data_phase(state, net, link)
}

/// DHR: members send every packet to both heads, both heads forward. A cycle
/// counts one delivered packet per cluster when at least one head got through.
pub fn dhr_data_phase(state: &mut ClusterState, net: &mut Network, link: Link<'_>) -> RoundEvents {
    let before = residuals(net);
    let data = link.proto.data_bits;
    let mut events = RoundEvents::default();

    for _ in 0..link.proto.m_transmissions {
        for c in &state.clusters {
            let heads: Vec<NodeId> = std::iter::once(c.pch).chain(c.bch).collect();
            let mut received = vec![0u64; heads.len()];
            let senders: Vec<NodeId> =
                c.members.iter().copied().filter(|&n| Some(n) != c.bch && net.is_alive(n)).collect();
            for m in senders {
                for (h, &head) in heads.iter().enumerate() {
                    if net.is_alive(m) && link.unicast(net, m, head, data) {
                        received[h] += 1;
                    }
                }
            }
            let mut delivered = false;
            for (h, &head) in heads.iter().enumerate() {
                if net.is_alive(head) && link.forward_to_bs(net, head, received[h] + 1) {
                    delivered = true;
                }
            }
            if delivered {
                events.packets_delivered += 1;
            }
        }
        events.packets_delivered += orphans_report(&state.orphans, net, link);
    }
    events.energy_spent = spent_since(net, &before);
    events
}

fn orphans_report(orphans: &[NodeId], net: &mut Network, link: Link<'_>) -> u64 {
    let mut delivered = 0;
    for &o in orphans {
        if net.is_alive(o) && link.direct_to_bs(net, o) {
            delivered += 1;
        }
    }
    delivered
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ProtocolConfig;
    use crate::network::{FieldConfig, Point, Role};
    use crate::protocols::form_clusters_around;
    use crate::radio::RadioParams;

    fn proto(threshold: u32) -> ProtocolConfig {
        let mut p = ProtocolConfig::defaults_for(&FieldConfig {
            width: 100.0,
            height: 100.0,
            bs_position: Point::new(50.0, 50.0),
            node_count: 6,
            initial_energy: 3.0,
        });
        p.failover_threshold = threshold;
        p
    }

    /// One head at the origin-ish corner with five members around it.
    fn fixture() -> Network {
        let positions = vec![
            Point::new(30.0, 30.0),
            Point::new(35.0, 30.0),
            Point::new(30.0, 36.0),
            Point::new(25.0, 30.0),
            Point::new(30.0, 22.0),
            Point::new(34.0, 34.0),
        ];
        Network::from_positions(positions, Point::new(50.0, 50.0), 3.0)
    }

    fn formed(net: &mut Network, link: Link<'_>) -> ClusterState {
        let state = form_clusters_around(net, link, &[(0, 10.0)], 0);
        assert_eq!(state.clusters[0].members.len(), 5);
        assert!(state.clusters[0].bch.is_some());
        state
    }

    #[test]
    fn fault_free_round_answers_every_inquiry() {
        let radio = RadioParams::default();
        let p = proto(3);
        let link = Link::new(&radio, &p);
        let mut net = fixture();
        let mut state = formed(&mut net, link);
        let ev = informer_data_phase(&mut state, &mut net, link);
        assert_eq!(ev.packets_delivered, 3);
        assert_eq!(ev.failovers, 0);
        assert_eq!(state.clusters[0].inquiry_counter, 0);
    }

    #[test]
    fn failover_after_two_missed_inquiries() {
        let radio = RadioParams::default();
        let p = proto(1);
        let link = Link::new(&radio, &p);
        let mut net = fixture();
        let mut state = formed(&mut net, link);
        net.fail(0);
        let ev = informer_data_phase(&mut state, &mut net, link);
        // cycle 1: counter 1, data lost; cycles 2 and 3: BCH collects.
        assert_eq!(ev.failovers, 1);
        assert_eq!(ev.packets_delivered, 2);
        assert!(state.clusters[0].failed_over);
        // The faulted head spends nothing.
        assert_eq!(ev.energy_spent[0], 0.0);
    }

    #[test]
    fn default_threshold_never_fails_over_within_a_round() {
        let radio = RadioParams::default();
        let p = proto(3);
        let link = Link::new(&radio, &p);
        let mut net = fixture();
        let mut state = formed(&mut net, link);
        net.fail(0);
        let ev = informer_data_phase(&mut state, &mut net, link);
        assert_eq!(ev.failovers, 0);
        assert_eq!(ev.packets_delivered, 0);
        assert_eq!(state.clusters[0].inquiry_counter, 3);
    }

    #[test]
    fn dhr_survives_primary_fault() {
        let radio = RadioParams::default();
        let p = proto(3);
        let link = Link::new(&radio, &p);
        let mut net = fixture();
        let mut state = formed(&mut net, link);
        let ev = dhr_data_phase(&mut state, &mut net, link);
        assert_eq!(ev.packets_delivered, 3);

        let mut net = fixture();
        let mut state = formed(&mut net, link);
        net.fail(0);
        let ev = dhr_data_phase(&mut state, &mut net, link);
        assert_eq!(ev.packets_delivered, 3);

        let mut net = fixture();
        let mut state = formed(&mut net, link);
        let bch = state.clusters[0].bch.unwrap();
        net.fail(0);
        net.fail(bch);
        assert_eq!(net.node(bch).role, Role::Nch);
        let ev = dhr_data_phase(&mut state, &mut net, link);
        assert_eq!(ev.packets_delivered, 0);
    }

    #[test]
    fn orphans_report_directly() {
        let radio = RadioParams::default();
        let p = proto(3);
        let link = Link::new(&radio, &p);
        let mut net = fixture();
        let mut state = form_clusters_around(&mut net, link, &[], 0);
        let ev = informer_data_phase(&mut state, &mut net, link);
        assert_eq!(ev.packets_delivered, 6 * 3);
        let mut net = fixture();
        let mut state = form_clusters_around(&mut net, link, &[], 0);
        let ev = dhr_data_phase(&mut state, &mut net, link);
        assert_eq!(ev.packets_delivered, 6 * 3);
    }
}
