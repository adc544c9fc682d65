//! Single-cluster fixtures for backup takeover and dual-homed delivery.

use fihr::protocols::{self, Cluster, ClusterState, Link, RoundEvents};
use fihr::rng::{stream, Stream};
use fihr::sim::inject_faults;
use fihr::{Network, Point, ProtocolConfig, ProtocolKind, RadioParams, Scenario, SimConfig};

fn proto(threshold: u32) -> ProtocolConfig {
    let mut p = SimConfig::preset(Scenario::Scenario1, ProtocolKind::Fihr).proto;
    p.failover_threshold = threshold;
    p.m_transmissions = 3;
    p
}

/// Head 0, backup 1, ordinary members 2..=4, all near the base station.
fn cluster_fixture(link: Link<'_>) -> (Network, ClusterState) {
    let positions = vec![
        Point::new(40.0, 40.0),
        Point::new(44.0, 40.0),
        Point::new(40.0, 45.0),
        Point::new(36.0, 41.0),
        Point::new(41.0, 35.0),
    ];
    let mut net = Network::from_positions(positions, Point::new(50.0, 50.0), 3.0);
    let state = protocols::form_clusters_around(&mut net, link, &[(0, 10.0)], 0);
    // The backup is the richest member, which is whoever paid the least to join.
    let bch = state.clusters[0].bch.expect("backup chosen");
    assert_eq!(state.clusters[0].members.len(), 4);
    assert!(state.clusters[0].members.contains(&bch));
    (net, state)
}

fn round_one(protocol: ProtocolKind, threshold: u32) -> (RoundEvents, u32) {
    let radio = RadioParams::default();
    let p = proto(threshold);
    let link = Link::new(&radio, &p);
    let (mut net, mut state) = cluster_fixture(link);
    let failed = inject_faults(&state, &mut net, 1.0, &mut stream(0, Stream::Faults));
    assert_eq!(failed, vec![0]);
    let events = match protocol {
        ProtocolKind::Fihr => protocols::fihr_data_phase(&mut state, &mut net, link),
        ProtocolKind::Ihr => protocols::ihr_data_phase(&mut state, &mut net, link),
        ProtocolKind::Dhr => protocols::dhr_data_phase(&mut state, &mut net, link),
    };
    (events, state.clusters[0].inquiry_counter)
}

#[test]
fn backup_takes_over_when_threshold_is_one() {
    for protocol in [ProtocolKind::Fihr, ProtocolKind::Ihr] {
        let (events, _) = round_one(protocol, 1);
        assert_eq!(events.failovers, 1, "{protocol}");
        assert!(events.packets_delivered >= 1, "{protocol}");
    }
}

#[test]
fn default_threshold_loses_the_round() {
    for protocol in [ProtocolKind::Fihr, ProtocolKind::Ihr] {
        let (events, counter) = round_one(protocol, 3);
        assert_eq!(events.failovers, 0, "{protocol}");
        assert_eq!(events.packets_delivered, 0, "{protocol}");
        assert_eq!(counter, 3);
    }
}

#[test]
fn dual_homing_delivers_every_cycle() {
    let (events, _) = round_one(ProtocolKind::Dhr, 3);
    assert_eq!(events.packets_delivered, 3);
}

#[test]
fn dual_homed_member_pays_twice_the_data_transmission() {
    let radio = RadioParams::default();
    let mut p = proto(3);
    p.m_transmissions = 1;
    let link = Link::new(&radio, &p);
    // Member 2 sits at the same distance from both heads.
    let positions = vec![Point::new(30.0, 30.0), Point::new(40.0, 30.0), Point::new(35.0, 35.0)];
    let fresh = || {
        let net = Network::from_positions(positions.clone(), Point::new(50.0, 50.0), 3.0);
        let mut c = Cluster::new(0, 10.0);
        c.bch = Some(1);
        c.members = vec![1, 2];
        (net, ClusterState { clusters: vec![c], orphans: Vec::new() })
    };
    assert_eq!(fresh().0.distance(2, 0), fresh().0.distance(2, 1));

    let (mut ihr_net, mut ihr_state) = fresh();
    protocols::ihr_data_phase(&mut ihr_state, &mut ihr_net, link);
    let (mut dhr_net, mut dhr_state) = fresh();
    protocols::dhr_data_phase(&mut dhr_state, &mut dhr_net, link);

    let ihr_tx = ihr_net.node(2).charged.tx;
    let dhr_tx = dhr_net.node(2).charged.tx;
    assert_eq!(ihr_tx, radio.tx_energy(p.data_bits, ihr_net.distance(2, 0)));
    assert_eq!(dhr_tx, 2.0 * ihr_tx);
    assert_eq!(ihr_net.node(2).charged.rx, 0.0);
    assert_eq!(dhr_net.node(2).charged.rx, 0.0);
}
