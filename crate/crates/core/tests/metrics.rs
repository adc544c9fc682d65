use fihr::metrics::{self, compute_fnd, compute_hna, parse_series_csv, series_csv, throughput_kb};
use fihr::{Bits, ProtocolKind, RoundMetrics, Scenario, SimConfig};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_series(rng: &mut ChaCha8Rng, n: usize) -> Vec<RoundMetrics> {
    let len = rng.random_range(0..400);
    let mut alive = n;
    let mut residual = n as f64 * 3.0;
    (0..len)
        .map(|i| {
            if rng.random::<f64>() < 0.05 {
                alive -= rng.random_range(0..=alive.min(10));
            }
            residual -= rng.random::<f64>() * residual * 0.01;
            RoundMetrics {
                round: i as u64 + 1,
                alive,
                dead: n - alive,
                total_residual: residual,
                packets_cum: i as u64 * 7,
                failovers_cum: 0,
            }
        })
        .collect()
}

#[test]
fn fnd_and_hna_agree_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let n = rng.random_range(1..=200);
        let s = random_series(&mut rng, n);
        let mut fnd = None;
        let mut hna = None;
        for m in &s {
            if fnd.is_none() && m.alive < n {
                fnd = Some(m.round);
            }
            if hna.is_none() && m.alive as f64 <= n as f64 / 2.0 {
                hna = Some(m.round);
            }
        }
        assert_eq!(compute_fnd(&s), fnd);
        assert_eq!(compute_hna(&s, n), hna);
    }
}

#[test]
fn one_packet_is_four_kilobytes() {
    assert_eq!(throughput_kb(1, Bits::new(32000).unwrap()), 4.0);
}

fn arb_series() -> impl Strategy<Value = Vec<RoundMetrics>> {
    prop::collection::vec((0usize..=100, 0.0f64..300.0, 0u64..100_000, 0u64..1000), 0..60).prop_map(|rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, (alive, r, p, f))| RoundMetrics {
                round: i as u64 + 1,
                alive,
                dead: 100 - alive,
                total_residual: r,
                packets_cum: p,
                failovers_cum: f,
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn series_csv_round_trips(series in arb_series(), bits in 1u64..100_000) {
        let bits = Bits::new(bits).unwrap();
        let text = series_csv(&series, bits);
        prop_assert_eq!(parse_series_csv(&text, bits).unwrap(), series);
    }
}

#[test]
fn emitted_files_are_byte_identical_across_invocations() {
    let write = || {
        let dir = tempfile::tempdir().unwrap();
        let results: Vec<_> = ProtocolKind::ALL
            .iter()
            .map(|&p| {
                let mut cfg = SimConfig::preset(Scenario::Scenario1, p);
                cfg.rounds = 120;
                cfg.runs = 3;
                cfg.seed = 17;
                fihr::run_simulation(&cfg).unwrap()
            })
            .collect();
        let refs: Vec<_> = results.iter().collect();
        let paths = metrics::emit_csv(&refs, "scenario1", dir.path()).unwrap();
        assert_eq!(paths.len(), 3 * 4 + 1);
        paths.iter().map(|p| (p.file_name().unwrap().to_owned(), std::fs::read(p).unwrap())).collect::<Vec<_>>()
    };
    assert_eq!(write(), write());
}

#[test]
fn summary_lists_runs_then_mean() {
    let mut cfg = SimConfig::preset(Scenario::Scenario1, ProtocolKind::Dhr);
    cfg.rounds = 400;
    cfg.runs = 2;
    let res = fihr::run_simulation(&cfg).unwrap();
    let text = metrics::summary_csv(&[&res]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], metrics::SUMMARY_HEADER);
    assert!(lines[1].starts_with("dhr,0,"));
    assert!(lines[2].starts_with("dhr,1,"));
    assert!(lines[3].starts_with("dhr,mean,"));
    assert_eq!(lines.len(), 4);
}
