//! Lifetime metrics (FND, HNA), throughput, run averaging and CSV output.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::ProtocolKind;
use crate::radio::Bits;
use crate::sim::{RoundMetrics, RunResult, SimulationResult};

#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot average zero runs")]
    NoRuns,
    #[error("run {run} has {got} rounds, expected {expected}")]
    Horizon { run: usize, expected: usize, got: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Rounds at which residual energy is reported in summaries.
pub const RESIDUAL_CHECKPOINTS: [u64; 5] = [50, 100, 200, 300, 400];

pub const SERIES_HEADER: &str = "round,alive,dead,total_residual_j,packets_cum_kb,failovers_cum";
pub const SUMMARY_HEADER: &str = "protocol,run,fnd,hna,throughput_kb";

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub fnd: Option<u64>,
    pub hna: Option<u64>,
    pub throughput_kb: f64,
    pub residual_at: BTreeMap<u64, f64>,
}

/// First round in which at least one node is dead.
pub fn compute_fnd(series: &[RoundMetrics]) -> Option<u64> {
    series.iter().find(|m| m.dead >= 1).map(|m| m.round)
}

/// First round in which at most half the nodes are alive.
pub fn compute_hna(series: &[RoundMetrics], node_count: usize) -> Option<u64> {
    series.iter().find(|m| 2 * m.alive <= node_count).map(|m| m.round)
}

/// Kilobytes (1000 bytes) carried by `packets` packets of `data_bits` bits.
pub fn throughput_kb(packets: u64, data_bits: Bits) -> f64 {
    packets as f64 * data_bits.get() as f64 / 8.0 / 1000.0
}

pub fn summarize(series: &[RoundMetrics], node_count: usize, data_bits: Bits) -> Summary {
    let packets = series.last().map_or(0, |m| m.packets_cum);
    let residual_at = RESIDUAL_CHECKPOINTS
        .iter()
        .filter_map(|&r| series.iter().find(|m| m.round == r).map(|m| (r, m.total_residual)))
        .collect();
    Summary {
        fnd: compute_fnd(series),
        hna: compute_hna(series, node_count),
        throughput_kb: throughput_kb(packets, data_bits),
        residual_at,
    }
}

/// Per-round arithmetic mean over runs.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanRoundMetrics {
    pub round: u64,
    pub alive: f64,
    pub dead: f64,
    pub total_residual: f64,
    pub packets_cum: f64,
    pub failovers_cum: f64,
}

/// Mean of an optional metric over the runs where it is defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanOf {
    pub mean: Option<f64>,
    pub defined: usize,
    pub runs: usize,
}

impl MeanOf {
    fn of(values: impl Iterator<Item = Option<u64>>) -> Self {
        let (mut sum, mut defined, mut runs) = (0.0, 0, 0);
        for v in values {
            runs += 1;
            if let Some(v) = v {
                sum += v as f64;
                defined += 1;
            }
        }
        Self { mean: (defined > 0).then(|| sum / defined as f64), defined, runs }
    }

    /// True when some runs never reached the event and were left out of the mean.
    pub fn is_partial(&self) -> bool {
        self.defined < self.runs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanSummary {
    pub fnd: MeanOf,
    pub hna: MeanOf,
    pub throughput_kb: f64,
    pub residual_at: BTreeMap<u64, f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Averaged {
    pub series: Vec<MeanRoundMetrics>,
    pub summary: MeanSummary,
}

pub fn average_runs(runs: &[RunResult]) -> Result<Averaged, MetricsError> {
    let first = runs.first().ok_or(MetricsError::NoRuns)?;
    let horizon = first.series.len();
    for (i, r) in runs.iter().enumerate() {
        if r.series.len() != horizon {
            return Err(MetricsError::Horizon { run: i, expected: horizon, got: r.series.len() });
        }
    }
    let n = runs.len() as f64;
    let series = (0..horizon)
        .map(|i| {
            let mean = |f: &dyn Fn(&RoundMetrics) -> f64| runs.iter().map(|r| f(&r.series[i])).sum::<f64>() / n;
            MeanRoundMetrics {
                round: first.series[i].round,
                alive: mean(&|m| m.alive as f64),
                dead: mean(&|m| m.dead as f64),
                total_residual: mean(&|m| m.total_residual),
                packets_cum: mean(&|m| m.packets_cum as f64),
                failovers_cum: mean(&|m| m.failovers_cum as f64),
            }
        })
        .collect();
    let residual_at = first
        .summary
        .residual_at
        .keys()
        .map(|&k| {
            let sum: f64 = runs.iter().map(|r| r.summary.residual_at.get(&k).copied().unwrap_or(0.0)).sum();
            (k, sum / n)
        })
        .collect();
    let summary = MeanSummary {
        fnd: MeanOf::of(runs.iter().map(|r| r.summary.fnd)),
        hna: MeanOf::of(runs.iter().map(|r| r.summary.hna)),
        throughput_kb: runs.iter().map(|r| r.summary.throughput_kb).sum::<f64>() / n,
        residual_at,
    };
    Ok(Averaged { series, summary })
}

fn write_file(path: &Path, contents: &str) -> Result<(), MetricsError> {
    fs::write(path, contents).map_err(|source| MetricsError::Io { path: path.to_owned(), source })
}

fn csv_string(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header.split(',')).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn series_csv(series: &[RoundMetrics], data_bits: Bits) -> String {
    csv_string(
        SERIES_HEADER,
        series.iter().map(|m| {
            vec![
                m.round.to_string(),
                m.alive.to_string(),
                m.dead.to_string(),
                m.total_residual.to_string(),
                throughput_kb(m.packets_cum, data_bits).to_string(),
                m.failovers_cum.to_string(),
            ]
        }),
    )
}

pub fn mean_series_csv(series: &[MeanRoundMetrics], data_bits: Bits) -> String {
    let kb_per_packet = throughput_kb(1, data_bits);
    csv_string(
        SERIES_HEADER,
        series.iter().map(|m| {
            vec![
                m.round.to_string(),
                m.alive.to_string(),
                m.dead.to_string(),
                m.total_residual.to_string(),
                (m.packets_cum * kb_per_packet).to_string(),
                m.failovers_cum.to_string(),
            ]
        }),
    )
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Per-run rows followed by a `mean` row for each result.
pub fn summary_csv(results: &[&SimulationResult]) -> String {
    let rows = results.iter().flat_map(|res| {
        let per_run = res.runs.iter().map(|r| {
            vec![
                res.protocol.to_string(),
                r.run.to_string(),
                opt(r.summary.fnd),
                opt(r.summary.hna),
                r.summary.throughput_kb.to_string(),
            ]
        });
        let s = &res.mean.summary;
        let mean = vec![
            res.protocol.to_string(),
            "mean".to_string(),
            opt(s.fnd.mean),
            opt(s.hna.mean),
            s.throughput_kb.to_string(),
        ];
        per_run.chain(std::iter::once(mean))
    });
    csv_string(SUMMARY_HEADER, rows)
}

pub fn run_file_name(protocol: ProtocolKind, scenario: &str, run: u32) -> String {
    format!("{protocol}_{scenario}_run{run}.csv")
}

pub fn mean_file_name(protocol: ProtocolKind, scenario: &str) -> String {
    format!("{protocol}_{scenario}_mean.csv")
}

/// Writes every run's series, the mean series and `summary.csv` into `dir`.
/// Returns the paths written, in order.
pub fn emit_csv(results: &[&SimulationResult], scenario: &str, dir: &Path) -> Result<Vec<PathBuf>, MetricsError> {
    fs::create_dir_all(dir).map_err(|source| MetricsError::Io { path: dir.to_owned(), source })?;
    let mut written = Vec::new();
    for res in results {
        let bits = res.data_bits;
        for r in &res.runs {
            let path = dir.join(run_file_name(res.protocol, scenario, r.run));
            write_file(&path, &series_csv(&r.series, bits))?;
            written.push(path);
        }
        let path = dir.join(mean_file_name(res.protocol, scenario));
        write_file(&path, &mean_series_csv(&res.mean.series, bits))?;
        written.push(path);
    }
    let path = dir.join("summary.csv");
    write_file(&path, &summary_csv(results))?;
    written.push(path);
    Ok(written)
}

/// Parses a per-run series file back into metrics.
pub fn parse_series_csv(text: &str, data_bits: Bits) -> Result<Vec<RoundMetrics>, MetricsError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(text.as_bytes());
    let mut records = reader.records();
    let header_ok = match records.next() {
        Some(Ok(h)) => h.iter().eq(SERIES_HEADER.split(',')),
        _ => false,
    };
    if !header_ok {
        return Err(MetricsError::Parse { line: 1, msg: "missing or unexpected header".into() });
    }
    let kb_per_packet = throughput_kb(1, data_bits);
    let mut out = Vec::new();
    for (i, rec) in records.enumerate() {
        let line_no = i + 2;
        let err = |msg: String| MetricsError::Parse { line: line_no, msg };
        let rec = rec.map_err(|e| err(e.to_string()))?;
        if rec.len() != 6 {
            return Err(err(format!("expected 6 fields, got {}", rec.len())));
        }
        let int = |s: &str| s.parse::<u64>().map_err(|e| err(format!("`{s}`: {e}")));
        let real = |s: &str| s.parse::<f64>().map_err(|e| err(format!("`{s}`: {e}")));
        let kb = real(&rec[4])?;
        out.push(RoundMetrics {
            round: int(&rec[0])?,
            alive: int(&rec[1])? as usize,
            dead: int(&rec[2])? as usize,
            total_residual: real(&rec[3])?,
            packets_cum: (kb / kb_per_packet).round() as u64,
            failovers_cum: int(&rec[5])?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(round: u64, alive: usize, n: usize) -> RoundMetrics {
        RoundMetrics {
            round,
            alive,
            dead: n - alive,
            total_residual: alive as f64,
            packets_cum: round * 10,
            failovers_cum: 0,
        }
    }

    fn series(alive: &[usize]) -> Vec<RoundMetrics> {
        alive.iter().enumerate().map(|(i, &a)| row(i as u64 + 1, a, 100)).collect()
    }

    #[test]
    fn fnd_examples() {
        let mut alive = vec![100; 105];
        alive.extend([99, 98, 90]);
        assert_eq!(compute_fnd(&series(&alive)), Some(106));
        assert_eq!(compute_fnd(&series(&[100; 30])), None);
        assert_eq!(compute_fnd(&series(&[99, 99])), Some(1));
    }

    #[test]
    fn hna_examples() {
        let mut alive: Vec<usize> = (0..303).map(|i| 100 - i / 7).collect();
        alive.push(50);
        alive.push(40);
        assert_eq!(compute_hna(&series(&alive), 100), Some(304));
        assert_eq!(compute_hna(&series(&[100; 50]), 100), None);
        assert_eq!(compute_hna(&series(&[100, 100, 49]), 100), Some(3));
        assert_eq!(compute_hna(&series(&[51]), 100), None);
    }

    #[test]
    fn throughput_units() {
        let b = Bits::new(32000).unwrap();
        assert_eq!(throughput_kb(0, b), 0.0);
        assert_eq!(throughput_kb(1, b), 4.0);
        assert_eq!(throughput_kb(10440, b), 41760.0);
    }

    #[test]
    fn header_only_for_empty_series() {
        let b = Bits::new(32000).unwrap();
        assert_eq!(series_csv(&[], b), format!("{SERIES_HEADER}\n"));
    }

    #[test]
    fn parse_rejects_garbage() {
        let b = Bits::new(32000).unwrap();
        assert!(parse_series_csv("nope\n", b).is_err());
        let bad = format!("{SERIES_HEADER}\n1,2,3\n");
        assert!(matches!(parse_series_csv(&bad, b), Err(MetricsError::Parse { line: 2, .. })));
    }

    fn run(fnd: Option<u64>, hna: Option<u64>, len: usize) -> RunResult {
        RunResult {
            run: 0,
            seed: 0,
            series: series(&vec![100; len]),
            summary: Summary { fnd, hna, throughput_kb: 8.0, residual_at: BTreeMap::new() },
            energy_charged: 0.0,
            initial_energy: 0.0,
        }
    }

    #[test]
    fn averaging() {
        let single = [run(Some(100), Some(200), 3)];
        let avg = average_runs(&single).unwrap();
        assert_eq!(avg.series[2].alive, 100.0);
        assert_eq!(avg.summary.fnd.mean, Some(100.0));

        let two = [run(Some(100), Some(200), 3), run(Some(120), None, 3)];
        let avg = average_runs(&two).unwrap();
        assert_eq!(avg.summary.fnd.mean, Some(110.0));
        assert_eq!(avg.summary.hna.mean, Some(200.0));
        assert_eq!(avg.summary.hna.defined, 1);
        assert!(avg.summary.hna.is_partial());
        assert!(!avg.summary.fnd.is_partial());

        assert!(matches!(average_runs(&[]), Err(MetricsError::NoRuns)));
        let mismatched = [run(None, None, 3), run(None, None, 4)];
        assert!(matches!(average_runs(&mismatched), Err(MetricsError::Horizon { .. })));
    }
}
