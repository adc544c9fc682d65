use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use fihr::{ProtocolKind, Scenario, SimConfig};
use fihr_cli::config::{resolve, ConfigFile, FlagOverrides};
use fihr_cli::{parse_config, run_cli_with, LoadError, EXIT_INVALID, EXIT_IO, EXIT_OK};

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli_with(std::iter::once("fihr").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn read_dir(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect()
}

#[test]
fn empty_config_equals_preset() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "empty.toml", "");
    let cfg = parse_config(&p).unwrap();
    assert_eq!(cfg, SimConfig::preset(Scenario::Scenario1, ProtocolKind::Fihr));

    let flags = FlagOverrides { scenario: Some(Scenario::Scenario2), ..Default::default() };
    let r = resolve(&ConfigFile::default(), &flags).unwrap();
    assert_eq!(r.base, SimConfig::preset(Scenario::Scenario2, ProtocolKind::Fihr));
    assert_eq!(r.protocols, ProtocolKind::ALL.to_vec());
    assert_eq!(r.scenario_name, "scenario2");
}

#[test]
fn negative_energy_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.toml", "[field]\ninitial_energy = -1.0\n");
    let err = parse_config(&p).unwrap_err();
    assert!(matches!(err, LoadError::Invalid(_)));
    assert!(err.to_string().contains("field.initial_energy"), "{err}");
}

#[test]
fn radio_override_moves_the_crossover() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "radio.toml", "[radio]\neps_mp = 0.0025e-12\n");
    let cfg = parse_config(&p).unwrap();
    assert!((cfg.radio.crossover_distance() - (10e-12f64 / 0.0025e-12).sqrt()).abs() < 1e-9);
    assert!((cfg.radio.crossover_distance() - 63.245553203367585).abs() < 1e-9);
}

#[test]
fn flags_beat_file_which_beats_preset() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "layers.toml",
        "[simulation]\nscenario = \"scenario2\"\nrounds = 77\nseed = 5\nprotocol = \"ihr\"\n",
    );
    let file = ConfigFile::load(&p).unwrap();
    let r = resolve(&file, &FlagOverrides::default()).unwrap();
    assert_eq!(r.base.rounds, 77);
    assert_eq!(r.base.seed, 5);
    assert_eq!(r.base.runs, fihr::config::DEFAULT_RUNS);
    assert_eq!(r.base.field.node_count, 200);
    assert_eq!(r.protocols, vec![ProtocolKind::Ihr]);

    let flags = FlagOverrides {
        scenario: Some(Scenario::Scenario1),
        rounds: Some(12),
        protocols: Some(vec![ProtocolKind::Dhr]),
        ..Default::default()
    };
    let r = resolve(&file, &flags).unwrap();
    assert_eq!(r.base.rounds, 12);
    assert_eq!(r.base.seed, 5);
    assert_eq!(r.base.field.node_count, 100);
    assert_eq!(r.protocols, vec![ProtocolKind::Dhr]);
}

#[test]
fn derived_values_follow_field_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "field.toml",
        "[field]\ninitial_energy = 2.0\nwidth = 60.0\nheight = 60.0\nbs_x = 30.0\nbs_y = 30.0\n",
    );
    let cfg = parse_config(&p).unwrap();
    let expected = SimConfig::for_field(cfg.field, ProtocolKind::Fihr);
    assert_eq!(cfg.fuzzy.energy.universe(), (0.0, 2.0));
    assert_eq!(cfg.fuzzy, expected.fuzzy);
    assert_eq!(cfg.proto, expected.proto);

    let p = write(dir.path(), "range.toml", "[fuzzy]\nmax_range = 12.0\n");
    let cfg = parse_config(&p).unwrap();
    assert_eq!(cfg.fuzzy.comr.universe(), (0.0, 12.0));
    assert_eq!(cfg.proto.comr_threshold, 12.0);
}

#[test]
fn term_breakpoints_can_be_overridden() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "terms.toml", "[fuzzy.energy]\nLow = [0.3, 1.5]\nMed = [0.5, 1.5, 2.5]\n");
    let cfg = parse_config(&p).unwrap();
    let low = &cfg.fuzzy.energy.terms()[0];
    assert_eq!(low.mf.breakpoints(), vec![0.3, 1.5]);

    for (text, key) in [
        ("[fuzzy.energy]\nLow = [0.3, 1.0, 1.5]\n", "fuzzy.energy.Low"),
        ("[fuzzy.energy]\nHuge = [1.0, 2.0]\n", "fuzzy.energy.Huge"),
        ("[fuzzy.distance]\nMed = [30.0, 20.0, 40.0]\n", "fuzzy.distance.Med"),
        ("[fuzzy.energy]\nLow = [0.1, 0.2]\n", "fuzzy.energy"),
    ] {
        let p = write(dir.path(), "t.toml", text);
        let err = parse_config(&p).unwrap_err().to_string();
        assert!(err.contains(key), "{text}: {err}");
    }
}

#[test]
fn unknown_keys_are_rejected_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "typo.toml", "[protocol]\nt_probability = 0.1\nfailover = 2\n");
    let err = parse_config(&p).unwrap_err();
    assert!(matches!(err, LoadError::Syntax { .. }));
    let msg = err.to_string();
    assert!(msg.contains("line 3") && msg.contains("failover"), "{msg}");

    let p = write(dir.path(), "section.toml", "[network]\nnodes = 3\n");
    assert!(matches!(parse_config(&p), Err(LoadError::Syntax { .. })));
}

#[test]
fn serialized_config_round_trips() {
    let mut cfg = SimConfig::preset(Scenario::Scenario2, ProtocolKind::Dhr);
    cfg.rounds = 321;
    cfg.seed = 99;
    cfg.fault_rate = 0.125;
    cfg.proto.failover_threshold = 1;
    cfg.proto.competition_order = fihr::config::CompetitionOrder::NodeId;
    cfg.radio.e_da = 4e-9;
    let text = ConfigFile::from_sim_config(&cfg).to_toml();
    let file = ConfigFile::parse(&text, Path::new("inline")).unwrap();
    assert_eq!(file, ConfigFile::from_sim_config(&cfg));
    let back = resolve(&file, &FlagOverrides::default()).unwrap();
    assert_eq!(back.base, cfg);
    assert_eq!(back.protocols, vec![ProtocolKind::Dhr]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let out = out.to_str().unwrap();
    assert_eq!(run(&["--rounds", "0", "--out", out]).0, EXIT_INVALID);
    assert_eq!(run(&["--fault-rate", "2", "--out", out]).0, EXIT_INVALID);
    assert_eq!(run(&["--protocol", "leach"]).0, EXIT_INVALID);
    assert_eq!(run(&["--compare", "--protocol", "ihr", "--out", out]).0, EXIT_INVALID);

    let (code, _, err) = run(&["--config", dir.path().join("missing.toml").to_str().unwrap()]);
    assert_eq!(code, EXIT_IO);
    assert!(err.contains("not found"), "{err}");

    let blocker = write(dir.path(), "file", "x");
    let (code, _, _) = run(&["--protocol", "ihr", "--runs", "1", "--rounds", "5", "--out", blocker.to_str().unwrap()]);
    assert_eq!(code, EXIT_IO);

    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("--fault-rate"));
}

#[test]
fn fixed_seed_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        let (code, _, err) = run(&["--protocol", "fihr", "--runs", "1", "--seed", "1", "--out", d.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK, "{err}");
    }
    let (ra, rb) = (read_dir(&a), read_dir(&b));
    assert_eq!(
        ra.keys().cloned().collect::<Vec<_>>(),
        ["fihr_scenario1_mean.csv", "fihr_scenario1_run0.csv", "summary.csv"]
    );
    assert_eq!(ra, rb);
}

#[test]
fn compare_prints_one_row_per_protocol() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cmp");
    let (code, stdout, err) = run(&[
        "--scenario",
        "scenario1",
        "--protocol",
        "all",
        "--runs",
        "4",
        "--rounds",
        "300",
        "--seed",
        "7",
        "--compare",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let rows: Vec<&str> =
        stdout.lines().filter(|l| ["fihr ", "ihr ", "dhr "].iter().any(|p| l.starts_with(p))).collect();
    assert_eq!(rows.len(), 3, "{stdout}");
    assert_eq!(read_dir(&out).len(), 3 * 5 + 1);
}
