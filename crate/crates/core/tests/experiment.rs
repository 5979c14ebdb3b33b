use carlitz::carlitz::carlitz_eval;
use carlitz::experiment::{run_gw_experiment, ExperimentConfig, MSource, Scenario};
use carlitz::field::field_tower;
use carlitz::report::{emit_report, parse_report, Classification, Format, GWReport, CSV_COLUMNS};
use carlitz::wire::{parse_poly, parse_ratfn};

fn scenario_a(trials: u64, seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        scenario: Scenario::A,
        trials,
        seed,
        ..ExperimentConfig::default()
    }
}

fn scenario_b(trials: u64) -> ExperimentConfig {
    ExperimentConfig {
        n: 2,
        a: "0,1,1".into(),
        scenario: Scenario::B,
        trials,
        seed: 5,
        ..ExperimentConfig::default()
    }
}

#[test]
fn same_seed_same_bytes() {
    let c = scenario_a(15, 42);
    assert_eq!(
        run_gw_experiment(&c).unwrap().to_json(),
        run_gw_experiment(&c).unwrap().to_json()
    );
    let other = run_gw_experiment(&scenario_a(15, 43)).unwrap();
    assert_ne!(run_gw_experiment(&c).unwrap().trials, other.trials);
}

#[test]
fn forward_samples_are_solvable_everywhere() {
    for c in [
        scenario_a(30, 1),
        scenario_b(20),
        ExperimentConfig {
            p: 3,
            a: "2,1".into(),
            trials: 10,
            ..ExperimentConfig::default()
        },
    ] {
        let r = run_gw_experiment(&c).unwrap();
        assert_eq!(r.summary.trials, c.trials);
        for t in &r.trials {
            assert!(t.locally_solvable, "{t:?}");
            assert!(!t.global_solutions.is_empty());
            assert_eq!(t.classification, Classification::Consistent);
            assert!(t.flags.is_empty(), "{:?}", t.flags);
        }
        assert_eq!(r.exit_code(), 0);
    }
}

#[test]
fn thresholds_are_exact() {
    let cases = [
        ("0,1", 1, "1/2"),
        ("0,1,1", 1, "3/4"),
        ("1,1,1", 1, "11/12"),
        ("0,0,1", 1, "7/8"),
    ];
    for (a, n, want) in cases {
        let c = ExperimentConfig {
            a: a.into(),
            n,
            trials: 0,
            ..ExperimentConfig::default()
        };
        assert_eq!(
            run_gw_experiment(&c).unwrap().summary.density_threshold,
            want,
            "a={a}"
        );
    }
    let c = ExperimentConfig {
        p: 3,
        a: "0,1".into(),
        trials: 0,
        ..ExperimentConfig::default()
    };
    assert_eq!(
        run_gw_experiment(&c).unwrap().summary.density_threshold,
        "5/6"
    );
}

#[test]
fn scenario_b_reconstruction_is_a_root() {
    let c = scenario_b(25);
    let r = run_gw_experiment(&c).unwrap();
    let fd = field_tower(2, 1, 2).unwrap();
    let k = fd.k_field();
    let ring = fd.k_ring();
    let a = parse_poly(&fd.ext, "0,1,1").unwrap();
    for t in &r.trials {
        assert_eq!(t.reconstruction_agrees, Some(true));
        let x = parse_ratfn(&k, t.reconstruction.as_deref().unwrap()).unwrap();
        let m = parse_ratfn(&k, &t.m).unwrap();
        assert_eq!(carlitz_eval(&k, &ring, &a, &x), m);
        assert!(t
            .global_solutions
            .contains(t.reconstruction.as_ref().unwrap()));
    }
    assert!(r.summary.candidates.is_empty());
}

#[test]
fn negative_control_is_vacuous() {
    let c = ExperimentConfig {
        m_source: MSource::Explicit {
            values: vec!["0,0,0,1".into(), "0,1".into()],
        },
        ..ExperimentConfig::default()
    };
    let r = run_gw_experiment(&c).unwrap();
    assert_eq!(r.trials.len(), 2);
    let t = &r.trials[0];
    assert_eq!(t.classification, Classification::Vacuous);
    assert!(t.global_solutions.is_empty());
    let at = |pl: &str| {
        t.verdicts
            .iter()
            .find(|v| v.place == pl)
            .unwrap()
            .status
            .clone()
    };
    assert_eq!(at("0,1"), "solvable");
    assert_ne!(at("1,1"), "solvable");
    assert_eq!(r.trials[1].classification, Classification::Vacuous);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn rejected_configs() {
    let bad = [
        ExperimentConfig {
            p: 3,
            scenario: Scenario::A,
            ..ExperimentConfig::default()
        },
        ExperimentConfig {
            a: "0,0,0,0,1".into(),
            ..ExperimentConfig::default()
        },
        ExperimentConfig {
            m_source: MSource::Explicit { values: vec![] },
            ..ExperimentConfig::default()
        },
        ExperimentConfig {
            p: 4,
            ..ExperimentConfig::default()
        },
        ExperimentConfig {
            a: "1".into(),
            ..ExperimentConfig::default()
        },
    ];
    for c in bad {
        assert!(run_gw_experiment(&c).is_err(), "{c:?}");
    }
}

#[test]
fn empty_report_is_valid_json() {
    let r = run_gw_experiment(&ExperimentConfig {
        trials: 0,
        ..ExperimentConfig::default()
    })
    .unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["summary"]["trials"], 0);
    assert_eq!(v["trials"], serde_json::json!([]));
    assert!(v["summary"].get("runtime_ms").is_none());
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn json_round_trip_through_a_file() {
    let r = run_gw_experiment(&ExperimentConfig {
        trials: 1,
        seed: 9,
        ..ExperimentConfig::default()
    })
    .unwrap();
    let path = std::env::temp_dir().join(format!("carlitz-roundtrip-{}.json", std::process::id()));
    emit_report(&r, Format::Json, &path).unwrap();
    let back: GWReport = parse_report(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.to_json(), r.to_json());
}

#[test]
fn csv_has_one_row_per_trial() {
    let r = run_gw_experiment(&scenario_a(6, 3)).unwrap();
    let text = r.to_csv();
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, CSV_COLUMNS);
    let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 6);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), CSV_COLUMNS.len());
        assert_eq!(&row[0], i.to_string());
        assert_eq!(&row[4], "consistent");
    }
}

#[test]
fn exit_code_precedence() {
    let mut r = run_gw_experiment(&ExperimentConfig {
        trials: 0,
        ..ExperimentConfig::default()
    })
    .unwrap();
    r.summary.untested = 1;
    assert_eq!(r.exit_code(), 3);
    r.summary.candidates = vec![0];
    assert_eq!(r.exit_code(), 2);
    r.summary.untested = 0;
    assert_eq!(r.exit_code(), 2);
}
