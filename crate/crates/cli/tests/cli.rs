use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn jacklab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacklab"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn character_of_a_row_is_a() {
    let d = tempfile::tempdir().unwrap();
    let o = jacklab(
        d.path(),
        &[
            "character",
            "--n",
            "2",
            "--pi",
            "[2]",
            "--lambda",
            "[2]",
            "--alpha",
            "4",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("chi = A"), "{out}");
    assert!(out.contains("chi at A = 2: 2"), "{out}");
    let r = report(d.path());
    assert_eq!(r["result"]["chi"], serde_json::json!({ "1": "1" }));
    assert_eq!(r["result"]["evaluated"]["chi"], "2");
    assert_eq!(r["config"]["seed"], 0);
}

#[test]
fn regular_measure_on_two_boxes() {
    let d = tempfile::tempdir().unwrap();
    let o = jacklab(
        d.path(),
        &["measure", "--n", "2", "--family", "regular", "--alpha", "1"],
    );
    assert_eq!(o.status.code(), Some(0));
    let rows =
        jacklab::measures::read_measure_csv(fs::File::open(d.path().join("measure.csv")).unwrap())
            .unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|(_, w)| w == "1/2"));

    let d2 = tempfile::tempdir().unwrap();
    let o = jacklab(
        d2.path(),
        &["measure", "--n", "2", "--alpha", "3", "--format", "json"],
    );
    assert_eq!(o.status.code(), Some(0));
    let m: Value =
        serde_json::from_str(&fs::read_to_string(d2.path().join("measure.json")).unwrap()).unwrap();
    assert_eq!(m["weights"][0]["partition"], serde_json::json!([2]));
    assert_eq!(m["weights"][0]["weight"], "1/4");
}

#[test]
fn double_scaling_at_zero_matches_alpha_one() {
    let exact = tempfile::tempdir().unwrap();
    let numeric = tempfile::tempdir().unwrap();
    assert_eq!(
        jacklab(exact.path(), &["measure", "--n", "5", "--alpha", "1"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        jacklab(
            numeric.path(),
            &["measure", "--n", "5", "--double-scaling", "0,0"]
        )
        .status
        .code(),
        Some(0)
    );
    let read = |p: &Path| {
        jacklab::measures::read_measure_csv(fs::File::open(p.join("measure.csv")).unwrap()).unwrap()
    };
    let (a, b) = (read(exact.path()), read(numeric.path()));
    assert_eq!(a.len(), b.len());
    for ((la, wa), (lb, wb)) in a.iter().zip(&b) {
        assert_eq!(la, lb);
        let q = jacklab::algebra::parse_rational(wa).unwrap();
        let x: f64 = wb.parse().unwrap();
        assert!((jacklab::algebra::rat_to_f64(&q) - x).abs() < 1e-12);
    }
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(
        jacklab(d.path(), &["measure", "--n", "2", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        jacklab(d.path(), &["character", "--pi", "[2]"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        jacklab(
            d.path(),
            &[
                "measure",
                "--alpha",
                "1",
                "--double-scaling",
                "0,0",
                "--n",
                "2"
            ]
        )
        .status
        .code(),
        Some(2)
    );
    let o = jacklab(d.path(), &["jack-table", "--n", "13"]);
    assert_eq!(o.status.code(), Some(4));
    let r = report(d.path());
    assert_eq!(r["status"], "error");
    assert_eq!(r["exit_code"], 4);
    assert_eq!(
        jacklab(d.path(), &["kerov", "--l", "9"]).status.code(),
        Some(4)
    );

    // χ = p_2-dual: the character with χ(2) = 1 forces all weight on (2),
    // while χ(2) = −1 at α = 2 needs a negative coefficient
    let cfg = d.path().join("explicit.toml");
    fs::write(&cfg, "family = \"explicit\"\nn = 2\nalpha = \"2\"\n[table]\n\"[1,1]\" = \"1\"\n\"[2]\" = \"-1\"\n").unwrap();
    let o = jacklab(d.path(), &["measure", "--config", cfg.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn flags_override_config_file() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("run.toml");
    fs::write(&cfg, "n = 3\nalpha = \"2\"\nseed = 5\n").unwrap();
    let o = jacklab(
        d.path(),
        &["measure", "--config", cfg.to_str().unwrap(), "--n", "4"],
    );
    assert_eq!(o.status.code(), Some(0));
    let r = report(d.path());
    assert_eq!(r["config"]["n"], 4);
    assert_eq!(r["config"]["alpha"], "2");
    assert_eq!(r["config"]["seed"], 5);
    fs::write(&cfg, "n = 3\nunknown-key = 1\n").unwrap();
    assert_eq!(
        jacklab(d.path(), &["measure", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn grid_flags_override_config_file() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("run.toml");
    fs::write(
        &cfg,
        "n-grid = [5]\nk-range = [2]\ntrials = 10\nbootstrap = 10\n",
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let o = jacklab(
        d.path(),
        &[
            "experiment",
            "clt",
            "--config",
            c,
            "--n-grid",
            "10,20",
            "--k-range",
            "2,3",
        ],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let r = report(d.path());
    assert_eq!(r["config"]["n-grid"], serde_json::json!([10, 20]));
    assert_eq!(r["config"]["k-range"], serde_json::json!([2, 3]));
}

#[test]
fn jack_table_round_trips() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(
        jacklab(
            d.path(),
            &[
                "jack-table",
                "--n",
                "3",
                "--format",
                "csv",
                "--alpha",
                "1/2"
            ]
        )
        .status
        .code(),
        Some(0)
    );
    let mut rd = csv::Reader::from_path(d.path().join("theta.csv")).unwrap();
    assert_eq!(rd.records().count(), 9);
    assert_eq!(
        jacklab(d.path(), &["jack-table", "--n", "3"]).status.code(),
        Some(0)
    );
    let t: Value =
        serde_json::from_str(&fs::read_to_string(d.path().join("theta.json")).unwrap()).unwrap();
    assert_eq!(t["partitions"].as_array().unwrap().len(), 3);
}

#[test]
fn samples_are_reproducible_and_sized() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = jacklab(
            d.path(),
            &[
                "sample", "--n", "30", "--alpha", "2", "--trials", "20", "--seed", "3",
            ],
        );
        assert_eq!(o.status.code(), Some(0));
    }
    let read = |p: &Path| fs::read(p.join("samples.jsonl")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
    let recs = jacklab::measures::read_samples_jsonl(std::io::BufReader::new(
        fs::File::open(a.path().join("samples.jsonl")).unwrap(),
    ))
    .unwrap();
    assert_eq!(recs.len(), 20);
    assert!(recs.iter().all(|r| r.partition.size() == 30 && r.seed == 3));
}

#[test]
fn rectangle_experiment_is_bit_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "experiment",
        "rectangle",
        "--i",
        "5",
        "--alpha",
        "4",
        "--trials",
        "1000",
        "--seed",
        "7",
        "--format",
        "svg",
        "--jobs",
        "1",
    ];
    for d in [&a, &b] {
        assert_eq!(jacklab(d.path(), &args).status.code(), Some(0));
    }
    for name in [
        "heatmap.csv",
        "mean_profile.csv",
        "heatmap_stretched.csv",
        "heatmap.svg",
        "report.json",
    ] {
        let x = fs::read(a.path().join(name)).unwrap();
        assert_eq!(x, fs::read(b.path().join(name)).unwrap(), "{name}");
    }
    let mut rd = csv::Reader::from_path(a.path().join("heatmap.csv")).unwrap();
    assert_eq!(rd.headers().unwrap(), vec!["u1", "v1", "u2", "v2", "freq"]);
    for rec in rd.records() {
        let f: f64 = rec.unwrap()[4].parse().unwrap();
        assert!((0.0..=1.0).contains(&f));
    }
    let r = report(a.path());
    assert_eq!(r["result"]["n"], 50);
    assert_eq!(r["result"]["sizes_conserved"], true);
    assert_eq!(r["seed"], 7);
}

#[test]
fn small_statistical_experiments_run() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("clt.toml");
    fs::write(
        &cfg,
        "n-grid = [20, 40]\ntrials = 200\nseed = 1\nk-range = [2, 3]\nbootstrap = 50\n",
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(
        jacklab(d.path(), &["experiment", "clt", "--config", c])
            .status
            .code(),
        Some(0)
    );
    let y: Value =
        serde_json::from_str(&fs::read_to_string(d.path().join("ykstats.json")).unwrap()).unwrap();
    assert_eq!(y.as_array().unwrap().len(), 2);
    assert_eq!(
        jacklab(
            d.path(),
            &["experiment", "lln", "--config", c, "--format", "svg"]
        )
        .status
        .code(),
        Some(0)
    );
    assert!(d.path().join("mean_profiles.svg").exists());
    assert_eq!(
        jacklab(d.path(), &["experiment", "moments", "--config", c])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        report(d.path())["result"]["moments"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
}

#[test]
fn afp_and_kerov_reports() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(
        jacklab(d.path(), &["afp", "--n", "6", "--alpha", "2"])
            .status
            .code(),
        Some(0)
    );
    let a: Value =
        serde_json::from_str(&fs::read_to_string(d.path().join("afp.json")).unwrap()).unwrap();
    let seqs = a["sequences"].as_array().unwrap();
    assert!(seqs
        .iter()
        .filter(|s| s["condition"] == "A")
        .all(|s| s["exact_zero"]
            .as_array()
            .unwrap()
            .iter()
            .all(|z| z == true)));
    let o = jacklab(d.path(), &["kerov", "--l", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(d.path())["result"]["display"], "γ R_2 + R_3");
}
