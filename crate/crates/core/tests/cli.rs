use std::path::{Path, PathBuf};
use std::process::Command;

use funcsample::experiment::{ExperimentConfig, Preset};

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(dir: &Path, args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_funcsample"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn shipped_configs_equal_presets() {
    let paper = ExperimentConfig::load(&configs_dir().join("paper.toml")).unwrap();
    assert_eq!(paper, Preset::Paper.config());
    let desk = ExperimentConfig::load(&configs_dir().join("desk.toml")).unwrap();
    assert_eq!(desk, Preset::Desk.config());
}

#[test]
fn stage_by_stage_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cfg = d.join("small.toml");
    std::fs::write(&cfg, "n_neurons = 150\n[simulation]\nduration_ms = 600.0\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let msg = run(
        d,
        &["--config", cfg, "--seed", "3", "generate", "--beta", "0.5"],
    );
    assert!(msg.contains("150 nodes"), "{msg}");
    run(
        d,
        &[
            "--config",
            cfg,
            "--seed",
            "3",
            "simulate",
            "--graph",
            d.join("spatial.graph").to_str().unwrap(),
        ],
    );
    let trace = funcsample::io::load_matrix(&d.join("trace.bin")).unwrap();
    assert_eq!((trace.rows, trace.cols, trace.t0), (150, 500, 100.0));

    run(
        d,
        &[
            "--config",
            cfg,
            "record",
            "--graph",
            d.join("spatial.graph").to_str().unwrap(),
            "--trace",
            d.join("trace.bin").to_str().unwrap(),
            "--sensors",
            "12",
        ],
    );
    run(
        d,
        &[
            "--config",
            cfg,
            "correlate",
            "--signals",
            d.join("signals.csv").to_str().unwrap(),
            "--density",
            "0.2",
        ],
    );
    let net = funcsample::io::load_graph(&d.join("functional.graph")).unwrap();
    assert_eq!(net.graph.edge_count(), 2 * 13);

    run(
        d,
        &[
            "measure",
            d.join("functional.graph").to_str().unwrap(),
            "--output",
            "f.csv",
        ],
    );
    run(
        d,
        &[
            "measure",
            d.join("spatial.graph").to_str().unwrap(),
            "--output",
            "s.csv",
            "--wide",
        ],
    );
    let wide = std::fs::read_to_string(d.join("s.csv")).unwrap();
    assert_eq!(wide.lines().count(), 2);

    run(
        d,
        &[
            "compare",
            "--functional",
            d.join("f.csv").to_str().unwrap(),
            "--spatial",
            d.join("f.csv").to_str().unwrap(),
        ],
    );
    let cmp = std::fs::read_to_string(d.join("comparison.csv")).unwrap();
    assert_eq!(cmp.lines().count(), 1 + 32);
}

#[test]
fn sweep_writes_every_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cfg = d.join("tiny.toml");
    std::fs::write(
        &cfg,
        "n_neurons = 150\nrealizations = 2\nsizes = [10, 14]\n\
         [[densities]]\nlabel = \"mid\"\nbeta = 0.4\n\
         [simulation]\nduration_ms = 500.0\n",
    )
    .unwrap();
    let msg = run(
        d,
        &["--config", cfg.to_str().unwrap(), "--jobs", "2", "sweep"],
    );
    assert!(msg.starts_with("64 rows"), "{msg}");
    for f in [
        "comparison.csv",
        "samples.csv",
        "issues.csv",
        "config.toml",
        "series_clustering_mid.csv",
    ] {
        assert!(d.join(f).exists(), "{f} missing");
    }
    let series = std::fs::read_to_string(d.join("series_clustering_mid.csv")).unwrap();
    assert_eq!(
        series.lines().next(),
        Some("size,mean_f,sd_f,mean_s,sd_s,p,match")
    );
    assert_eq!(series.lines().count(), 3);

    // flags recomputed from the exported samples agree with the table
    let samples = std::fs::read_to_string(d.join("samples.csv")).unwrap();
    let mut groups: std::collections::BTreeMap<(String, String, String), Vec<f64>> =
        Default::default();
    for line in samples.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let v: f64 = f[5].parse().unwrap();
        if !v.is_nan() {
            groups
                .entry((f[4].into(), f[1].into(), f[2].into()))
                .or_default()
                .push(v);
        }
    }
    let table = std::fs::read_to_string(d.join("comparison.csv")).unwrap();
    for line in table.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let key = |fam: &str| {
            groups
                .get(&(f[0].into(), f[2].into(), fam.into()))
                .cloned()
                .unwrap_or_default()
        };
        let p = funcsample::stats::welch_t_test(&key("functional"), &key("spatial"))
            .map_or(f64::NAN, |r| r.p);
        assert_eq!(f[10], p.to_string(), "{line}");
        assert_eq!(f[11], (p >= 0.01).to_string(), "{line}");
    }
}

#[test]
fn bad_input_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_funcsample"))
        .args([
            "--out-dir",
            dir.path().to_str().unwrap(),
            "measure",
            "/nonexistent.graph",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
