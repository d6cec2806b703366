use std::path::Path;
use std::process::{Command, Output};

fn hitbench(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hitbench"))
        .args(args)
        .current_dir(dir)
        .env_remove("HITBENCH_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).trim()).expect("one JSON line")
}

#[test]
fn exact_on_small_graphs() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("p3.txt"), "10 20\n20 30\n").unwrap();
    let o = hitbench(&["exact", "10", "30", "--graph", "p3.txt"], dir.path());
    assert!(o.status.success());
    let j = json(&o);
    assert_eq!((j["h_uv"].as_f64(), j["h_vu"].as_f64()), (Some(4.0), Some(4.0)));
    assert!((j["r_eff"].as_f64().unwrap() - 2.0).abs() < 1e-9);

    std::fs::write(dir.path().join("k4.txt"), "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let j = json(&hitbench(&["exact", "1", "3", "--graph", "k4.txt"], dir.path()));
    assert!((j["h_uv"].as_f64().unwrap() - 3.0).abs() < 1e-9);
    // (H(u,v) + H(v,u)) / 2m = 6 / 12.
    assert!((j["r_eff"].as_f64().unwrap() - 0.5).abs() < 1e-9);

    let j = json(&hitbench(&["exact", "2", "2", "--graph", "k4.txt"], dir.path()));
    assert_eq!(j["h_uv"].as_f64(), Some(0.0));
    assert_eq!(j["r_eff"].as_f64(), Some(0.0));
}

#[test]
fn generate_is_deterministic_and_writes_landmarks() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for out in ["a.txt", "b.txt"] {
        let o = hitbench(&["generate", "er", "--n", "200", "--p", "0.05", "--seed", "4", "--out", out], d);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(d.join("a.txt")).unwrap(), std::fs::read(d.join("b.txt")).unwrap());

    let o = hitbench(&["generate", "ba", "--n", "3", "--k", "1"], d);
    assert!(stdout(&o).contains("m=2"));

    assert!(hitbench(&["generate", "barbell", "--n", "4", "--out", "bb.txt"], d).status.success());
    let lm: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("bb.landmarks.json")).unwrap()).unwrap();
    assert_eq!((lm["u1"].as_u64(), lm["un"].as_u64()), (Some(4), Some(7)));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(hitbench(&["no-such-command"], d).status.code(), Some(1));
    assert_eq!(hitbench(&["generate", "er", "--p", "0.1"], d).status.code(), Some(1));
    assert_eq!(hitbench(&["--help"], d).status.code(), Some(0));

    hitbench(&["generate", "barbell", "--n", "4", "--out", "bb.txt"], d);
    let o = hitbench(
        &["estimate", "4", "7", "--graph", "bb.txt", "--walks", "50", "--t-max", "1", "--retries", "0"],
        d,
    );
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["failed"].as_bool(), Some(true));

    // Exact references are capped in the bench.
    let o = hitbench(&["bench", "--graph", "builtin:ba10k", "--pairs", "1", "--t-max", "10"], d);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bench_output_is_reproducible_and_summarized() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    hitbench(&["generate", "er", "--n", "40", "--p", "0.3", "--seed", "2", "--out", "g.txt"], d);
    let args = |out: &'static str| {
        vec![
            "bench", "--graph", "g.txt", "--pairs", "3", "--walks", "500", "--t-max", "20000",
            "--seed", "9", "--out", out,
        ]
    };
    assert!(hitbench(&args("a.csv"), d).status.success());
    assert!(hitbench(&[args("b.csv"), vec!["--threads", "3"]].concat(), d).status.success());
    let a = std::fs::read_to_string(d.join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read_to_string(d.join("b.csv")).unwrap());
    assert_eq!(a.lines().count(), 1 + 5 * 3 * 3);
    let summary = std::fs::read_to_string(d.join("a_summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 1 + 15);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    hitbench(&["generate", "er", "--n", "30", "--p", "0.3", "--seed", "1", "--out", "g.txt"], d);
    std::fs::write(d.join("cfg.toml"), "graph = \"g.txt\"\nwalks = 7\nseed = 5\nt-max = 5000\n").unwrap();
    let j = json(&hitbench(&["estimate", "0", "1", "--config", "cfg.toml", "--algo", "sampling"], d));
    assert_eq!(j["walks_used"].as_u64(), Some(7));
    let j = json(&hitbench(
        &["estimate", "0", "1", "--config", "cfg.toml", "--algo", "sampling", "--walks", "11"],
        d,
    ));
    assert_eq!(j["walks_used"].as_u64(), Some(11));
    std::fs::write(d.join("bad.toml"), "wlaks = 3\n").unwrap();
    assert_eq!(hitbench(&["exact", "0", "1", "--config", "bad.toml"], d).status.code(), Some(1));
}

#[test]
fn estimate_mix_test_lowerbound_parallel() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("k3.txt"), "0 1\n1 2\n0 2\n").unwrap();
    let j = json(&hitbench(&["estimate", "0", "1", "--graph", "k3.txt", "--walks", "20000"], d));
    assert!((j["value"].as_f64().unwrap() - 2.0).abs() < 0.1);
    let j = json(&hitbench(
        &["estimate", "0", "1", "--graph", "k3.txt", "--algo", "cutoff", "--lambda", "auto", "--walks", "20000"],
        d,
    ));
    assert!((j["value"].as_f64().unwrap() - 2.0).abs() < 0.3);

    let j = json(&hitbench(&["mix-test", "--graph", "k3.txt", "--t", "20"], d));
    assert_eq!(j["verdict"], "accept");
    let j = json(&hitbench(&["mix-test", "--graph", "k3.txt", "--t-hi", "16"], d));
    assert_eq!(j["found"].as_bool(), Some(true));

    let o = hitbench(&["lowerbound", "--n-list", "4,5", "--r-list", "2", "--repeats", "5"], d);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);

    let o = hitbench(
        &["parallel-bench", "--graph", "k3.txt", "--threads-list", "1,2", "--walks", "1000", "--repeats", "1"],
        d,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 3);
}
