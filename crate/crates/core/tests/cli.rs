use std::path::Path;
use std::process::{Command, Output};

fn bnscope(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bnscope"))
        .args(args)
        .current_dir(dir)
        .env_remove("BNSCOPE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn fig1_analysis_json() {
    let dir = tempfile::tempdir().unwrap();
    assert!(bnscope(&["construct", "fig1", "-o", "fig1.bn"], dir.path()).status.success());
    let out = bnscope(&["analyze", "fig1.bn", "--json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["fixed_points"].as_array().unwrap().len(), 0);
    let atts = v["attractors"].as_array().unwrap();
    assert_eq!(atts.len(), 1);
    assert_eq!(atts[0]["is_cyclic"], true);
    assert_eq!(atts[0]["is_attractive_cycle"], false);
}

#[test]
fn json_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    assert!(bnscope(&["construct", "thma", "-o", "g.anet"], dir.path()).status.success());
    let args = ["analyze", "g.anet", "--json", "--local-cycles=all", "--nonexpansive"];
    let one = Command::new(env!("CARGO_BIN_EXE_bnscope"))
        .args(args)
        .current_dir(dir.path())
        .env("BNSCOPE_THREADS", "1")
        .output()
        .unwrap();
    let many = bnscope(&[&args[..], &["--threads", "4"]].concat(), dir.path());
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = bnscope(&["verify", "theorem-b", "--n", "7", "--n", "8"], dir.path());
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).lines().all(|l| l.starts_with("PASS")));
    // in dimension 6 two named points coincide
    let bad = bnscope(&["verify", "theorem-b", "--n", "6"], dir.path());
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
    assert_eq!(bnscope(&["verify", "theorem-a"], dir.path()).status.code(), Some(0));
    assert_eq!(bnscope(&["verify", "prop1", "--samples", "50", "--seed", "3"], dir.path()).status.code(), Some(0));
    assert_eq!(bnscope(&["verify", "nonsense"], dir.path()).status.code(), Some(2));
    assert_eq!(bnscope(&["analyze"], dir.path()).status.code(), Some(2));
}

#[test]
fn expand_then_reduce_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(bnscope(&["construct", "thma-seed", "-o", "seed.anet"], p).status.success());
    let out = bnscope(&["expand-delocalize", "seed.anet", "-o", "g.anet", "--trace", "trace.json"], p);
    assert!(out.status.success());
    let trace: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(p.join("trace.json")).unwrap()).unwrap();
    let order: Vec<u64> = trace["creation_order"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(order, vec![5, 7, 9, 11, 4, 6, 8, 10]);
    // removing the new vertices in reverse creation order gives back the seed
    let mut current = "g.anet".to_string();
    let mut alive: Vec<u64> = (0..12).collect();
    for (step, v) in order.iter().rev().enumerate() {
        let pos = alive.iter().position(|a| a == v).unwrap();
        alive.remove(pos);
        let next = format!("r{step}.bn");
        let o = bnscope(&["reduce", &current, "--var", &pos.to_string(), "-o", &next], p);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        current = next;
    }
    assert!(bnscope(&["construct", "thma-seed", "-o", "seed.bn"], p).status.success());
    let a = bnscope(&["analyze", &current, "--json", "--global-graph"], p);
    let b = bnscope(&["analyze", "seed.bn", "--json", "--global-graph"], p);
    let ga: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let gb: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
    assert_eq!(ga["global_graph"], gb["global_graph"]);
}

#[test]
fn expansion_without_chords_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("ring.anet"), "0: -2\n1: -0\n2: -1\n").unwrap();
    let out = bnscope(&["expand-delocalize", "ring.anet", "-o", "x.anet"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exports_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(bnscope(&["construct", "thmb", "--n", "7", "-o", "b.bn"], p).status.success());
    assert!(bnscope(&["construct", "antipodal", "--n", "5", "--padded", "-o", "pad.bn"], p).status.success());
    assert!(bnscope(&["construct", "thma-prime", "-o", "d.edges"], p).status.success());
    let edges = std::fs::read_to_string(p.join("d.edges")).unwrap();
    assert!(edges.starts_with("# n=24"));
    assert!(bnscope(&["export", "b.bn", "--what", "local:0000000", "--dot", "l.dot"], p).status.success());
    assert!(std::fs::read_to_string(p.join("l.dot")).unwrap().starts_with("digraph"));
    let bad = bnscope(&["export", "b.bn", "--what", "local:01", "--dot", "l.dot"], p);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bnscope(&["analyze", "pad.bn", "--dot", "dots"], p).status.success());
    assert!(p.join("dots/async.dot").exists() && p.join("dots/global.dot").exists());
    std::fs::write(p.join("broken.bn"), "f0 = x0 &\n").unwrap();
    let parse = bnscope(&["analyze", "broken.bn"], p);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 1"));
}
