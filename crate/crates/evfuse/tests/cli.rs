use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use evfuse::Scenario;
use evfuse_core::{sampling, Model, RuleId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

fn evfuse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evfuse"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = evfuse(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fuse_hybrid_three_sources() {
    let out = run_ok(&["fuse", path_str(&scenario("m1_m2_m3.json"))]);
    assert_eq!(
        out,
        "rule: dsm_hybrid\nsources: 3\nconflict: 0.660000\n\
         A      0.318000\nA|B    0.610000\nA|B|C  0.050000\nA|C    0.002000\nB      0.020000\n"
    );
}

#[test]
fn fuse_sdli_override() {
    let out = run_ok(&[
        "fuse",
        path_str(&scenario("m1_m2_m3.json")),
        "--rule",
        "sdli",
    ]);
    assert!(
        out.ends_with("A    0.716846\nA|C  0.017385\nB    0.265769\n"),
        "{out}"
    );
}

#[test]
fn dempster_total_conflict_exits_3() {
    let out = evfuse(&["fuse", path_str(&scenario("total_conflict.json"))]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("total conflict"));
}

#[test]
fn stream_steps_and_final_report() {
    let path = scenario("m1_m4.json");
    let streamed = run_ok(&["stream", path_str(&path)]);
    let fused = run_ok(&["fuse", path_str(&path)]);
    assert!(streamed.ends_with(&fused));
    assert!(streamed.contains(
        "step 2: m2 (conflict 0.500000)\nA      0.380000\nA|B    0.380000\nA|B|C  0.120000\nA|C    0.020000\nB      0.100000\n"
    ));
    assert!(streamed.contains(
        "step 4: m4 (conflict 0.830000)\nA      0.160000\nA|B    0.804000\nA|B|C  0.026000\nB      0.010000\n"
    ));
}

#[test]
fn stream_json_with_vacuous_first() {
    let out = run_ok(&[
        "stream",
        path_str(&scenario("vbf_m1_m2.json")),
        "--output",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rule"], "sdli");
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 3);
    let last = &steps[2]["masses"];
    for (k, want) in [("A", 0.603529), ("B", 0.340471), ("A|C", 0.056000)] {
        assert!((last[k].as_f64().unwrap() - want).abs() < 1e-6);
    }
    assert_eq!(v["masses"], *last);
}

#[test]
fn single_source_stream_is_the_source() {
    let path = scenario("single_source.json");
    let out = run_ok(&["stream", path_str(&path), "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 1);
    let s = Scenario::load(&path).unwrap();
    let (_, m) = &s.sources[0];
    let masses = v["masses"].as_object().unwrap();
    assert_eq!(masses.len(), m.focal_count());
    for (p, value) in m.iter() {
        let key = evfuse_core::format_prop(s.frame(), p);
        assert_eq!(masses[&key].as_f64().unwrap(), value);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        ["fuse", "--output", "json"],
        ["stream", "--output", "table"],
        ["stream", "--output", "json"],
    ] {
        let path = scenario("m1_m4.json");
        let full = [args[0], path_str(&path), args[1], args[2]];
        assert_eq!(run_ok(&full), run_ok(&full));
    }
}

#[test]
fn json_masses_reload_as_a_source() {
    let path = scenario("m1_m4.json");
    let s = Scenario::load(&path).unwrap();
    for rule in RuleId::ALL
        .into_iter()
        .filter(|r| *r != RuleId::Smets && !r.is_conjunctive())
    {
        let out = run_ok(&[
            "fuse",
            path_str(&path),
            "--rule",
            rule.name(),
            "--output",
            "json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let reloaded = serde_json::json!({
            "frame": s.frame().atoms(),
            "model": "exclusive",
            "sources": [{"name": "fused", "masses": v["masses"]}],
        });
        Scenario::from_json(&reloaded.to_string()).unwrap_or_else(|e| panic!("{rule}: {e}"));
    }
    let out = run_ok(&[
        "fuse",
        path_str(&path),
        "--rule",
        "smets",
        "--output",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["masses"]["∅"].as_f64().unwrap() - 0.83).abs() < 1e-12);
}

#[test]
fn verify_fixture_matrix_passes() {
    let out = run_ok(&["verify", path_str(&scenario("m1_m2_m3.json"))]);
    assert!(out.contains("permutation  PASS"));
    assert!(out.contains("markov       PASS"));
    assert!(out.contains("vbf          PASS"));
    let out = run_ok(&[
        "verify",
        path_str(&scenario("m1_m2.json")),
        "--rule",
        "sdli",
        "--checks",
        "eq7",
    ]);
    assert!(out.starts_with("eq7          PASS"));
}

#[test]
fn verify_random_four_source_scenario() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let frame = sampling::frame(4);
    let model = Model::free(&frame);
    let masses = sampling::masses(&mut rng, &model, 4, 4);
    let s = Scenario {
        model,
        sources: masses
            .into_iter()
            .enumerate()
            .map(|(i, m)| (format!("s{i}"), m))
            .collect(),
        rule: Some(RuleId::DuboisPrade),
    };
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("random4.json");
    std::fs::write(&file, s.to_json()).unwrap();
    let out = run_ok(&[
        "verify",
        path_str(&file),
        "--checks",
        "markov,permutation",
        "--seed",
        "9",
    ]);
    assert!(out.starts_with("markov       PASS"), "{out}");
}

#[test]
fn pruning_breaks_order_invariance() {
    let path = scenario("prune_adversarial.json");
    let clean = run_ok(&["verify", path_str(&path), "--checks", "permutation"]);
    assert!(clean.contains("PASS"));
    let out = evfuse(&[
        "verify",
        path_str(&path),
        "--checks",
        "permutation",
        "--prune",
        "0.02",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("permutation  FAIL"));
}

#[test]
fn input_errors_exit_2_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(
        &file,
        r#"{"frame": ["A","B"], "model": "exclusive", "rule": "yager",
            "sources": [{"name": "x", "masses": {"A": 0.5, "B|": 0.5}}]}"#,
    )
    .unwrap();
    let out = evfuse(&["fuse", path_str(&file)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("sources[0] (x).masses[\"B|\"]"), "{err}");

    let out = evfuse(&["fuse", path_str(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(
        &file,
        r#"{"frame": ["A","B"], "model": "free", "sources": [{"name": "x", "masses": {"A": 1}}]}"#,
    )
    .unwrap();
    let out = evfuse(&["fuse", path_str(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rule: missing"));
    assert_eq!(
        evfuse(&["fuse", path_str(&file), "--rule", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        evfuse(&["verify", path_str(&file), "--rule", "sdli", "--trials", "0"])
            .status
            .code(),
        Some(2)
    );
}
