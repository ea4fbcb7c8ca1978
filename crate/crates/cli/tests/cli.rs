//! End-to-end checks of the command-line surface: exit codes, report shape,
//! and the strategy/signature matrix.

use serde_json::Value;
use std::path::Path;
use std::process::Output;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_spincover")
}

fn write_target(path: &Path, p: usize, q: usize, rows: Vec<Vec<f64>>) {
    std::fs::write(
        path,
        serde_json::json!({"signature": [p, q], "matrix": rows}).to_string(),
    )
    .unwrap();
}

fn run(args: &[&str]) -> Output {
    std::process::Command::new(bin()).args(args).output().unwrap()
}

fn boost_22() -> Vec<Vec<f64>> {
    let (a, b) = (1.0f64.cosh(), 1.0f64.sinh());
    vec![
        vec![a, 0.0, b, 0.0],
        vec![0.0, 1.0, 0.0, 0.0],
        vec![b, 0.0, a, 0.0],
        vec![0.0, 0.0, 0.0, 1.0],
    ]
}

#[test]
fn invert_identity_21() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("id.json");
    write_target(&input, 2, 1, vec![
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
    ]);
    let out = run(&["invert", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["strategy_used"], "polar");
    // preimage +-I2 with zero residual
    assert_eq!(v["preimage"]["kind"], "sl2");
    let y00: f64 = v["preimage"]["matrix"][0][0]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!((y00 - 1.0).abs() < 1e-12);
    let res: f64 = v["residual"].as_str().unwrap().parse().unwrap();
    assert!(res < 1e-12);
}

#[test]
fn invert_22_boost_matches_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("h13.json");
    write_target(&input, 2, 2, boost_22());
    let out = run(&["invert", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let first00: f64 = v["preimage"]["first"][0][0].as_str().unwrap().parse().unwrap();
    assert!((first00 - 0.5f64.exp()).abs() < 1e-10);
    // the oracle residual is reported independently
    let oracle: f64 = v["oracle_residual"].as_str().unwrap().parse().unwrap();
    assert!(oracle < 1e-10);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    // 1: parse failure (matrix size)
    let bad_size = dir.path().join("bad_size.json");
    std::fs::write(&bad_size, r#"{"signature":[2,2],"matrix":[[1,0],[0,1]]}"#).unwrap();
    let out = run(&["invert", "--input", bad_size.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // 1: signature flag disagrees with the file
    let ok = dir.path().join("ok.json");
    write_target(&ok, 2, 2, boost_22());
    let out = run(&["invert", "--input", ok.to_str().unwrap(), "--signature", "3,2"]);
    assert_eq!(out.status.code(), Some(1));

    // 2: membership failure (wrong component)
    let flip = dir.path().join("flip.json");
    write_target(&flip, 2, 2, vec![
        vec![1.0, 0.0, 0.0, 0.0],
        vec![0.0, -1.0, 0.0, 0.0],
        vec![0.0, 0.0, -1.0, 0.0],
        vec![0.0, 0.0, 0.0, 1.0],
    ]);
    let out = run(&["invert", "--input", flip.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // 3: genericity failure in strict mode: -I is in SO+(2,2) and the
    // minor sum collapses to zero there
    let minus = dir.path().join("minus.json");
    write_target(&minus, 2, 2, vec![
        vec![-1.0, 0.0, 0.0, 0.0],
        vec![0.0, -1.0, 0.0, 0.0],
        vec![0.0, 0.0, -1.0, 0.0],
        vec![0.0, 0.0, 0.0, -1.0],
    ]);
    let out = run(&[
        "invert",
        "--input",
        minus.to_str().unwrap(),
        "--strategy",
        "shirokov",
        "--strict",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // without --strict the same job falls back and warns
    let out = run(&[
        "invert",
        "--input",
        minus.to_str().unwrap(),
        "--strategy",
        "shirokov",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["warnings"][0]
        .as_str()
        .unwrap()
        .contains("genericity failure"));

    // 4: unsupported strategy/signature combination
    let out = run(&[
        "invert",
        "--input",
        ok.to_str().unwrap(),
        "--strategy",
        "polar",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&[
        "invert",
        "--input",
        ok.to_str().unwrap(),
        "--strategy",
        "sideways",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn decompose_and_polar_reports() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("h13.json");
    write_target(&input, 2, 2, boost_22());
    let out = run(&["decompose", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["factors"][0]["kind"], "hyperbolic");
    let res: f64 = v["reconstruction_residual"].as_str().unwrap().parse().unwrap();
    assert!(res < 1e-12);

    // polar only covers (n,1)
    let out = run(&["polar", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));

    let boost21 = dir.path().join("b21.json");
    let (a, b) = (0.8f64.cosh(), 0.8f64.sinh());
    write_target(&boost21, 2, 1, vec![
        vec![a, 0.0, b],
        vec![0.0, 1.0, 0.0],
        vec![b, 0.0, a],
    ]);
    let out = run(&["polar", "--input", boost21.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["v_in_group"], true);
    assert_eq!(v["p_in_group"], true);
    let res: f64 = v["vp_residual"].as_str().unwrap().parse().unwrap();
    assert!(res < 1e-12);
}

#[test]
fn verify_bases_reports_the_ledger() {
    let out = run(&["verify-bases"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    // working bases pass; verbatim exhibits fail and say so
    for c in checks {
        let exhibit = c["verbatim_exhibit"].as_bool().unwrap();
        let ok = c["axioms_ok"].as_bool().unwrap() && c["bp_ok"].as_bool().unwrap();
        if !exhibit {
            assert!(ok, "working basis {} failed", c["name"]);
        }
    }
    assert!(checks
        .iter()
        .any(|c| c["name"] == "b50_verbatim" && !c["axioms_ok"].as_bool().unwrap()));
    let ids: Vec<&str> = v["discrepancies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"basis.b50"));
    assert!(ids.contains(&"t41.H15"));
    // catalog export carries exact entries
    assert!(v["catalog"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"] == "b21"));
}

#[test]
fn bench_is_seed_reproducible_in_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.json");
    let out_b = dir.path().join("b.json");
    for out_path in [&out_a, &out_b] {
        let out = std::process::Command::new(bin())
            .args(["bench", "--signature", "2,1", "--count", "5", "--output"])
            .arg(out_path)
            .env("SPINCOVER_SEED", "31337")
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let a: Value = serde_json::from_str(&std::fs::read_to_string(&out_a).unwrap()).unwrap();
    let b: Value = serde_json::from_str(&std::fs::read_to_string(&out_b).unwrap()).unwrap();
    assert_eq!(a["seed"], 31337);
    // residuals are corpus-determined; timings may differ
    for (sa, sb) in a["results"][0]["strategies"]
        .as_array()
        .unwrap()
        .iter()
        .zip(b["results"][0]["strategies"].as_array().unwrap())
    {
        assert_eq!(sa["strategy"], sb["strategy"]);
        assert_eq!(sa["max_residual"], sb["max_residual"]);
    }
}

#[test]
fn output_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("h13.json");
    let output = dir.path().join("report.json");
    write_target(&input, 2, 2, boost_22());
    let out = std::process::Command::new(bin())
        .args(["invert", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(&output)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&output).unwrap();
    assert!(text.ends_with('\n'));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["job"]["command"], "invert");
}
