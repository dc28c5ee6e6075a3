use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn hms(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hms")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hms-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_exit_codes() {
    for ok in ["f1_pants.json", "f2_square.json", "f2_square_with_override.json"] {
        let out = hms(&["verify", fixture(ok).to_str().unwrap(), "--truncate", "4", "--k-window", "1"]);
        assert_eq!(out.status.code(), Some(0), "{ok}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(String::from_utf8_lossy(&out.stdout).contains("RESULT: PASS"));
    }
    for bad in ["invalid_duplicate_alpha.json", "invalid_delta_override.json", "invalid_syntax.json", "invalid_not_unimodular.json", "missing.json"] {
        let out = hms(&["verify", fixture(bad).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
    }
    assert_eq!(hms(&["verify"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let (a, b) = (tmp("a.json"), tmp("b.json"));
    for p in [&a, &b] {
        let out = hms(&["verify", fixture("f2p_tall_square.json").to_str().unwrap(), "--seed", "3", "--output", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let report: serde_json::Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["seed"], 3);
}

#[test]
fn square_report_contains_the_cross_pair() {
    let p = tmp("square.json");
    let out = hms(&["verify", fixture("f2_square.json").to_str().unwrap(), "--output", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    let pair = report["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["source"]["alpha"] == serde_json::json!([1, 0]) && p["source"]["twist"] == 0
            && p["target"]["alpha"] == serde_json::json!([0, 1]) && p["target"]["twist"] == 1)
        .unwrap();
    assert_eq!(pair["a_side"], serde_json::json!([0, 1]));
    assert_eq!(pair["b_side"], serde_json::json!([0, 1]));
}

#[test]
fn svg_is_deterministic() {
    let (a, b) = (tmp("a.svg"), tmp("b.svg"));
    for p in [&a, &b] {
        let out = hms(&["svg", fixture("f2_square.json").to_str().unwrap(), "--output", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.contains("n=1, d=\u{2212}1"));
    let pants = tmp("pants.svg");
    hms(&["svg", fixture("f1_pants.json").to_str().unwrap(), "--output", pants.to_str().unwrap()]);
    let svg = std::fs::read_to_string(&pants).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 1);
    assert_eq!(svg.matches("stroke=\"gray\"").count(), 3);
}

#[test]
fn build_dumps_the_model() {
    let out = hms(&["build", fixture("hexagon.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let model: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(model["curve"]["bounded_edges"].as_array().unwrap().len(), 6);
    assert_eq!(model["subdivision"]["cells"].as_array().unwrap().len(), 6);
}

#[test]
fn ainf_selftest_passes() {
    let out = hms(&["ainf-selftest", "--seed", "5", "--arity", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(String::from_utf8_lossy(&out.stdout).matches("PASS").count(), 5);
}
