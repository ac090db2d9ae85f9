use oddgraph::graded::{algebra_to_json, make_e, operator_to_json};
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_oddgraph")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (code, v, String::from_utf8(out.stderr).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("oddgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn builtin_algebras_pass() {
    let (code, v, _) = run(&["algebra", "check", "--builtin", "E"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["traceCondition"], true);
    let (code, v, _) = run(&["algebra", "check", "--builtin", "QN", "--N", "2", "--lambda", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 8);
}

#[test]
fn algebra_files() {
    let e = make_e();
    let mut v = algebra_to_json(&e.algebra);
    v["I"] = operator_to_json(&e.i);
    let good = scratch("e.json");
    std::fs::write(&good, v.to_string()).unwrap();
    let (code, report, _) = run(&["algebra", "check", "--json", good.to_str().unwrap()]);
    assert_eq!(code, 0, "{report}");

    // I = identity is even, so it is no odd derivation
    v["I"] = serde_json::json!([[0, 0, "1"], [1, 1, "1"]]);
    let bad = scratch("e-even.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let (code, report, _) = run(&["algebra", "check", "--json", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(report["derivation"]["passed"], false);

    let broken = scratch("broken.json");
    std::fs::write(&broken, "{\"basis\": [").unwrap();
    let (code, _, err) = run(&["algebra", "check", "--json", broken.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("parsing"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "nothing"]).0, 2);
    assert_eq!(run(&["algebra", "check", "--builtin", "QN"]).0, 2);
    assert_eq!(run(&["graphs", "contract", "--graph", "no-such-graph"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn enumeration() {
    let (code, v, _) = run(&["graphs", "enum", "--g", "1", "--n", "1", "--edges", "3", "--ordinary", "--trivalent"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 1);
    let (_, v, _) = run(&["graphs", "enum", "--g", "0", "--n", "3", "--edges", "3", "--odd-cycles"]);
    let mut auts: Vec<u64> = v["classes"].as_array().unwrap().iter().map(|c| c["autOrder"].as_u64().unwrap()).collect();
    auts.sort_unstable();
    assert_eq!(auts, [2, 6]);
    let (code, v, _) = run(&["graphs", "enum", "--g", "4", "--n", "1", "--edges", "2", "--ordinary"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 0);
}

#[test]
fn contraction_of_fixtures() {
    let (code, v, _) = run(&["graphs", "contract", "--graph", "fig1", "--ordinary"]);
    assert_eq!(code, 0);
    assert_eq!(v["contractions"].as_array().unwrap().len(), 4);
    assert_eq!(v["type"], serde_json::json!([1, 2]));
    let (_, v, _) = run(&["graphs", "contract", "--graph", "theta", "--edge", "0"]);
    assert_eq!(v["contractions"].as_array().unwrap().len(), 1);
    assert_eq!(v["contractions"][0]["kind"], "Regular");
}

#[test]
fn weights_of_a_graph_and_a_cochain() {
    let (code, v, _) = run(&["weights", "z", "--graph", "theta"]);
    assert_eq!(code, 0);
    assert!(v["Z"].is_string() && v["Zhat"].is_string());
    let (code, v, _) = run(&["weights", "z", "--max-edges", "2", "--builtin", "QN", "--N", "1"]);
    assert_eq!(code, 0);
    assert!(!v["cochain"].as_array().unwrap().is_empty());
}

#[test]
fn suites() {
    let (code, v, _) = run(&["verify", "counterexample"]);
    assert_eq!(code, 0);
    assert_ne!(v["boundary"], "0");
    for suite in ["cocycle", "loop-defect", "coboundary", "d-squared"] {
        let (code, v, _) = run(&["verify", suite, "--max-edges", "3"]);
        assert_eq!(code, 0, "{suite}: {v}");
        assert!(v["checked"].as_u64().unwrap() > 0);
    }
}

#[test]
fn psi_check_and_out_file() {
    let out = scratch("psi.json");
    let (code, _, _) =
        run(&["--out", out.to_str().unwrap(), "psi", "check", "--g", "0", "--n", "3", "--lambda", "1,2,3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["lhs"], "1/6");
    assert_eq!(v["rhs"], "1/6");
    assert_eq!(v["match"], true);
    assert_eq!(v["perGraph"].as_array().unwrap().len(), 2);
    let (code, _, _) = run(&["psi", "check", "--g", "1", "--n", "1", "--lambda", "1,2"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["psi", "check", "--g", "2", "--n", "1"]);
    assert_eq!(code, 2);
}
