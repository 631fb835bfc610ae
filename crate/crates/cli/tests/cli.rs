use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatfloer")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let doc = serde_json::from_slice(&out.stdout).expect("one JSON document");
    (out.status.code().expect("exit code"), doc)
}

#[test]
fn pushoff_has_ranks_one_and_one() {
    let scene = corpus("figure1_pushoff.scene");
    let (code, doc) = json(&["hf", &scene, "L", "psiL"]);
    assert_eq!(code, 0);
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["result"]["ranks"]["by_degree"], serde_json::json!({ "0": 1, "1": 1 }));
    assert_eq!(doc["result"]["generators"].as_array().unwrap().len(), 2);
    assert_eq!(doc["stabilized"], true);
    assert_eq!(doc["coeff"], "novikov");
    assert_eq!(doc["scene_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn obstruction_exits_one_with_the_square() {
    let scene = corpus("figure5_obstruction.scene");
    let (code, doc) = json(&["hf", &scene, "L0", "L1"]);
    assert_eq!(code, 1);
    assert_eq!(doc["status"], "fail");
    let entries = doc["result"]["d_squared"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    for e in entries {
        assert_eq!(e["coefficient"]["terms"], serde_json::json!(["3/8"]));
    }
}

#[test]
fn text_output_is_byte_identical_across_runs() {
    let scene = corpus("torus_triple.scene");
    let a = run(&["product", &scene, "a", "c", "b"]);
    let b = run(&["product", &scene, "a", "c", "b"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("command: product a c b\nversion: "));
    assert!(text.contains("T^{1/72}"));
    assert!(text.contains("cutoff=4"));
}

#[test]
fn cutoff_flag_overrides_the_scene_budget() {
    let scene = corpus("torus_triple.scene");
    let (code, doc) = json(&["--cutoff", "1", "mu", &scene, "2", "a", "c", "b"]);
    assert_eq!(code, 0);
    assert_eq!(doc["budget"]["cutoff"], "1");
    let c = &doc["result"]["entries"][0]["coefficient"];
    assert_eq!(c["terms"], serde_json::json!(["1/72", "25/72", "49/72"]));
    assert_eq!(c["order"], "1");
}

#[test]
fn mu_checks_its_arity() {
    let scene = corpus("figure6_triangle.scene");
    let (code, doc) = json(&["mu", &scene, "3", "a", "b", "c"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "usage");
}

#[test]
fn ainfty_check_passes_on_the_torus_triple() {
    let (code, doc) = json(&["check-ainfty", &corpus("torus_triple.scene")]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["pass"], true);
    assert_eq!(doc["result"]["k_max"], 4);
}

#[test]
fn surgery_matches_the_cone_for_both_tests() {
    let scene = corpus("figure8_surgery.scene");
    let (code, doc) = json(&["surgery", &scene, "L1", "L2", "(0,0)", "1/4", "--test", "T", "--test", "U"]);
    assert_eq!(code, 0, "{doc}");
    assert_eq!(doc["coeff"], "z2");
    for row in doc["result"]["comparison"].as_array().unwrap() {
        assert_eq!(row["agree_mod2"], true);
    }
    assert!(doc["result"]["curve"].as_str().unwrap().starts_with("[curve L1#L2]\n"));
}

#[test]
fn triangle_check_is_exact() {
    let (code, doc) = json(&["triangle-check", &corpus("figure8_surgery.scene"), "L2", "L1", "L2|L1:0"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["tests"].as_array().unwrap().len(), 2);
}

#[test]
fn cone_reports_hom_ranks() {
    let (code, doc) = json(&["cone", &corpus("figure8_surgery.scene"), "L2", "L1", "0", "--test", "U"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["tests"][0]["ranks"]["total"], 2);
    assert_eq!(doc["result"]["cone"]["summands"][0]["shift"], 1);
}

#[test]
fn dehn_twist_reuses_the_scene_line_and_agrees_with_the_cone() {
    let scene = corpus("figure7_dehn_twist.scene");
    let (code, doc) = json(&["dehn-twist", &scene, "beta", "alpha", "--test", "alpha'", "--test", "beta'", "--test", "delta"]);
    assert_eq!(code, 0, "{doc}");
    assert_eq!(doc["result"]["scene_curve"], "twisted");
    assert_eq!(doc["result"]["class"], serde_json::json!([1, 1]));
    assert!(doc["result"]["comparison"].as_array().unwrap().iter().all(|r| r["agree"] == true));
}

#[test]
fn wrapped_window_two_is_laurent() {
    let (code, doc) = json(&["wrapped", "--window", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["laurent"]["pass"], true);
    assert_eq!(doc["result"]["generators"].as_array().unwrap().len(), 5);
    assert_eq!(doc["result"]["differential"]["zero"], true);
    let again = json(&["wrapped", "--window", "2"]).1;
    assert_eq!(doc["scene_hash"], again["scene_hash"]);
}

#[test]
fn wrapped_rejects_budget_overrides() {
    let (code, _) = json(&["--cutoff", "2", "wrapped", "--window", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn validation_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("flatfloer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("twins.scene");
    std::fs::write(&path, "[surface]\nkind = torus\na: line (0,0) dir (1,0)\nb: line (0,0) dir (1,0)\n").unwrap();
    let (code, doc) = json(&["hf", path.to_str().unwrap(), "a", "b"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "validation");

    std::fs::write(&path, "[surface]\nkind = torus\na: line (0,0) dir (1,0)\nb: lime (0,0)\n").unwrap();
    let (code, doc) = json(&["hf", path.to_str().unwrap(), "a", "b"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["diagnostics"][0]["line"], 4);
}

#[test]
fn unknown_objects_and_self_floer_are_usage_errors() {
    let scene = corpus("figure1_pushoff.scene");
    assert_eq!(run(&["hf", &scene, "L", "nope"]).status.code(), Some(2));
    let out = run(&["hf", &scene, "L", "L"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().contains("pushoff"));
}

#[test]
fn z2_needs_exact_curves() {
    let (code, doc) = json(&["--coeff", "z2", "hf", &corpus("figure1_pushoff.scene"), "L", "psiL"]);
    assert_eq!(code, 2);
    assert!(doc["error"]["message"].as_str().unwrap().contains("exact"));
}

#[test]
fn clap_errors_still_give_json() {
    let (code, doc) = json(&["mu"]);
    assert_eq!(code, 2);
    assert_eq!(doc["status"], "error");
}
