//! End-to-end tests driving the compiled `tpp` binary.

use std::process::{Command, Output};

fn tpp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpp"))
        .args(args)
        .env_remove("TPP_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json on stdout")
}

#[test]
fn info_reports_degrees() {
    let out = tpp(&["info", "--group", "S4"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["order"], 24);
    assert_eq!(doc["abelian"], false);
    assert_eq!(doc["conjugacy_classes"], 5);
    assert_eq!(doc["character_degrees"]["degrees"], serde_json::json!([1, 1, 2, 3, 3]));
    assert_eq!(doc["character_degrees"]["d2"], 24);
    assert_eq!(doc["character_degrees"]["d3"], 64);
    assert!(doc.get("subgroup_orders").is_none());
}

#[test]
fn info_subgroup_orders_flag() {
    let out = tpp(&["info", "--group", "S3", "--subgroup-orders"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["subgroup_orders"], serde_json::json!([1, 2, 2, 2, 3, 6]));
}

#[test]
fn info_lists_families_and_presets() {
    let doc = stdout_json(&tpp(&["info", "--families"]));
    let families = doc["families"].as_array().unwrap();
    assert!(families.iter().any(|f| f["family"] == "dihedral"));
    assert!(families.iter().any(|f| f["family"] == "projective_special_linear"));

    let doc = stdout_json(&tpp(&["info", "--presets"]));
    let presets = doc["presets"].as_array().unwrap();
    assert!(presets.iter().any(|p| p["name"] == "M11" && p["order"] == 7920));
    assert!(presets
        .iter()
        .any(|p| p["name"] == "S3" && p["gap_id_annotation"] == serde_json::json!([6, 1])));
}

#[test]
fn test_triple_true_verdict_exits_zero() {
    // The three order-2 subgroups of S3: a known TPP triple of product 8.
    let out = tpp(&["test-triple", "--group", "S3", "--s", "0,4", "--t", "0,3", "--u", "0,1"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["verdict"], true);
    assert_eq!(doc["product"], 8);
    assert_eq!(doc["basic"], true);
    assert_eq!(doc["subgroups"], true);
    // All nine algorithms apply to a subgroup triple.
    assert_eq!(doc["results"].as_array().unwrap().len(), 9);
}

#[test]
fn test_triple_false_verdict_exits_one() {
    let out = tpp(&["test-triple", "--group", "D10", "--s", "0,5", "--t", "1,5", "--u", "0,3,6"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verdict"], false);
    // Non-basic triple: the murthy-subset row reports the translation.
    let murthy = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["algorithm"] == "murthy-subset")
        .unwrap();
    assert_eq!(murthy["translated_to_basic"], true);
}

#[test]
fn test_triple_rejects_group_test_on_non_subgroups() {
    let out = tpp(&[
        "test-triple", "--group", "D10", "--s", "0,3", "--t", "0,2", "--u", "0,1",
        "--test", "murthy-group",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_subgroups_s3_table_mode() {
    let out = tpp(&["search", "subgroups", "--group", "S3", "--table-mode"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["best_product"], 8);
    assert_eq!(doc["sizes"], serde_json::json!([2, 2, 2]));
    assert_eq!(doc["nontrivial"], true);
    assert_eq!(doc["mode"], "subgroup");
}

#[test]
fn search_subsets_abelian_is_trivial() {
    let out = tpp(&["search", "subsets", "--group", "C6"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["best_product"], 6);
    assert_eq!(doc["sizes"], serde_json::json!([6, 1, 1]));
}

#[test]
fn budget_errors_exit_three() {
    // Order 30 exceeds the default subset budget of 24.
    let out = tpp(&["search", "subsets", "--group", "D30"]);
    assert_eq!(out.status.code(), Some(3));
    // Order 7920 exceeds the default lattice budget of 2000.
    let out = tpp(&["search", "subgroups", "--group", "M11"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    let out = tpp(&["info", "--group", "X99"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tpp(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tpp(&["search", "subgroups", "--group", "S3", "--test", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_emits_csv() {
    let out = tpp(&["bench", "--mode", "subgroup", "--max-order", "8", "--reps", "1", "--warmup", "0"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "group,order,algorithm,mean_seconds,cumulative_seconds,relative_to_baseline"
    );
    // Presets of order <= 8: S3, D8, Q8; five algorithms each.
    assert_eq!(lines.len(), 1 + 3 * 5);
    assert!(lines[1].starts_with("S3,6,naive-group,"));
}

#[test]
fn table_rows_and_empty_table() {
    let out = tpp(&["table", "--groups", "D10,S3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "S3,6-1,6,10,8,8,0.800000,1.333333,2,2,2,false,");
    assert_eq!(lines[2], "D10,10-1,10,18,12,10,0.666667,1.200000,3,2,2,true,");

    let out = tpp(&["table", "--groups", "", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.trim_end(),
        "name,gap_id_annotation,order,d3,beta,beta_g,beta_over_d3,beta_over_order,n,p,m,differs,error"
    );
    let out = tpp(&["table", "--groups", ""]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim_end(), "[]");
}

#[test]
fn table_errors_are_annotated_not_fatal() {
    let out = tpp(&["table", "--groups", "S3,NotAGroup", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let bad = text.lines().find(|l| l.starts_with("NotAGroup,")).unwrap();
    assert!(bad.contains("invalid group spec"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("tpp-cli-test-{}.json", std::process::id()));
    let out = tpp(&[
        "search", "subgroups", "--group", "S3", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["group"], "S3");
    std::fs::remove_file(&path).ok();
}

#[test]
fn table_is_byte_identical_across_thread_counts() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_tpp"))
            .args(["table", "--groups", "D12,Dic3,D10"])
            .env("TPP_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("13"));
}
