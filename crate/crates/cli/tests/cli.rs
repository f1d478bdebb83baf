//! End-to-end checks of the binary: exit codes, output schemas, selection
//! handling, and the capacity-degradation path.

use std::process::{Command, Output};

use serde_json::Value;

fn vstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vstar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn orders_f2c8_rows() {
    let out = vstar(&[
        "orders", "--group", "c8", "--field", "2", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["schema"], "vstar.report.v1");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let order_of = |sigma: &str| -> u64 {
        rows.iter()
            .find(|r| r["sigma"] == sigma)
            .unwrap_or_else(|| panic!("row for {sigma}"))["order"]
            .as_u64()
            .unwrap()
    };
    assert_eq!(order_of("sigma1"), 16);
    assert_eq!(order_of("sigma2"), 32);
    assert_eq!(order_of("sigma3"), 16);
    assert_eq!(order_of("sigma4"), 16);
    for r in rows {
        if !r["predicted_order"].is_null() {
            assert_eq!(r["agreement"], true, "{r}");
        }
        assert_eq!(r["elapsed_ms"], 0);
    }
}

#[test]
fn orders_empty_selection_is_an_empty_table() {
    let out = vstar(&[
        "orders",
        "--group",
        "c8",
        "--field",
        "2",
        "--involution",
        "none",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn orders_accepts_explicit_image_lists() {
    let out = vstar(&[
        "orders",
        "--group",
        "c8xc2",
        "--field",
        "2",
        "--involution",
        "a->a^3*b,b->b",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["sigma"], "sigma2");
    assert_eq!(rows[0]["order"].as_u64(), Some(512));
}

#[test]
fn orders_modulus_override_matches_default() {
    let default = vstar(&[
        "orders", "--group", "c8", "--field", "4", "--format", "json",
    ]);
    let explicit = vstar(&[
        "orders",
        "--group",
        "c8",
        "--field",
        "4",
        "--modulus",
        "0b111",
        "--format",
        "json",
    ]);
    assert!(default.status.success() && explicit.status.success());
    assert_eq!(default.stdout, explicit.stdout);
}

#[test]
fn image_count_method_drops_structure_fields() {
    let out = vstar(&[
        "orders",
        "--group",
        "c8",
        "--field",
        "2",
        "--involution",
        "sigma2",
        "--method",
        "image-count",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let rows = stdout_json(&out)["rows"].clone();
    assert_eq!(rows[0]["order"].as_u64(), Some(32));
    assert_eq!(rows[0]["method"], "image-count");
    assert!(rows[0]["exponent"].is_null());
    assert!(rows[0]["invariants"].is_null());
}

#[test]
fn predict_emits_formula_rows_with_u128_orders() {
    let out = vstar(&[
        "predict", "--group", "c64", "--field", "8", "--format", "json",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // canonical order 2 * 8^32 = 2^97, beyond u64 but exact in the report
    assert!(text.contains("158456325028528675187087900672"), "{text}");
    assert!(text.contains("\"method\": \"formula\""));
}

#[test]
fn verify_passes_and_fails_by_exit_code() {
    let pass = vstar(&["verify", "lemma6", "--n", "3", "--field", "2"]);
    assert!(pass.status.success());
    let text = String::from_utf8(pass.stdout).unwrap();
    assert!(text.contains("result: PASS"), "{text}");

    let unknown = vstar(&["verify", "lemma7"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn verify_reports_capacity_as_skipped() {
    let out = vstar(&["verify", "lemma3", "--n", "5", "--field", "8"]);
    assert!(out.status.success(), "capacity must not fail the run");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("SKIP"), "{text}");
    assert!(text.contains("capacity"), "{text}");
}

#[test]
fn report_csv_has_one_row_per_attempted_cell() {
    let out = vstar(&["report", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let data_rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("group,") && !l.is_empty())
        .count();
    // c8 (4 involutions) x 3 fields + c16 (4) + c8xc2 (12)
    assert_eq!(data_rows, 4 * 3 + 4 + 12);
    assert!(text.starts_with("# schema=vstar.report.v1"));
}

#[test]
fn bad_arguments_exit_with_usage_error() {
    assert_eq!(
        vstar(&["orders", "--group", "c6", "--field", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        vstar(&["orders", "--group", "c8", "--field", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        vstar(&[
            "orders",
            "--group",
            "c8",
            "--field",
            "2",
            "--involution",
            "sigma9"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn workers_env_does_not_change_results() {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_vstar"))
            .env("VSTAR_WORKERS", workers)
            .args([
                "orders", "--group", "c8", "--field", "4", "--format", "json",
            ])
            .output()
            .expect("binary runs")
    };
    let one = run("1");
    let many = run("7");
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
}
