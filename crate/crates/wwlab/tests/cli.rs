//! Golden-output tests for the command-line surface: exact byte-for-byte
//! text, JSON schema fields, determinism across invocations, and the exit
//! status contract.

use std::process::{Command, Output};

fn wwlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wwlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn series_text_golden_lines() {
    let out = wwlab(&["series", "--family", "GC", "--k", "1", "--trunc", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 + (a+c+d)*q + (a*d)*q^2 + O(q^3)\n");

    let out = wwlab(&["series", "--family", "H", "--k", "0", "--trunc", "3"]);
    assert_eq!(stdout(&out), "1 + (b)*q + (b^2)*q^2 + O(q^3)\n");

    let out = wwlab(&[
        "series", "--family", "GP", "--k", "1", "--trunc", "2", "--set", "b=c",
    ]);
    assert_eq!(stdout(&out), "1 + (a+2*c+d)*q + O(q^2)\n");
}

#[test]
fn series_substitutions_and_errors() {
    // A dilation expressed directly on the series: q -> q^2, a -> a q^-1,
    // d -> d q turns the degree-2 tail of G^C_1 into a d q^4.
    let out = wwlab(&[
        "series", "--family", "GC", "--k", "1", "--trunc", "8", "--set", "q=q^2", "--set",
        "a=a*q^-1", "--set", "d=d*q",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "1 + (a)*q + (c)*q^2 + (d)*q^3 + (a*d)*q^4 + O(q^8)\n"
    );

    // An invalid dilation (negative q-exponent) is a clean error, exit 2.
    let out = wwlab(&[
        "series", "--family", "H", "--k", "0", "--trunc", "4", "--set", "b=b*q^-2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("negative q-exponent"));

    let out = wwlab(&["series", "--family", "NOPE", "--trunc", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn series_json_schema() {
    let out = wwlab(&[
        "series", "--family", "GC", "--k", "1", "--trunc", "3", "--json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(value["schema"], 1);
    assert_eq!(value["trunc"], 3);
    assert_eq!(value["coeffs"][0], serde_json::json!([[[0, 0, 0, 0], 1]]));
    // q^2 coefficient is the single term a*d.
    assert_eq!(value["coeffs"][2], serde_json::json!([[[1, 0, 0, 1], 1]]));
}

#[test]
fn bijection_worked_example() {
    let lambda = "8d+8a+6c+5c+3d+1a";
    let mu = "8c+8c+7c+5c+3c+2c+2c+1c+1c";
    let nu = "8d+8c+8c+8a+7b+6c+5c+5c+3d+3c+2b+2b+1c+1c+1a";

    let out = wwlab(&[
        "bijection",
        "--direction",
        "forward",
        "--lambda",
        lambda,
        "--mu",
        mu,
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), format!("{nu}\n"));

    let out = wwlab(&["bijection", "--direction", "inverse", "--nu", nu]);
    assert_eq!(stdout(&out), format!("lambda: {lambda}\nmu: {mu}\n"));

    // Full trace in JSON, one field per stage.
    let out = wwlab(&[
        "bijection",
        "--direction",
        "forward",
        "--lambda",
        lambda,
        "--mu",
        mu,
        "--json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(value["schema"], 1);
    assert_eq!(value["direction"], "forward");
    assert_eq!(value["mu_prime"], "8b+8b+7b+5b+3b+2b+2b+1b+1b");
    assert_eq!(
        value["nu1"],
        "8d+8b+8b+8a+7b+6c+5c+5b+3d+3b+2b+2b+1b+1b+1a"
    );
    assert_eq!(
        value["nu2"],
        "8d+8c+8c+8a+7b+6c+5c+5b+3d+3c+2b+2b+1c+1c+1a"
    );
    assert_eq!(value["nu3"], nu);
}

#[test]
fn bijection_empty_and_invalid_inputs() {
    let out = wwlab(&["bijection", "--direction", "forward"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "\n");

    // 1_c + 1_a violates the Capparelli gap C[c][a] = 1.
    let out = wwlab(&[
        "bijection",
        "--direction",
        "forward",
        "--lambda",
        "1c+1a",
        "--mu",
        "",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("validation"));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--theorem", "main", "--k", "1..3", "--trunc", "10"];
    let first = wwlab(&args);
    assert!(first.status.success());
    assert_eq!(
        stdout(&first),
        "PASS  main k=1 trunc=10\nPASS  main k=2 trunc=10\nPASS  main k=3 trunc=10\n"
    );
    let second = wwlab(&args);
    assert_eq!(first.stdout, second.stdout, "byte-identical reruns");

    // A thread cap must not change the output.
    let capped = Command::new(env!("CARGO_BIN_EXE_wwlab"))
        .args(args)
        .env("WWLAB_THREADS", "1")
        .output()
        .expect("binary runs");
    assert_eq!(first.stdout, capped.stdout);
}

#[test]
fn verify_json_and_exit_codes() {
    let out = wwlab(&[
        "verify", "--theorem", "euler", "--trunc", "15", "--json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(value["schema"], 1);
    assert_eq!(value["all_passed"], true);
    assert_eq!(value["reports"][0]["theorem"], "euler");
    assert_eq!(value["reports"][0]["pass"], true);

    let out = wwlab(&["verify", "--theorem", "no-such-theorem"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("known theorems"));
}

#[test]
fn verify_capa_corollary_reports_both_readings() {
    let out = wwlab(&[
        "verify",
        "--theorem",
        "capa-fini-sans-b",
        "--k",
        "2",
        "--trunc",
        "12",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(
        text.contains("as-printed (cq;q^2)_j reading: first mismatch"),
        "both readings must be reported: {text}"
    );
}

#[test]
fn enumerate_lists_members() {
    let out = wwlab(&[
        "enumerate",
        "--family",
        "P",
        "--max-weight",
        "2",
        "--max-part",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[0], "");
    assert!(lines.contains(&"1d+1c"));

    // Dilated listing: the Primc dilation rewrites values per colour.
    let out = wwlab(&[
        "enumerate",
        "--family",
        "P",
        "--max-weight",
        "1",
        "--dilate",
        "primc",
    ]);
    let text = stdout(&out);
    assert!(text.contains("1a"));
    assert!(text.contains("2b"));
    assert!(text.contains("3d"));
}
