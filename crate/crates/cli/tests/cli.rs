//! End-to-end tests of the `ffderiv` binary: wire formats, exit codes,
//! determinism of the emitted bytes.

use std::process::Command;

const F9: &str = r#"{"p":3,"n":2}"#;

fn ffderiv(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ffderiv"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        String::from_utf8(out.stderr).expect("stderr is UTF-8"),
        out.status.code().expect("no signal"),
    )
}

fn stdout_of(args: &[&str]) -> String {
    let (out, err, code) = ffderiv(args);
    assert_eq!(code, 0, "expected success, got stderr: {err}");
    out
}

#[test]
fn field_info_resolves_default_modulus() {
    let out = stdout_of(&["field-info", "--p", "3", "--n", "2"]);
    assert_eq!(out, "{\"p\":3,\"n\":2,\"modulus\":[1,0,1],\"order\":9}\n");
    let via_json = stdout_of(&["field-info", "--field", F9]);
    assert_eq!(via_json, out);
}

#[test]
fn census_emits_exact_table() {
    let out = stdout_of(&["census", "--p", "3"]);
    assert_eq!(
        out,
        concat!(
            "{\"p\":3,\"star\":false,\"counts\":[[1,0,0],[1,1,1],[1,1,1],[1,0,0]],",
            "\"agreement\":{\"enumerate\":true,\"closed_form\":true},",
            "\"identities\":{\"row_sums\":true,\"full_uniform\":true,\"star_uniform\":true,",
            "\"recurrence\":true,\"difference\":true,\"congruence\":true,",
            "\"closed_form_matches\":true,\"enumerate_matches_dp\":true},\"pass\":true}\n"
        )
    );
}

#[test]
fn census_identities_pass_for_odd_primes() {
    let (out, _, code) = ffderiv(&["census", "--p", "11"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"congruence\":true"));
    assert!(out.contains("\"pass\":true"));
}

#[test]
fn census_skips_what_is_out_of_range() {
    // p = 2 has no identity suite; large p has no enumeration cross-check.
    let (out, _, code) = ffderiv(&["census", "--p", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"identities\":null"));
    assert!(out.contains("\"pass\":true"));
    let (out, _, code) = ffderiv(&["census", "--p", "23"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"agreement\":{\"enumerate\":null,\"closed_form\":true}"));
    assert!(out.contains("\"pass\":true"));
}

#[test]
fn census_ring_mode_cross_checks_enumeration() {
    let out = stdout_of(&["census", "--ring", "6"]);
    assert_eq!(
        out,
        concat!(
            "{\"n\":6,\"counts\":[[1,0,0,0,0,0],[1,1,1,1,1,1],[2,3,2,3,2,3],",
            "[4,3,3,4,3,3],[3,2,3,2,3,2],[1,1,1,1,1,1],[0,0,0,1,0,0]],",
            "\"enumerate_agrees\":true,\"pass\":true}\n"
        )
    );
    // Beyond the enumeration bound the cross-check is skipped, not failed.
    let (out, _, code) = ffderiv(&["census", "--ring", "30"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"enumerate_agrees\":null"));
}

#[test]
fn census_rejects_ambiguous_requests() {
    let (_, err, code) = ffderiv(&["census"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    let (_, _, code) = ffderiv(&["census", "--p", "5", "--ring", "6"]);
    assert_eq!(code, 2);
}

#[test]
fn reruns_are_byte_identical() {
    let args = [
        "lemma-verify",
        "--p",
        "3",
        "--n",
        "2",
        "--trials",
        "50",
        "--seed",
        "42",
    ];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
    assert!(first.contains("\"seed\":42"));
    assert!(first.contains("\"pass\":true"));
}

#[test]
fn out_file_holds_the_stdout_bytes() {
    let path = std::env::temp_dir().join("ffderiv-census-out.json");
    let path_str = path.to_str().unwrap();
    let stdout = stdout_of(&["census", "--p", "7", "--star", "--out", path_str]);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(stdout, written);
    std::fs::remove_file(&path).ok();
}

#[test]
fn match_solves_the_two_variable_example() {
    let out = stdout_of(&[
        "match",
        "--field",
        F9,
        "--function",
        r#"{"anf":{"components":[{"(2,1)":1,"(0,2)":1}]}}"#,
    ]);
    assert_eq!(
        out,
        "{\"status\":\"ok\",\"g\":{\"anf\":{\"basis\":[[1,0],[0,1]],\"components\":[{\"(0,1)\":1,\"(0,2)\":2,\"(1,1)\":2,\"(1,2)\":1}]}},\"verified\":true}\n"
    );
}

#[test]
fn match_reports_the_obstruction_witness() {
    let (out, _, code) = ffderiv(&[
        "match",
        "--field",
        F9,
        "--function",
        r#"{"anf":{"components":[{"(1,2)":1}]}}"#,
    ]);
    assert_eq!(code, 1);
    assert_eq!(out, "{\"status\":\"no_match\",\"witness\":{\"j\":0,\"w\":[]}}\n");
}

#[test]
fn match_check_accepts_the_solved_pair() {
    let (out, _, code) = ffderiv(&[
        "match-check",
        "--field",
        F9,
        "--f",
        r#"{"anf":{"components":[{"(2,1)":1,"(0,2)":1}]}}"#,
        "--g",
        r#"{"anf":{"components":[{"(0,1)":1,"(0,2)":2,"(1,1)":2,"(1,2)":1}]}}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"match\":true}\n");
    let (out, _, code) = ffderiv(&[
        "match-check",
        "--field",
        F9,
        "--f",
        r#"{"anf":{"components":[{"(2,1)":1,"(0,2)":1}]}}"#,
        "--g",
        r#"{"anf":{"components":[{"(0,1)":1}]}}"#,
    ]);
    assert_eq!(code, 1);
    assert_eq!(out, "{\"match\":false}\n");
}

#[test]
fn gapn_exit_code_tracks_the_verdict() {
    let (out, _, code) = ffderiv(&["gapn", "--field", r#"{"p":2,"n":3}"#, "--function", "x^3"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"is_gapn\":true"));
    assert!(out.contains("\"max_solutions\":2"));

    let (out, _, code) = ffderiv(&["gapn", "--field", F9, "--function", "x^2"]);
    assert_eq!(code, 1);
    assert!(out.contains("\"is_gapn\":false"));
    assert!(out.contains("\"max_solutions\":9"));
    assert!(out.contains("\"worst_alpha\":1"));
    assert!(out.contains("\"worst_beta\":2"));
}

#[test]
fn derive_output_feeds_back_into_antideriv() {
    let out = stdout_of(&[
        "derive", "--field", F9, "--function", "x^2", "--dirs", "1", "--oracle",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["oracle_checked"], serde_json::json!(true));
    let rhs = parsed["result"].to_string();

    let out = stdout_of(&["antideriv", "--field", F9, "--function", &rhs, "--dirs", "1"]);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    let h = parsed["h"].to_string();

    // Differentiating the constructed antiderivative returns the rhs.
    let out = stdout_of(&["derive", "--field", F9, "--function", &h, "--dirs", "1"]);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["result"].to_string(), rhs);
}

#[test]
fn antideriv_reports_the_failing_coset() {
    let (out, _, code) = ffderiv(&[
        "antideriv",
        "--field",
        F9,
        "--function",
        r#"{"table":[1,0,0,0,0,0,0,0,0]}"#,
        "--dirs",
        "1",
    ]);
    assert_eq!(code, 1);
    assert_eq!(
        out,
        "{\"status\":\"none\",\"witness\":{\"kind\":\"coset\",\"indices\":[0,1,2]}}\n"
    );
}

#[test]
fn table_format_renders_text() {
    let (out, _, code) = ffderiv(&["census", "--p", "5", "--format", "table"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("census p=5 star=false\n"));
    assert!(out.contains("l=0"));

    let (out, _, code) = ffderiv(&["field-info", "--p", "2", "--n", "3", "--format", "table"]);
    assert_eq!(code, 0);
    assert!(out.contains("modulus  1,0,1,1"));
}

#[test]
fn invalid_inputs_exit_two_with_a_message() {
    let cases: &[&[&str]] = &[
        &["field-info", "--p", "6", "--n", "1"],
        &["field-info", "--p", "3"],
        &["gapn", "--field", r#"{"p":3,"n":2,"modulus":[1,1,1]}"#, "--function", "x"],
        &["gapn", "--field", F9, "--function", r#"{"table":[0,1]}"#],
        &["derive", "--field", F9, "--function", "x^2", "--dirs", "99"],
        &["match", "--field", r#"{"p":5,"n":1}"#, "--function", "x^2"],
        &["match", "--field", F9, "--function", "x^2", "--beta", "3"],
        &["antideriv", "--field", F9, "--function", "x", "--dirs", "1,3"],
        &["antideriv", "--field", F9, "--function", "x", "--dirs", "0"],
        &["census", "--p", "9"],
        &["census", "--ring", "100"],
        &["lemma-verify", "--p", "17", "--n", "1"],
        &["lemma-verify", "--p", "2", "--n", "17"],
    ];
    for args in cases {
        let (_, err, code) = ffderiv(args);
        assert_eq!(code, 2, "args {args:?} should be rejected");
        assert!(!err.is_empty(), "args {args:?} should explain the rejection");
    }
}

#[test]
fn polynomial_and_file_inputs_are_accepted() {
    let path = std::env::temp_dir().join("ffderiv-poly-input.txt");
    std::fs::write(&path, "g*x^2 + 2*x + 1\n").unwrap();
    let inline = stdout_of(&["derive", "--field", F9, "--function", "g*x^2 + 2*x + 1", "--dirs", "3"]);
    let from_file = stdout_of(&["derive", "--field", F9, "--function", path.to_str().unwrap(), "--dirs", "3"]);
    assert_eq!(inline, from_file);
    std::fs::remove_file(&path).ok();
}

#[test]
fn antideriv_builds_the_linear_example() {
    let out = stdout_of(&["antideriv", "--field", r#"{"p":3,"n":1}"#, "--function", "2*x + 1", "--dirs", "1"]);
    assert_eq!(out, "{\"status\":\"ok\",\"h\":{\"table\":[0,1,1]}}\n");
}

#[test]
fn match_rejects_dependent_directions() {
    // Over F_9 the element with index 2 is twice the one with index 1.
    let (_, err, code) = ffderiv(&["match", "--field", F9, "--function", "x^2", "--alpha", "1", "--beta", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("dependent"));
}

#[test]
fn match_of_zero_is_zero() {
    let zeros = r#"{"table":[0,0,0,0,0,0,0,0,0]}"#;
    let (out, _, code) = ffderiv(&["match", "--field", F9, "--function", zeros]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"status\":\"ok\",\"g\":{\"anf\":{\"basis\":[[1,0],[0,1]],\"components\":[{},{}]}},\"verified\":true}\n"
    );
}

#[test]
fn trial_runs_list_counterexamples() {
    let out = stdout_of(&["lemma-verify", "--p", "2", "--n", "2", "--trials", "3", "--seed", "0"]);
    assert!(out.contains("\"counterexamples\":[]"));
    let out = stdout_of(&["props-verify", "--p", "5", "--n", "1", "--trials", "4", "--seed", "9"]);
    assert!(out.contains("\"counterexamples\":[]"));
    assert!(out.contains("\"failures\":0"));
}
