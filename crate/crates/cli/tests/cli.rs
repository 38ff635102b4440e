//! End-to-end tests of the `coxcomm` binary: pinned outputs for the known
//! worked examples, exit-code contracts, budget handling (flag and
//! environment variable), and byte-level determinism.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn coxcomm(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coxcomm"));
    // Isolate every run from the ambient environment under test.
    cmd.env_remove("COXCOMM_BUDGET_MEMO");
    for (key, value) in env {
        cmd.env(key, value);
    }
    cmd.args(args).output().expect("binary must spawn")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout must be UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr must be UTF-8")
}

fn assert_exit(output: &Output, code: i32) {
    assert_eq!(
        output.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        stdout_of(output),
        stderr_of(output)
    );
}

/// The four-letter alphabet with ab, cd, and ad commuting, as a temp file.
fn alphabet_file() -> NamedTempFile {
    let mut file = NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"symbols": ["a","b","c","d"], "commuting_pairs": [["a","b"],["c","d"],["a","d"]]}}"#
    )
    .unwrap();
    file
}

#[test]
fn poset_renders_the_reference_dot_graph() {
    let alphabet = alphabet_file();
    let output = coxcomm(
        &["poset", "--alphabet", alphabet.path().to_str().unwrap(), "--word", "a b c d", "--format", "dot"],
        &[],
    );
    assert_exit(&output, 0);
    let expected = "digraph word_poset {\n  rankdir=BT;\n  n1 [label=\"1:a\"];\n  n2 [label=\"2:b\"];\n  n3 [label=\"3:c\"];\n  n4 [label=\"4:d\"];\n  n1 -> n3;\n  n2 -> n3;\n  n2 -> n4;\n}\n";
    assert_eq!(stdout_of(&output), expected);
}

#[test]
fn poset_text_lists_labels_and_covers() {
    let alphabet = alphabet_file();
    let output = coxcomm(
        &["poset", "--alphabet", alphabet.path().to_str().unwrap(), "--word", "b,a,d,b,c,d"],
        &[],
    );
    assert_exit(&output, 0);
    let text = stdout_of(&output);
    assert!(text.contains("size: 6"), "got: {text}");
    for cover in ["1 < 3", "2 < 5", "3 < 4", "4 < 5", "4 < 6"] {
        assert!(text.contains(cover), "missing cover {cover} in: {text}");
    }
}

#[test]
fn poset_json_has_one_based_covers() {
    let alphabet = alphabet_file();
    let output = coxcomm(
        &["poset", "--alphabet", alphabet.path().to_str().unwrap(), "--word", "a b c d", "--format", "json"],
        &[],
    );
    assert_exit(&output, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["size"], 4);
    assert_eq!(value["covers"], serde_json::json!([[1, 3], [2, 3], [2, 4]]));
    assert_eq!(value["word"], serde_json::json!(["a", "b", "c", "d"]));
}

#[test]
fn poset_of_the_empty_word_is_empty() {
    let alphabet = alphabet_file();
    let output = coxcomm(
        &["poset", "--alphabet", alphabet.path().to_str().unwrap(), "--word", "", "--format", "json"],
        &[],
    );
    assert_exit(&output, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["size"], 0);
    assert_eq!(value["covers"], serde_json::json!([]));
}

#[test]
fn class_lists_the_five_reference_words() {
    let alphabet = alphabet_file();
    let output = coxcomm(
        &["class", "--alphabet", alphabet.path().to_str().unwrap(), "--word", "a b c d"],
        &[],
    );
    assert_exit(&output, 0);
    assert_eq!(
        stdout_of(&output),
        "a b c d\na b d c\nb a c d\nb a d c\nb d a c\ntotal: 5\n"
    );
}

#[test]
fn class_budget_exhaustion_exits_three() {
    let alphabet = alphabet_file();
    let output = coxcomm(
        &["class", "--alphabet", alphabet.path().to_str().unwrap(), "--word", "a b c d", "--budget-class", "2"],
        &[],
    );
    assert_exit(&output, 3);
}

#[test]
fn unknown_symbol_exits_two() {
    let alphabet = alphabet_file();
    let output = coxcomm(
        &["poset", "--alphabet", alphabet.path().to_str().unwrap(), "--word", "a z"],
        &[],
    );
    assert_exit(&output, 2);
    assert!(stderr_of(&output).contains("unknown symbol"));
}

#[test]
fn dot_format_is_rejected_outside_poset() {
    let alphabet = alphabet_file();
    let output = coxcomm(
        &["class", "--alphabet", alphabet.path().to_str().unwrap(), "--word", "a", "--format", "dot"],
        &[],
    );
    assert_exit(&output, 2);
}

#[test]
fn recurrence_reproduces_the_worked_permutation_count() {
    let output = coxcomm(&["coxeter", "recurrence", "--type", "A3", "--perm", "4231"], &[]);
    assert_exit(&output, 0);
    assert_eq!(
        stdout_of(&output),
        "total: 3\n+ {s1} -> 2\n+ {s3} -> 2\n- {s1 s3} -> 1\n"
    );
}

#[test]
fn recurrence_json_serializes_counts_as_strings() {
    let output = coxcomm(
        &["coxeter", "recurrence", "--type", "A3", "--perm", "4231", "--format", "json"],
        &[],
    );
    assert_exit(&output, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["total"], "3");
    let terms = value["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms[0]["subset"], serde_json::json!(["s1"]));
    assert_eq!(terms[0]["sign"], 1);
    assert_eq!(terms[0]["count"], "2");
    assert_eq!(terms[2]["subset"], serde_json::json!(["s1", "s3"]));
    assert_eq!(terms[2]["sign"], -1);
    assert_eq!(terms[2]["count"], "1");
}

#[test]
fn count_reduced_matches_the_small_known_values() {
    let output = coxcomm(
        &["coxeter", "count-reduced", "--type", "A2", "--word", "s1,s2,s1"],
        &[],
    );
    assert_exit(&output, 0);
    assert_eq!(stdout_of(&output), "2\n");

    let output = coxcomm(
        &["coxeter", "count-reduced", "--type", "A3", "--word", "s1,s2,s1,s3,s2,s1", "--format", "json"],
        &[],
    );
    assert_exit(&output, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["count"], "16");
}

#[test]
fn check_distinguishes_reduced_from_unreduced_words() {
    let output = coxcomm(&["coxeter", "check", "--type", "A2", "--word", "s1,s1"], &[]);
    assert_exit(&output, 0);
    assert_eq!(stdout_of(&output), "false\n");

    let output = coxcomm(&["coxeter", "check", "--type", "A2", "--word", "s1,s2,s1"], &[]);
    assert_exit(&output, 0);
    assert_eq!(stdout_of(&output), "true\n");

    let output = coxcomm(
        &["coxeter", "check", "--type", "A2", "--word", "s1,s2", "--format", "json"],
        &[],
    );
    assert_exit(&output, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["reduced"], true);
}

#[test]
fn classes_lists_one_canonical_word_per_class() {
    let output = coxcomm(
        &["coxeter", "classes", "--type", "A3", "--word", "s1,s2,s1,s3,s2,s1"],
        &[],
    );
    assert_exit(&output, 0);
    let text = stdout_of(&output);
    assert!(text.ends_with("total: 8\n"), "got: {text}");
    assert_eq!(text.lines().count(), 9);
    assert_eq!(text.lines().next(), Some("s1 s2 s1 s3 s2 s1"));
}

#[test]
fn cset_reports_the_two_depth_functions_of_the_rank_two_longest_element() {
    let output = coxcomm(
        &["coxeter", "cset", "--type", "A2", "--word", "s1 s2 s1", "--format", "json"],
        &[],
    );
    assert_exit(&output, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["canonical_word"], serde_json::json!(["s1", "s2", "s1"]));
    assert_eq!(value["count"], 2);
    let lambdas = value["lambdas"].as_array().unwrap();
    assert_eq!(lambdas.len(), 2);
    for lambda in lambdas {
        let entries = lambda.as_array().unwrap();
        assert_eq!(entries.len(), 3, "three inversions, three entries");
        for entry in entries {
            assert!(entry["value"].as_u64().unwrap() >= 1);
            assert!(entry["root"].is_array());
        }
    }
}

#[test]
fn matrix_file_defines_a_usable_system() {
    let mut file = NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"generators": ["u","v"], "matrix": [[1,5],[5,1]]}}"#
    )
    .unwrap();
    let output = coxcomm(
        &["coxeter", "count-reduced", "--matrix", file.path().to_str().unwrap(), "--word", "u,v,u,v,u"],
        &[],
    );
    assert_exit(&output, 0);
    assert_eq!(stdout_of(&output), "2\n");
}

#[test]
fn env_variable_caps_the_memo_budget_and_the_flag_overrides_it() {
    let args = ["coxeter", "count-reduced", "--type", "A3", "--perm", "4231"];
    let strict = coxcomm(&args, &[("COXCOMM_BUDGET_MEMO", "1")]);
    assert_exit(&strict, 3);

    let overridden_args = [
        "coxeter", "count-reduced", "--type", "A3", "--perm", "4231", "--budget-memo", "100000",
    ];
    let overridden = coxcomm(&overridden_args, &[("COXCOMM_BUDGET_MEMO", "1")]);
    assert_exit(&overridden, 0);

    let malformed = coxcomm(&args, &[("COXCOMM_BUDGET_MEMO", "banana")]);
    assert_exit(&malformed, 2);
}

#[test]
fn permutations_require_a_matching_type_a_system() {
    let output = coxcomm(&["coxeter", "recurrence", "--type", "B3", "--perm", "4231"], &[]);
    assert_exit(&output, 2);

    let output = coxcomm(&["coxeter", "recurrence", "--type", "A4", "--perm", "4231"], &[]);
    assert_exit(&output, 2);
    assert!(stderr_of(&output).contains("rank"));
}

#[test]
fn identical_invocations_give_byte_identical_output() {
    let alphabet = alphabet_file();
    let args = [
        "class", "--alphabet", alphabet.path().to_str().unwrap(), "--word", "b a d b c d", "--format", "json",
    ];
    let first = coxcomm(&args, &[]);
    let second = coxcomm(&args, &[]);
    assert_exit(&first, 0);
    assert_eq!(first.stdout, second.stdout);

    let seeded = ["selftest", "--seed", "11", "--draws", "10"];
    let first = coxcomm(&seeded, &[]);
    let second = coxcomm(&seeded, &[]);
    assert_exit(&first, 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn selftest_passes_and_reports_its_seed() {
    let output = coxcomm(&["selftest", "--seed", "3", "--draws", "25"], &[]);
    assert_exit(&output, 0);
    let text = stdout_of(&output);
    assert!(text.contains("group invariants: 25 draws ok"), "got: {text}");
    assert!(text.contains("selftest: ok (seed 3)"), "got: {text}");
}
