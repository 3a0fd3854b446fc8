mod common;

use common::{check_golden, hurwitzcalc, run_case, CASES};
use serde_json::Value;

#[test]
fn golden_files_are_reproduced() {
    check_golden(3).unwrap();
}

#[test]
fn json_output_round_trips() {
    for (name, args) in CASES {
        let out = run_case(args, "json");
        let value: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(hurwitzcalc::canonical(&value), out.stdout, "{name}");
    }
}

fn degree_list(v: &Value) -> String {
    let parts: Vec<String> = v.as_array().unwrap().iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn table_mentions(table: &str, v: &Value) {
    for (key, field) in v.as_object().unwrap() {
        let needle = match key.as_str() {
            "delta" | "genus" => field.to_string(),
            "monomial" | "text" => field.as_str().unwrap().to_string(),
            "hurwitz_degree" | "chow_degrees" | "genus_vector" => degree_list(field),
            _ => {
                if field.is_object() {
                    table_mentions(table, field);
                } else if let Some(items) = field.as_array() {
                    items
                        .iter()
                        .filter(|x| x.is_object())
                        .for_each(|x| table_mentions(table, x));
                }
                continue;
            }
        };
        assert!(table.contains(&needle), "table lacks {key} = {needle}:\n{table}");
    }
}

#[test]
fn table_and_json_agree() {
    for (_, args) in CASES {
        let json: Value = serde_json::from_str(&run_case(args, "json").stdout).unwrap();
        let table = run_case(args, "table").stdout;
        table_mentions(&table, &json["result"]);
    }
}

#[test]
fn stdin_request_matches_flags() {
    let request = r#"{"schema": 1, "spec": {"kind": "complete_intersection", "ambient": [2, 2],
        "degrees": [[2, 1], [3, 4]]}, "query": "hurwitz", "alpha": [1, 1], "options": {"output": "json"}}"#;
    let from_stdin = hurwitzcalc(&[], request);
    let from_flags = run_case(CASES[2].1, "json");
    assert_eq!(from_stdin.code, 0, "{}", from_stdin.stderr);
    assert_eq!(from_stdin.stdout, from_flags.stdout);
}

#[test]
fn validation_errors_exit_with_two() {
    assert_eq!(hurwitzcalc(&[], "").code, 2);
    assert_eq!(hurwitzcalc(&[], "{ not json").code, 2);
    assert_eq!(
        hurwitzcalc(&[], r#"{"schema": 2, "spec": {"kind": "game", "format": [2, 2]}}"#).code,
        2
    );
    let wrong_alpha = hurwitzcalc(
        &[
            "hurwitz",
            "--ambient",
            "2,2",
            "--degree-matrix",
            "2,1;3,4",
            "--alpha",
            "1,1,1",
        ],
        "",
    );
    assert_eq!(wrong_alpha.code, 2);
    assert!(!wrong_alpha.stderr.is_empty());
    assert_eq!(
        hurwitzcalc(&["genus", "--ambient", "2,2", "--degree-matrix", "2,1;3"], "").code,
        2
    );
}

#[test]
fn rejected_specs_exit_with_three() {
    let coarse = r#"{"dim": 2, "supports": [[[0, 0], [2, 0], [0, 2]]]}"#;
    let out = hurwitzcalc(&["multidegree", "--toric", coarse], "");
    assert_eq!(out.code, 3, "{}", out.stderr);
    assert!(out.stdout.is_empty());
}
