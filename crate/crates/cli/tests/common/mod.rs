use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

/// Name of a golden case and its arguments, without `--format`.
pub const CASES: &[(&str, &[&str])] = &[
    ("ci_genus", &["genus", "--ambient", "2,2", "--degree-matrix", "2,1;3,4"]),
    (
        "ci_genus_beta",
        &[
            "genus",
            "--ambient",
            "2,2",
            "--degree-matrix",
            "2,1;3,4",
            "--beta",
            "2,1",
        ],
    ),
    (
        "ci_hurwitz",
        &[
            "hurwitz",
            "--ambient",
            "2,2",
            "--degree-matrix",
            "2,1;3,4",
            "--alpha",
            "1,1",
        ],
    ),
    (
        "ci_sweep",
        &["hurwitz", "--ambient", "2,2", "--degree-matrix", "2,1;3,4"],
    ),
    ("graph_sweep", &["hurwitz", "--graph", "3:1-2,2-3"]),
    ("toric_fourfold_chow", &["--input", "@toric_fourfold_chow.request.json"]),
];

pub const FORMATS: &[&str] = &["table", "json"];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn hurwitzcalc(args: &[&str], stdin: &str) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(file) => golden_dir().join(file).display().to_string(),
            None => a.to_string(),
        })
        .collect();
    let mut child = Command::new(env!("CARGO_BIN_EXE_hurwitzcalc"))
        .args(&args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child
        .stdin
        .take()
        .expect("stdin")
        .write_all(stdin.as_bytes())
        .expect("stdin written");
    let out = child.wait_with_output().expect("binary finishes");
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn run_case(args: &[&str], format: &str) -> Output {
    let mut full = args.to_vec();
    full.extend(["--format", format]);
    hurwitzcalc(&full, "")
}

/// Byte comparison of every golden case in every format, each run `runs`
/// times.
pub fn check_golden(runs: usize) -> Result<(), String> {
    for (name, args) in CASES {
        for format in FORMATS {
            let path = golden_dir().join(format!("{name}.{format}.txt"));
            let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            for run in 0..runs {
                let out = run_case(args, format);
                if out.code != 0 {
                    return Err(format!("{name} ({format}) exited {}: {}", out.code, out.stderr));
                }
                if out.stdout != expected {
                    return Err(format!("{name} ({format}) run {run} differs from {}", path.display()));
                }
            }
        }
    }
    Ok(())
}
