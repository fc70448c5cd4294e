use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn records(&self) -> Vec<Value> {
        self.stdout
            .lines()
            .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("bad JSON {l:?}: {e}")))
            .collect()
    }

    fn error(&self) -> Value {
        let line = self.stderr.lines().last().expect("error record");
        let v: Value = serde_json::from_str(line).unwrap();
        validate("error", &v);
        v
    }
}

fn cix(args: &[&str], stdin: &str) -> Run {
    cix_env(args, stdin, &[])
}

fn cix_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cix"))
        .args(args)
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn cix");
    // cix may exit on a usage error before reading its input.
    if let Err(e) = child.stdin.take().unwrap().write_all(stdin.as_bytes()) {
        assert_eq!(e.kind(), std::io::ErrorKind::BrokenPipe, "{e}");
    }
    let Output { status, stdout, stderr } = child.wait_with_output().unwrap();
    Run {
        code: status.code().unwrap_or(-1),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn validate(schema: &str, value: &Value) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("schemas/{schema}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    let schema_value: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema_value).expect("valid schema");
    let errors: Vec<String> = validator.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?} in {value}");
}

fn construct(args: &[&str]) -> String {
    let run = cix(&[&["construct"], args].concat(), "");
    assert_eq!(run.code, 0, "{}", run.stderr);
    run.stdout
}

#[test]
fn construct_then_count() {
    let line = construct(&["s-graph", "--n", "7", "--r", "3", "--t", "1"]);
    assert_eq!(line.lines().count(), 1);
    let run = cix(&["count", "--r", "3"], &line);
    assert_eq!(run.code, 0);
    let recs = run.records();
    validate("count", &recs[0]);
    assert_eq!(recs[0]["count"], 9);
    assert_eq!(recs[0]["n"], 7);
}

#[test]
fn count_keeps_input_order() {
    let input = "C~\nC?\nCw\n";
    let run = cix(&["count", "--r", "3"], input);
    let counts: Vec<u64> = run.records().iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![4, 0, 1]);
    let table = cix(&["count", "--r", "3", "--format", "table"], input);
    assert_eq!(table.stdout, "4\n0\n1\n");
}

#[test]
fn thread_count_does_not_change_output() {
    let mut input = String::new();
    for n in [20, 25, 30, 35, 40] {
        input.push_str(&construct(&["rs-graph", "--n", &n.to_string()]));
    }
    let one = cix_env(&["check", "--r", "3", "--L", "0,1", "--allow-mixed"], &input, &[("CIX_THREADS", "1")]);
    let four = cix_env(&["check", "--r", "3", "--L", "0,1", "--allow-mixed"], &input, &[("CIX_THREADS", "4")]);
    assert_eq!(one.stdout, four.stdout);
    let flag = cix(&["--threads", "2", "check", "--r", "3", "--L", "0,1", "--allow-mixed"], &input);
    assert_eq!(one.stdout, flag.stdout);
    assert_eq!(one.records().len(), 5);
}

#[test]
fn skip_bad_and_empty_input() {
    let run = cix(&["count", "--r", "3", "--skip-bad"], "C~\nC\u{7f}\nC?\n");
    assert_eq!(run.code, 0);
    assert_eq!(run.records().len(), 2);
    let warnings: Vec<&str> = run.stderr.lines().collect();
    assert_eq!(warnings.len(), 1);
    let w: Value = serde_json::from_str(warnings[0]).unwrap();
    validate("warning", &w);
    assert_eq!(w["warning"]["line"], 2);

    let strict = cix(&["count", "--r", "3"], "C~\nC\u{7f}\nC?\n");
    assert_eq!(strict.code, 2);
    assert!(strict.stdout.is_empty());
    let e = strict.error();
    assert_eq!(e["error"]["kind"], "parse");
    assert!(e["error"]["message"].as_str().unwrap().contains("line 2"));

    let empty = cix(&["count", "--r", "3"], "");
    assert_eq!((empty.code, empty.stdout.as_str()), (0, ""));
}

#[test]
fn mixed_orders_need_flag() {
    let run = cix(&["count", "--r", "2"], "C~\nA_\n");
    assert_eq!(run.code, 2);
    assert_eq!(run.error()["error"]["kind"], "invalid-input");
    let ok = cix(&["count", "--r", "2", "--allow-mixed"], "C~\nA_\n");
    assert_eq!(ok.code, 0);
    assert_eq!(ok.records().len(), 2);
}

#[test]
fn check_verdicts_and_exit_codes() {
    let rs = construct(&["rs-graph", "--n", "30"]);
    let run = cix(&["check", "--r", "3", "--L", "0,1"], &rs);
    assert_eq!(run.code, 0);
    let rec = &run.records()[0];
    validate("check", rec);
    assert_eq!(rec["intersecting"], true);

    let run = cix(&["check", "--r", "3", "--L", "{0}"], "C~\n");
    assert_eq!(run.code, 1);
    let rec = &run.records()[0];
    validate("check", rec);
    assert_eq!(rec["witness"]["size"], 2);

    let s = construct(&["s-graph", "--n", "9", "--r", "4", "--t", "2"]);
    let run = cix(&["check", "--r", "4", "--t", "2"], &s);
    assert_eq!(run.code, 0);
    assert_eq!(run.records()[0]["L"], serde_json::json!([2, 3]));
}

#[test]
fn construct_json_and_errors() {
    let run = cix(&["construct", "petersen", "--format", "json", "--r", "2"], "");
    let rec = &run.records()[0];
    validate("construct", rec);
    assert_eq!(rec["kr_count"], 15);
    let run = cix(&["construct", "s-graph", "--n", "7", "--r", "3"], "");
    assert_eq!(run.code, 2);
    assert_eq!(run.error()["error"]["kind"], "usage");
}

#[test]
fn bound_outputs() {
    let run = cix(&["bound", "def", "--n", "9", "--r", "3", "--L", "0,1"], "");
    assert_eq!(run.code, 0);
    let rec = &run.records()[0];
    validate("bound-report", rec);
    assert_eq!(rec["value"], "12/1");

    let run = cix(&["bound", "def-turan", "--n", "100", "--r", "4", "--L", "0,2", "--measured", "5"], "");
    let rec = &run.records()[0];
    validate("bound-report", rec);
    assert_eq!(rec["value"], "13475/12");
    assert_eq!(rec["measured"], 5);

    let run = cix(&["bound", "ekr", "--n", "10", "--r", "3", "--t", "1", "--measured", "40"], "");
    validate("bound-report", &run.records()[0]);
    assert_eq!(run.records()[0]["value"], "36/1");
    assert_eq!(run.code, 0);

    let run = cix(&["bound", "two-set", "--n", "405", "--r", "3", "--l1", "0", "--l2", "1"], "");
    validate("bound-report", &run.records()[0]);
    assert_eq!(run.records()[0]["value"], "91125/4");

    let run = cix(&["bound", "two-set-chain", "--n", "405", "--r", "3", "--l1", "0", "--l2", "1"], "");
    validate("bound-report", &run.records()[0]);

    let run = cix(&["bound", "removal", "--n", "12", "--l", "3", "--r", "3", "--m", "2"], "");
    validate("bound-removal", &run.records()[0]);
    assert_eq!(run.records()[0]["value"], "96/97");

    let run = cix(&["bound", "fact", "--r", "3", "--x", "-1/2"], "");
    assert_eq!(run.code, 0, "{}", run.stderr);
    validate("bound-fact", &run.records()[0]);

    let run = cix(&["bound", "fact", "--r", "3", "--x", "1/2"], "");
    assert_eq!(run.code, 2);
    assert_eq!(run.error()["error"]["kind"], "invalid-input");

    let run = cix(&["bound", "fact", "--r", "3", "--x", "0.5"], "");
    assert_eq!(run.error()["error"]["kind"], "parse");

    let run = cix(&["bound", "chain", "--r", "4", "--L", "1,2,3"], "");
    validate("bound-chain", &run.records()[0]);

    let input = format!("{}C~\n", construct(&["turan", "--n", "4", "--parts", "2"]));
    let run = cix(&["bound", "fisher-ryan", "--l", "2", "--r", "2"], &input);
    let recs = run.records();
    assert_eq!(recs.len(), 2);
    for r in &recs {
        validate("bound-report", r);
    }
    assert_eq!(recs[0]["verdict"], "holds");
    assert_eq!(recs[1]["verdict"], "not-applicable");
    let run = cix(&["bound", "erdos", "--l", "2", "--r", "2"], &input);
    assert_eq!(run.records()[0]["verdict"], "holds");
}

#[test]
fn search_outputs() {
    let run = cix(&["search", "psi", "--n", "5", "--r", "3", "--L", "2"], "");
    let rec = &run.records()[0];
    validate("search-result", rec);
    assert_eq!(rec["exact"], true);

    let run = cix(&["search", "phi", "--n", "5", "--r", "3", "--L", "2"], "");
    let rec = &run.records()[0];
    validate("search-result", rec);
    assert_eq!(rec["value"], 4);

    let run = cix(&["search", "compare", "--n", "6", "--r", "3", "--L", "0"], "");
    let rec = &run.records()[0];
    validate("search-compare", rec);
    assert_eq!(rec["ratio"], "1/1");

    let run = cix(&["search", "psi", "--n", "20", "--r", "3", "--L", "1,2", "--heuristic", "--budget", "500", "--seed", "3"], "");
    let rec = &run.records()[0];
    validate("search-result", rec);
    assert_eq!(rec["exact"], false);
    assert!(rec["value"].as_u64().unwrap() >= 90);
    let again = cix(&["search", "psi", "--n", "20", "--r", "3", "--L", "1,2", "--heuristic", "--budget", "500", "--seed", "3"], "");
    assert_eq!(run.stdout, again.stdout);

    let run = cix(&["search", "phi", "--n", "100", "--r", "4", "--L", "0"], "");
    assert_eq!(run.code, 3);
    assert_eq!(run.error()["error"]["kind"], "budget");

    let run = cix(&["search", "psi", "--n", "8", "--r", "3", "--L", "0"], "");
    assert_eq!(run.code, 3);
}

#[test]
fn search_with_catalog() {
    let dir = std::env::temp_dir().join(format!("cix-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("four.g6");
    let lines: Vec<String> = clique_intersect::search::generate_graphs(4)
        .unwrap()
        .iter()
        .rev()
        .map(|g| clique_intersect::graph6::write_graph6(g).unwrap())
        .collect();
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let run = cix(&["search", "psi", "--n", "4", "--r", "3", "--L", "0,1", "--catalog", path.to_str().unwrap()], "");
    let rec = &run.records()[0];
    validate("search-result", rec);
    assert_eq!(rec["value"], 1);
    assert_eq!(rec["exact"], true);
    std::fs::write(&path, "C~\nC?\n").unwrap();
    let run = cix(&["search", "psi", "--n", "4", "--r", "3", "--L", "0,1,2", "--catalog", path.to_str().unwrap()], "");
    let rec = &run.records()[0];
    assert_eq!((rec["value"].as_u64(), rec["exact"].as_bool()), (Some(4), Some(false)));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn decompose_output() {
    let g = construct(&["single-l", "--n", "40", "--r", "3", "--l", "1"]);
    let run = cix(&["decompose", "--r", "3", "--l", "1"], &g);
    assert_eq!(run.code, 0);
    let rec = &run.records()[0];
    validate("decompose", rec);
    assert_eq!(rec["summary"]["cores"], serde_json::json!([[0]]));
    assert_eq!(rec["claims"]["all_passed"], true);

    let run = cix(&["decompose", "--r", "3", "--l", "1"], "C~\n");
    assert_eq!(run.code, 2);
    assert_eq!(run.error()["error"]["kind"], "invalid-input");
}

#[test]
fn stability_outputs() {
    let g = construct(&["s-graph", "--n", "12", "--r", "3", "--t", "1"]);
    let run = cix(&["stability", "ekr", "--r", "3", "--t", "1", "--eps", "1/10"], &g);
    assert_eq!(run.code, 0);
    let rec = &run.records()[0];
    validate("stability-check", rec);
    assert_eq!(rec["T"], serde_json::json!([0]));
    assert_eq!(rec["cost"], 0);
    assert_eq!(rec["bound"], "121/5");
    assert!(rec["precondition_met"].is_null());

    let c5 = construct(&["cycle", "--n", "5"]);
    let run = cix(&["stability", "furedi", "--l", "2"], &c5);
    let rec = &run.records()[0];
    validate("stability-check", rec);
    assert_eq!((rec["cost"].as_u64(), rec["bound"].as_str()), (Some(1), Some("1/1")));

    let t = construct(&["turan", "--n", "12", "--parts", "3"]);
    let run = cix(&["stability", "furedi-ext", "--l", "3", "--r", "3"], &t);
    validate("stability-check", &run.records()[0]);
    assert_eq!(run.records()[0]["verdict"], "holds");

    let run = cix(&["stability", "core", "--r", "4"], &construct(&["s-graph", "--n", "9", "--r", "4", "--t", "2"]));
    validate("stability-core", &run.records()[0]);
    assert_eq!(run.records()[0]["core"], serde_json::json!([0, 1]));

    for extra in [&[][..], &["--heuristic", "--seed", "5"][..]] {
        let run = cix(&[&["stability", "edits", "--l", "2"][..], extra].concat(), &c5);
        validate("stability-edits", &run.records()[0]);
        assert_eq!(run.records()[0]["cost"], 1);
    }

    let run = cix(&["stability", "ekr", "--r", "3", "--t", "1", "--eps", "1.5"], &g);
    assert_eq!(run.code, 2);
    assert_eq!(run.error()["error"]["kind"], "parse");
}

#[test]
fn suite_json_subset() {
    let run = cix(&["suite", "--only", "2,6", "--format", "json"], "");
    assert_eq!(run.code, 0);
    let rec = &run.records()[0];
    validate("suite", rec);
    assert_eq!(rec["batteries"].as_array().unwrap().len(), 2);
    let table = cix(&["suite", "--only", "2"], "");
    assert!(table.stdout.starts_with("PASS  2 s-graph-identity"), "{}", table.stdout);
}

#[test]
fn usage_errors_are_json() {
    let run = cix(&["frobnicate"], "");
    assert_eq!(run.code, 2);
    assert_eq!(run.error()["error"]["kind"], "usage");
    let run = cix(&["check", "--r", "3", "--L", "0,5"], "C~\n");
    assert_eq!(run.code, 2);
    assert_eq!(run.error()["error"]["kind"], "invalid-input");
    let run = cix_env(&["count", "--r", "3"], "", &[("CIX_THREADS", "many")]);
    assert_eq!(run.code, 2);
    let help = cix(&["--help"], "");
    assert_eq!(help.code, 0);
}
