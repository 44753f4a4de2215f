use std::io::Write;
use std::process::{Command, Output, Stdio};

use zonocube::io::{parse_cubillage, parse_cubillage_list, parse_digraph};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zonocube"))
        .args(args)
        .env_remove("ZONOCUBE_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = run(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let out = run(args, stdin);
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn enumerate_lists_parseable_documents() {
    let text = ok(&["enumerate", "--n", "5", "--d", "2"], None);
    let list = parse_cubillage_list(&text).unwrap();
    assert_eq!(list.len(), 62);
    assert_eq!(text.lines().count(), 64);
    let sym = parse_cubillage_list(&ok(&["enumerate", "--n", "5", "--d", "2", "--class", "symmetric"], None)).unwrap();
    assert_eq!(sym.len(), 10);
    assert!(sym.iter().all(|q| q.is_symmetric()));
}

#[test]
fn enumerate_csv_counts() {
    let text = ok(&["enumerate", "--n", "6", "--d", "1", "--class", "symmetric", "--format", "csv"], None);
    assert_eq!(text, "n,d,class,count\n6,1,symmetric,48\n");
}

#[test]
fn symmetric_labels_round_trip() {
    let text = ok(&["enumerate", "--n", "4", "--d", "1", "--class", "symmetric", "--labels", "symmetric"], None);
    assert!(text.contains("\"label_mode\":\"symmetric\""));
    let natural = ok(&["enumerate", "--n", "4", "--d", "1", "--class", "symmetric"], None);
    assert_eq!(parse_cubillage_list(&text).unwrap(), parse_cubillage_list(&natural).unwrap());
}

#[test]
fn digraph_document_and_dot() {
    let doc = parse_digraph(&ok(&["digraph", "--n", "5", "--d", "2"], None)).unwrap();
    assert_eq!((doc.nodes.len(), doc.edges.len()), (10, 10));
    assert_eq!(doc.cubillages().unwrap().len(), 10);
    let dot = ok(&["digraph", "--n", "4", "--d", "2", "--format", "dot"], None);
    assert!(dot.starts_with("digraph") && dot.contains("kind=barrel"));
}

#[test]
fn flips_read_standard_input() {
    let text = ok(&["flips", "-"], Some(r#"{"n":4,"d":1,"inversions":[]}"#));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with(r#"{"kind":"simple""#));
    assert!(lines[1].starts_with(r#"{"kind":"double""#));
    let typea = ok(&["flips", "-", "--generator", "typeA"], Some(r#"{"n":4,"d":1,"inversions":[]}"#));
    assert_eq!(typea.lines().count(), 3);
}

#[test]
fn map_reduces_and_cores() {
    let red = ok(&["map", "red", "-"], Some(r#"{"n":5,"d":2,"inversions":[[2,3,4]]}"#));
    assert!(parse_cubillage(&red).unwrap().is_standard());
    let cor = ok(&["map", "cor", "-"], Some(r#"{"n":4,"d":2,"inversions":[]}"#));
    assert_eq!(cor.trim(), r#"{"n":2,"d":1,"inversions":[]}"#);
}

#[test]
fn lift_writes_to_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lifts.json");
    ok(&["lift", "--n", "4", "--d", "1", "-o", path.to_str().unwrap()], None);
    let lifts = parse_cubillage_list(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(lifts.len(), 2);
    assert!(lifts.iter().all(|q| q.is_skew_symmetric()));
}

#[test]
fn export_renders_svg_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.json");
    std::fs::write(&q, r#"{"n":5,"d":2,"inversions":[[2,3,4]]}"#).unwrap();
    let svg = ok(&["export", q.to_str().unwrap(), "--format", "svg"], None);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    let g = dir.path().join("g.json");
    std::fs::write(&g, ok(&["digraph", "--n", "4", "--d", "1"], None)).unwrap();
    let dot = ok(&["export", g.to_str().unwrap(), "--format", "dot"], None);
    assert_eq!(dot.matches(" -> ").count(), 8);
}

#[test]
fn checks_emit_passing_reports() {
    let text = ok(&["check", "unique-extremes", "--n", "6", "--d", "3"], None);
    let report: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(report["verdict"], "pass");
    assert_eq!(report["replay"], "zonocube check unique-extremes --n 6 --d 3");
    assert_eq!(ok(&["check", "conjecture1", "--n", "6", "--d", "3"], None).len(), text.len());
    let text = ok(&["check", "barrel-divergence", "--n", "5", "--d", "2"], None);
    assert!(text.contains("\"verdict\":\"report-only\""));
}

#[test]
fn thread_count_does_not_change_output() {
    let one = ok(&["--threads", "1", "digraph", "--n", "6", "--d", "2"], None);
    let two = ok(&["--threads", "3", "digraph", "--n", "6", "--d", "2"], None);
    assert_eq!(one, two);
}

#[test]
fn exit_codes() {
    let (c, err) = code(&["map", "red", "-"], Some(r#"{"n":5,"d":2,"inversions":[[1,2,4]]}"#));
    assert_eq!(c, 2);
    assert!(err.contains("bi-convex"), "{err}");
    let (c, err) = code(&["map", "red", "-"], Some("{\"n\":5,\n\"d\":"));
    assert_eq!(c, 2);
    assert!(err.contains("line 2"), "{err}");
    let (c, err) = code(&["map", "red", "-"], Some(r#"{"n":5,"d":2,"inversions":[[1,2,3]]}"#));
    assert_eq!(c, 2);
    assert!(err.contains("precondition"), "{err}");
    let (c, err) = code(&["lift", "--n", "5", "--d", "1"], None);
    assert_eq!(c, 2);
    assert!(err.contains("barrel"), "{err}");
    let (c, err) = code(&["--budget", "10", "enumerate", "--n", "7", "--d", "2"], None);
    assert_eq!(c, 3);
    assert!(err.contains("budget"), "{err}");
    let (c, _) = code(&["enumerate", "--n", "4"], None);
    assert_eq!(c, 2);
}
