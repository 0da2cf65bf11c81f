mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use common::corpus_dir;

fn linkage(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkage")).args(args).output().expect("binary runs")
}

fn copy_inputs(dir: &Path) {
    for sub in ["rings", "modules", "ideals"] {
        fs::create_dir_all(dir.join(sub)).unwrap();
        for e in fs::read_dir(corpus_dir().join(sub)).unwrap() {
            let p = e.unwrap().path();
            fs::copy(&p, dir.join(sub).join(p.file_name().unwrap())).unwrap();
        }
    }
}

fn report(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn empty_corpus_gives_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = linkage(&["suite", "--name", "all", "--corpus", dir.path().to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"].as_array().unwrap().len(), 0);
    assert_eq!(r["summary"]["fail"], 0);
}

#[test]
fn parse_error_aborts_only_its_item() {
    let dir = tempfile::tempdir().unwrap();
    copy_inputs(dir.path());
    fs::write(dir.path().join("modules/broken.mod"), "module B over R { generators = [e:0]; relations = [\"x*\"] }").unwrap();
    fs::write(
        dir.path().join("corpus.toml"),
        r#"
[[item]]
name = "broken"
ring = "rings/trunc3.ring"
module = "modules/broken.mod"

[[item]]
name = "good"
ring = "rings/trunc3.ring"
module = "modules/k_x.mod"
"#,
    )
    .unwrap();
    let out = dir.path().join("r.json");
    let o = linkage(&["suite", "--name", "L", "--corpus", dir.path().to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = report(&out);
    let rows = r["results"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["item"], "broken");
    assert_eq!(rows[0]["status"], "fail");
    assert!(rows[0]["detail"].as_str().unwrap().starts_with("item aborted"));
    assert_eq!(rows[1]["item"], "good");
    assert_eq!(rows[1]["status"], "pass");
}

#[test]
fn failing_pin_exits_one_and_names_the_pin() {
    let dir = tempfile::tempdir().unwrap();
    copy_inputs(dir.path());
    fs::write(
        dir.path().join("corpus.toml"),
        r#"
[[item]]
name = "wrong-pin"
ring = "rings/trunc3.ring"
module = "modules/k_x.mod"
[item.expect]
linked = false
"#,
    )
    .unwrap();
    let out = dir.path().join("r.json");
    let o = linkage(&["suite", "--name", "L", "--corpus", dir.path().to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = report(&out);
    let row = &r["results"][0];
    assert_eq!(row["status"], "fail");
    assert!(row["detail"].as_str().unwrap().contains("pin `linked`"), "{}", row["detail"]);
}

#[test]
fn status_pin_mismatch_fails() {
    let dir = tempfile::tempdir().unwrap();
    copy_inputs(dir.path());
    fs::write(
        dir.path().join("corpus.toml"),
        r#"
[[item]]
name = "free"
ring = "rings/trunc3.ring"
module = "modules/free.mod"
[item.expect]
status = { L = "pass" }
"#,
    )
    .unwrap();
    let out = dir.path().join("r.json");
    let o = linkage(&["suite", "--name", "L", "--corpus", dir.path().to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(report(&out)["results"][0]["detail"].as_str().unwrap().contains("pin `status.L`"));
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = corpus_dir();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = linkage(&[
            "suite", "--name", "A,L", "--corpus", corpus.to_str().unwrap(), "--seed", "42", "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn unknown_suite_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = linkage(&["suite", "--name", "Z", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_flagship() {
    let c = corpus_dir();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("check.json");
    let o = linkage(&[
        "check",
        "--ring",
        c.join("rings/trunc3.ring").to_str().unwrap(),
        "--module",
        c.join("modules/k_x.mod").to_str().unwrap(),
        "--wrt",
        "omega",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(r["verdict"]["verdict"], "horizontally_linked");
    assert_eq!(r["hypotheses"]["finite_injective_dimension_in_low_depth"], "structural");
}

#[test]
fn check_with_ideal() {
    let c = corpus_dir();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("check.json");
    let o = linkage(&[
        "check",
        "--ring",
        c.join("rings/plane.ring").to_str().unwrap(),
        "--module",
        c.join("modules/quot_x.mod").to_str().unwrap(),
        "--ideal",
        c.join("ideals/x2.ideal").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(r["verdict"]["verdict"], "horizontally_linked");
    assert_eq!(r["grade_module"], r["grade_ideal"]);
}

#[test]
fn compute_subcommands() {
    let c = corpus_dir();
    let ring = c.join("rings/trunc3.ring");
    let module = c.join("modules/k_x.mod");
    for op in ["lambda", "transpose", "ext", "localcoh"] {
        let o = linkage(&["compute", op, "--ring", ring.to_str().unwrap(), "--module", module.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{op}: {}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(v.is_object());
    }
    let o = linkage(&["compute", "lambda", "--ring", ring.to_str().unwrap(), "--module", "/nonexistent.mod"]);
    assert_eq!(o.status.code(), Some(2));
}
