//! Golden transcripts: exit code and output of every subcommand on the
//! fixtures.

use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn sctk(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sctk"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(root().join("fixtures").join(name)).unwrap()
}

#[test]
fn validate() {
    let (code, out, _) = sctk(&["validate", "fixtures/twopath.des"]);
    assert_eq!(code, 0);
    assert_eq!(out, "twopath: 2 events, 3 states, 2 transitions, 2 marked, nonblocking\n");

    let bad = tmp("bad.des");
    std::fs::write(&bad, "des bad\nevents:\nx c o\nstates: 1\ninitial: 0\nmarked:\ntransitions:\n0 y 0\n").unwrap();
    let (code, out, err) = sctk(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 8: unknown event `y`"), "{err}");

    let (code, _, err) = sctk(&["validate", "fixtures/missing.des"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: fixtures/missing.des"));
}

#[test]
fn trim_and_nonblocking() {
    let (code, out, _) = sctk(&["trim", "fixtures/twopath.des"]);
    assert_eq!(code, 0);
    assert_eq!(out, fixture("twopath.des"));
    assert_eq!(sctk(&["nonblocking", "fixtures/twopath.des"]), (0, "nonblocking: true\n".into(), String::new()));

    let blocking = tmp("blocking.des");
    std::fs::write(&blocking, "des b\nevents:\na u o\nstates: 2\ninitial: 0\nmarked: 0\ntransitions:\n0 a 1\n").unwrap();
    let (code, out, _) = sctk(&["nonblocking", blocking.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(out, "nonblocking: false\nwitness: path a\n");
    let (code, out, _) = sctk(&["trim", blocking.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("states: 1\n"));
}

#[test]
fn products() {
    let (code, out, _) = sctk(&["sync", "fixtures/twopath.des", "fixtures/spec_c.des"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("des sync(twopath,spec_c)\n"), "{out}");
    let (code, _, _) = sctk(&["meet", "fixtures/twopath.des", "fixtures/clash.des"]);
    assert_eq!(code, 0);
    let (code, _, err) = sctk(&["meet", "fixtures/twopath.des", "fixtures/taint.des"]);
    assert_eq!(code, 2);
    assert!(err.contains("alphabets differ"));
}

#[test]
fn projections() {
    let (code, out, _) = sctk(&["project", "fixtures/twopath.des", "--obs", "c"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "des P(twopath)\nevents:\nc c o\nstates: 2\ninitial: 0\nmarked: 0 1\ntransitions:\n0 c 1\n"
    );
    let (code, out, _) = sctk(&["invproject", "fixtures/spec_c.des", "--alphabet", "fixtures/twopath.des"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 a 0\n") && out.contains("1 a 1\n"), "{out}");
    let (code, _, err) = sctk(&["project", "fixtures/twopath.des", "--obs", "z"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown event label `z`"));
}

#[test]
fn synthesis() {
    let (code, out, _) = sctk(&["supcon", "--plant", "fixtures/supc.des", "--spec", "fixtures/spec_c.des"]);
    assert_eq!(code, 0);
    assert!(out.contains("states: 0\ninitial: none\n"), "{out}");

    let sup = tmp("sup.des");
    let (code, out, _) = sctk(&[
        "supcon", "--plant", "fixtures/supc.des", "--spec", "fixtures/supc.des", "-o", sup.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("empty: false\n"), "{out}");
    assert!(std::fs::read_to_string(&sup).unwrap().starts_with("des supcon(supc,supc)\n"));

    assert_eq!(sctk(&["controllable", "--cand", "fixtures/twopath.des", "--plant", "fixtures/twopath.des"]).0, 0);
    let (code, out, _) = sctk(&["controllable", "--cand", "fixtures/spec_c.des", "--plant", "fixtures/supc.des"]);
    assert_eq!(code, 1);
    assert_eq!(out, "controllable: false\nwitness: path ε then event u\n");
}

#[test]
fn checks() {
    assert_eq!(sctk(&["check", "gcc", "fixtures/twopath.des", "--obs", "c"]), (0, "gcc: true\n".into(), String::new()));
    assert_eq!(
        sctk(&["check", "gcc", "fixtures/clash.des", "--obs", "c"]),
        (
            1,
            "gcc: false\nwitness: states (0, 1) via (ε, a): controllable `c` defined at both states\n".into(),
            String::new()
        )
    );
    // both states enable `c`, which agreement mode accepts
    assert_eq!(sctk(&["check", "gcc", "fixtures/clash.des", "--obs", "c", "--mode", "agreement"]).0, 0);
    let (code, _, err) = sctk(&["check", "gcc", "fixtures/twopath.des", "--obs", "a"]);
    assert_eq!(code, 2);
    assert!(err.contains("controllable events are unobservable: c"));
    assert_eq!(sctk(&["check", "gcc", "fixtures/twopath.des", "--obs", "c", "--mode", "lax"]).0, 2);

    assert_eq!(sctk(&["check", "occ", "fixtures/taint.des", "--obs", "u"]).0, 1);
    assert_eq!(sctk(&["check", "observer", "fixtures/obs_a.des", "--obs", "b"]).0, 0);
    assert_eq!(sctk(&["check", "observer", "fixtures/obs_b.des", "--obs", "b"]).0, 1);
    assert_eq!(sctk(&["check", "observer", "fixtures/obs_b.des", "--obs", "b", "--which", "closed"]).0, 1);
    assert_eq!(sctk(&["check", "normal", "fixtures/twopath.des", "--obs", "c", "--cand", "fixtures/twopath.des"]).0, 0);
    assert_eq!(sctk(&["check", "paranormal", "fixtures/twopath.des", "--obs", "c", "--cand", "fixtures/twopath.des"]).0, 0);
    let (code, _, err) = sctk(&["check", "normal", "fixtures/twopath.des", "--obs", "c"]);
    assert_eq!(code, 2);
    assert!(err.contains("--cand"));
}

#[test]
fn gcc_alphabet_cover_and_reduction() {
    let (code, out, _) = sctk(&["find-gcc-alphabet", "fixtures/twopath.des"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("observable: {c}\n"), "{out}");
    assert_eq!(
        sctk(&["cover", "fixtures/twopath.des", "--obs", "c"]),
        (0, "cell 0: {0, 1}\ncell 1: {2}\n".into(), String::new())
    );
    let (code, _, err) = sctk(&["cover", "fixtures/clash.des", "--obs", "c"]);
    assert_eq!(code, 2);
    assert!(err.contains("not G-control consistent"));
    let (code, out, _) = sctk(&["reduce", "fixtures/twopath.des", "--obs", "c"]);
    assert_eq!(code, 0);
    assert!(out.contains("marked: 0 1\ntransitions:\n0 c 1\n"), "{out}");
}

#[test]
fn pipelines_and_verification() {
    let args = ["--plant", "fixtures/twopath.des", "--spec", "fixtures/spec_c.des", "--obs", "c"];
    let (code, out, _) = sctk(&[&["decsup"], &args[..]].concat());
    assert_eq!(code, 0);
    assert!(out.contains("marked: 1\ntransitions:\n0 c 1\n"), "{out}");
    let (code, out, _) = sctk(&[&["monosup"], &args[..]].concat());
    assert_eq!(code, 0);
    assert!(out.contains("states: 0\n"), "{out}");

    let report = tmp("theorem1.json");
    let (code, out, _) = sctk(&[&["verify", "theorem1"], &args[..], &["--report", report.to_str().unwrap()]].concat());
    assert_eq!(code, 1);
    assert_eq!(
        out,
        "gcc: true\nequal: false\nverdict: left-proper-subset\nonly in L_m(sync(SUP0, G)): c\nlemma1: false\nwitness: path a\noracle: confirmed\n"
    );
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["tool"], "sctk");
    assert_eq!(doc["exit_code"], 1);
    assert_eq!(doc["result"]["record"]["comparison"]["only_right"], serde_json::json!(["c"]));
    assert_eq!(doc["result"]["sup"]["marked"], serde_json::json!([]));
    assert_eq!(doc["result"]["lifted"]["marked"], serde_json::json!(["c"]));

    let (code, out, _) = sctk(&["verify", "lemma1", "--plant", "fixtures/twopath.des", "--sup0", "fixtures/spec_c.des"]);
    assert_eq!(code, 1);
    assert_eq!(out, "lemma1: false\nwitness: path a\noracle: confirmed\n");

    let (code, _, err) = sctk(&["decsup", "--plant", "fixtures/clash.des", "--spec", "fixtures/spec_c.des", "--obs", "c"]);
    assert_eq!(code, 2);
    assert!(err.contains("not G-control consistent"));
}

#[test]
fn compare() {
    assert_eq!(
        sctk(&["compare", "--which", "marked", "fixtures/twopath.des", "fixtures/clash.des"]),
        (1, "verdict: left-proper-subset\nonly in fixtures/clash.des: a.c\n".into(), String::new())
    );
    assert_eq!(sctk(&["compare", "fixtures/twopath.des", "fixtures/twopath.des"]).0, 0);
    assert_eq!(sctk(&["compare", "--which", "closed", "fixtures/twopath.des", "fixtures/clash.des"]).0, 1);
}

#[test]
fn replicate() {
    let (code, out, _) = sctk(&["replicate", "--trials", "20", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
    assert!(out.starts_with("prop1 "));
    let (code, out, _) = sctk(&["replicate", "--claims", "theorem1", "--trials", "20", "--seed", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("theorem1 "));
    assert_eq!(sctk(&["replicate", "--trials", "0"]).0, 2);
    assert_eq!(sctk(&["replicate", "--claims", "prop9"]).0, 2);
}

#[test]
fn dot_and_usage() {
    let (code, out, _) = sctk(&["dot", "fixtures/twopath.des"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph \"twopath\" {\n"));
    assert!(out.contains("0 -> 1 [label=\"a\", style=dashed];"));
    assert_eq!(sctk(&["frobnicate"]).0, 2);
    assert_eq!(sctk(&[]).0, 2);
}
