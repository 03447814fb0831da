//! Report files and other renderings.
//!
//! Reports are pretty-printed JSON. Object keys come out sorted, so a report
//! depends only on the command's inputs.

use std::fmt::Write as _;

use serde_json::{json, Value};

use sctk::oracle::{enumerate, longest_path, shortlex};
use sctk::{display_word, Generator, IccMode, LanguageKind, Witness};

use crate::{Command, Verify};

/// Strings listed per language in a report.
const SAMPLE_LIMIT: usize = 64;
/// Enumeration depth when the generator has a cycle.
const SAMPLE_DEPTH: usize = 8;

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Trim { .. } => "trim",
        Command::Nonblocking { .. } => "nonblocking",
        Command::Sync { .. } => "sync",
        Command::Meet { .. } => "meet",
        Command::Project { .. } => "project",
        Command::Invproject { .. } => "invproject",
        Command::Supcon { .. } => "supcon",
        Command::Controllable { .. } => "controllable",
        Command::Check { .. } => "check",
        Command::FindGccAlphabet { .. } => "find-gcc-alphabet",
        Command::Cover { .. } => "cover",
        Command::Reduce { .. } => "reduce",
        Command::Decsup { .. } => "decsup",
        Command::Monosup { .. } => "monosup",
        Command::Verify(Verify::Theorem1 { .. }) => "verify theorem1",
        Command::Verify(Verify::Lemma1 { .. }) => "verify lemma1",
        Command::Replicate { .. } => "replicate",
        Command::Compare { .. } => "compare",
        Command::Dot { .. } => "dot",
    }
}

pub fn render(command: &str, result: &Value, exit_code: u8, mode: Option<IccMode>, seed: Option<u64>) -> String {
    let doc = json!({
        "tool": "sctk",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "mode": mode.map(|m| m.to_string()),
        "seed": seed,
        "exit_code": exit_code,
        "result": result,
    });
    let mut body = serde_json::to_string_pretty(&doc).expect("serializable");
    body.push('\n');
    body
}

pub fn witness_json(w: &Option<Witness>) -> Value {
    match w {
        Some(w) => json!({ "text": w.to_string(), "detail": w }),
        None => Value::Null,
    }
}

/// The marked language, whole when the generator is acyclic, otherwise up to
/// a fixed depth; at most `SAMPLE_LIMIT` strings in shortlex order.
pub fn language_sample(g: &Generator) -> Value {
    let (depth, exact) = match longest_path(g) {
        Some(l) => (l, true),
        None => (SAMPLE_DEPTH, false),
    };
    let mut strings: Vec<_> = enumerate(g, LanguageKind::Marked, depth).strings.into_iter().collect();
    strings.sort_by(shortlex);
    let truncated = strings.len() > SAMPLE_LIMIT;
    strings.truncate(SAMPLE_LIMIT);
    json!({
        "marked": strings.iter().map(|w| display_word(w)).collect::<Vec<_>>(),
        "exact": exact && !truncated,
        "depth": depth,
    })
}

pub fn dot(g: &Generator) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", g.name().replace('"', "'"));
    out.push_str("  rankdir=LR;\n");
    if let Some(q0) = g.initial() {
        out.push_str("  init [shape=point];\n");
        let _ = writeln!(out, "  init -> {q0};");
    }
    for q in 0..g.state_count() {
        let shape = if g.is_marked(q) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {q} [shape={shape}];");
    }
    for (q, ev, t) in g.transitions() {
        let attr = g.alphabet().get(ev);
        // uncontrollable events dashed
        let style = if attr.controllable { "" } else { ", style=dashed" };
        let _ = writeln!(out, "  {q} -> {t} [label=\"{}\"{style}];", attr.label);
    }
    out.push_str("}\n");
    out
}
