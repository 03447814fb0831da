//! Plain-text automaton format.
//!
//! ```text
//! des twopath
//! events:
//! a u o        # label, c|u (controllable), o|x (observable by default)
//! c c o
//! states: 3
//! initial: 0   # `none` for the empty generator
//! marked: 1 2
//! transitions:
//! 0 a 1
//! 0 c 2
//! ```
//!
//! Sections appear in this fixed order. `#` starts a comment; blank lines are
//! ignored. Serialization lists events by label and transitions by
//! `(source, label)`, so `parse(to_text(g)) == g`.

use std::fmt::Write as _;

use crate::alphabet::{Alphabet, EventAttr};
use crate::error::{Error, Result};
use crate::generator::Generator;

pub fn to_text(g: &Generator) -> String {
    let mut out = String::new();
    let name: String = g
        .name()
        .chars()
        .map(|c| if c == '#' || c == '\n' || c == '\r' { '_' } else { c })
        .collect();
    let _ = writeln!(out, "des {}", name.trim());
    out.push_str("events:\n");
    for ev in g.alphabet().events() {
        let _ = writeln!(
            out,
            "{} {} {}",
            ev.label,
            if ev.controllable { 'c' } else { 'u' },
            if ev.observable { 'o' } else { 'x' }
        );
    }
    let _ = writeln!(out, "states: {}", g.state_count());
    match g.initial() {
        Some(q) => {
            let _ = writeln!(out, "initial: {q}");
        }
        None => out.push_str("initial: none\n"),
    }
    out.push_str("marked:");
    for q in g.marked() {
        let _ = write!(out, " {q}");
    }
    out.push('\n');
    out.push_str("transitions:\n");
    for (q, ev, t) in g.transitions() {
        let _ = writeln!(out, "{q} {} {t}", g.alphabet().label(ev));
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    peeked: Option<(usize, &'a str)>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            peeked: None,
        }
    }

    fn peek(&mut self) -> Option<(usize, &'a str)> {
        if self.peeked.is_none() {
            self.peeked = self.inner.by_ref().find_map(|(i, raw)| {
                let body = raw.split('#').next().unwrap_or("").trim();
                (!body.is_empty()).then_some((i + 1, body))
            });
        }
        self.peeked
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.peek();
        self.peeked = None;
        item
    }

    fn last_line(&self) -> usize {
        0
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn keyed<'a>(lines: &mut Lines<'a>, key: &str) -> Result<(usize, &'a str)> {
    let (line, body) = lines
        .next()
        .ok_or_else(|| err(lines.last_line(), format!("missing `{key}` line")))?;
    let rest = body
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| err(line, format!("expected `{key}:`")))?;
    Ok((line, rest.trim()))
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| err(line, format!("expected a state index, found `{tok}`")))
}

pub fn parse(text: &str) -> Result<Generator> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let name = match header.strip_prefix("des") {
        Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => rest.trim(),
        _ => return Err(err(line, "expected header `des <name>`")),
    };

    let (line, rest) = keyed(&mut lines, "events")?;
    if !rest.is_empty() {
        return Err(err(line, "unexpected text after `events:`"));
    }
    let mut events = Vec::new();
    while let Some((line, body)) = lines.peek() {
        if body.starts_with("states:") {
            break;
        }
        lines.next();
        let toks: Vec<&str> = body.split_whitespace().collect();
        let [label, ctrl, obs] = toks[..] else {
            return Err(err(line, "event line must be `<label> <c|u> <o|x>`"));
        };
        let controllable = match ctrl {
            "c" => true,
            "u" => false,
            _ => return Err(err(line, format!("expected `c` or `u`, found `{ctrl}`"))),
        };
        let observable = match obs {
            "o" => true,
            "x" => false,
            _ => return Err(err(line, format!("expected `o` or `x`, found `{obs}`"))),
        };
        events.push(EventAttr::new(label, controllable, observable));
    }
    let alphabet = Alphabet::new(events).map_err(|e| err(line, e.to_string()))?;

    let (line, rest) = keyed(&mut lines, "states")?;
    let n = number(line, rest)?;
    let (line, rest) = keyed(&mut lines, "initial")?;
    let initial = match rest {
        "none" if n == 0 => None,
        "none" => return Err(err(line, "`initial: none` requires `states: 0`")),
        tok => Some(number(line, tok)?),
    };
    if n == 0 && initial.is_some() {
        return Err(err(line, "an empty generator has `initial: none`"));
    }
    let (line, rest) = keyed(&mut lines, "marked")?;
    let marked = rest
        .split_whitespace()
        .map(|t| number(line, t))
        .collect::<Result<Vec<_>>>()?;
    let mut g = Generator::new(name, alphabet, n, initial.unwrap_or(0), marked, [])
        .map_err(|e| err(line, e.to_string()))?;

    let (line, rest) = keyed(&mut lines, "transitions")?;
    if !rest.is_empty() {
        return Err(err(line, "unexpected text after `transitions:`"));
    }
    while let Some((line, body)) = lines.next() {
        let toks: Vec<&str> = body.split_whitespace().collect();
        let [src, label, dst] = toks[..] else {
            return Err(err(line, "transition line must be `<src> <label> <dst>`"));
        };
        let (src, dst) = (number(line, src)?, number(line, dst)?);
        let ev = g
            .alphabet()
            .index_of(label)
            .ok_or_else(|| err(line, format!("unknown event `{label}`")))?;
        g.add_transition(src, ev, dst)
            .map_err(|e| err(line, e.to_string()))?;
    }
    Ok(g)
}
