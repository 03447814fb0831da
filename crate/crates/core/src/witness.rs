//! Counterexample evidence returned by the checkers.

use serde::Serialize;

/// A string of event labels.
pub type Word = Vec<String>;

pub fn word(labels: &[&str]) -> Word {
    labels.iter().map(|s| s.to_string()).collect()
}

/// Renders a word as dot-separated labels, `ε` for the empty word.
pub fn display_word(w: &[String]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.join(".")
    }
}

/// Why two states fail intrinsic control consistency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IccViolation {
    /// A controllable event is defined at both states (literal mode).
    SharedControllable { label: String },
    /// A controllable event is defined at exactly one state (agreement mode).
    EnablementMismatch { label: String },
    /// Both states are marked.
    BothMarked,
}

impl std::fmt::Display for IccViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::SharedControllable { label } => {
                write!(f, "controllable `{label}` defined at both states")
            }
            Self::EnablementMismatch { label } => {
                write!(f, "controllable `{label}` defined at only one state")
            }
            Self::BothMarked => write!(f, "both states marked"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A single string (or path from the initial state).
    Path { path: Word },
    /// A string followed by one offending event.
    PathEvent { path: Word, event: String },
    /// A string `s` and an observed continuation target `t`.
    StringPair { s: Word, t: Word },
    /// Two states reached by lookalike strings.
    StatePair {
        states: (usize, usize),
        strings: (Word, Word),
        violation: IccViolation,
    },
    /// A single-state-pair ICC violation.
    Event { violation: IccViolation },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Path { path } => write!(f, "path {}", display_word(path)),
            Self::PathEvent { path, event } => {
                write!(f, "path {} then event {event}", display_word(path))
            }
            Self::StringPair { s, t } => {
                write!(f, "s = {}, t = {}", display_word(s), display_word(t))
            }
            Self::StatePair {
                states,
                strings,
                violation,
            } => write!(
                f,
                "states ({}, {}) via ({}, {}): {violation}",
                states.0,
                states.1,
                display_word(&strings.0),
                display_word(&strings.1)
            ),
            Self::Event { violation } => write!(f, "{violation}"),
        }
    }
}
