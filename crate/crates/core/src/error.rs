use thiserror::Error;

use crate::consistency::GccViolation;
use crate::witness::{display_word, Word};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid event label `{0}` (expected ASCII letters, digits or underscore)")]
    InvalidLabel(String),
    #[error("duplicate event label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown event label `{0}`")]
    UnknownLabel(String),
    #[error("state {state} out of range (state count {count})")]
    StateOutOfRange { state: usize, count: usize },
    #[error("nondeterministic transition at state {state} on `{label}`")]
    Nondeterministic { state: usize, label: String },
    #[error("event `{0}` carries different attributes in the two alphabets")]
    AttributeClash(String),
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("event `{0}` is not in the target alphabet")]
    NotSubAlphabet(String),
    #[error("generator is blocking: state reached by `{}` cannot reach a marked state", display_word(.0))]
    NotNonblocking(Word),
    #[error("state pair must be distinct (got {0} twice)")]
    SameState(usize),
    #[error("state {0} is not reachable")]
    UnreachableState(usize),
    #[error("controllable events are unobservable: {}", .0.join(", "))]
    ControllableUnobservable(Vec<String>),
    #[error("candidate closure is not contained in the plant's closed language (`{}`)", display_word(.0))]
    SpecNotSublanguage(Word),
    #[error("projection is not G-control consistent: {0}")]
    NotGcc(Box<GccViolation>),
    #[error("cover was built from a different generator")]
    CoverMismatch,
    #[error("generator has a cycle; exact enumeration requires an acyclic generator")]
    NotAcyclic,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
