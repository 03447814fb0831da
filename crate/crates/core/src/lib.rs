//! Supervisory control of discrete-event systems.
//!
//! Generators (deterministic automata over attributed alphabets), the
//! language operations on them, supremal controllable sublanguage synthesis,
//! consistency checks for natural projections (ICC, GCC, OCC, observer,
//! normality, paranormality), decentralized synthesis on a reduced plant, and
//! brute-force oracles with a randomized replication harness.

pub mod alphabet;
pub mod compare;
pub mod consistency;
pub mod decentralized;
pub mod error;
pub mod format;
pub mod generator;
pub mod ops;
pub mod oracle;
pub mod reach;
pub mod synthesis;
pub mod witness;

pub use alphabet::{Alphabet, EventAttr, EventId, ObservableSet};
pub use compare::{language_compare, Comparison, LanguageKind, Verdict};
pub use consistency::{
    check_gcc, check_normal, check_observer, check_occ, check_paranormal, find_gcc_alphabet,
    gcc_violation, is_icc, lookalike_pairs, IccMode,
};
pub use decentralized::{
    build_cover, decentralized_supcon, monolithic_supcon, reduce_plant, verify_lemma1,
    verify_theorem1, Cover, ReducedPlant, Theorem1Record,
};
pub use error::{Error, Result};
pub use generator::{Generator, State};
pub use ops::{inverse_project, meet, project, sync};
pub use reach::{accessible, coreachable, is_acyclic, is_nonblocking, reachable, trim};
pub use synthesis::{control_equivalent, is_controllable, supcon, SynthesisResult};
pub use witness::{display_word, IccViolation, Witness, Word};
