use std::collections::BTreeSet;

use serde::Serialize;

use super::{icc_violation, require_nonblocking, IccMode};
use crate::alphabet::ObservableSet;
use crate::error::Result;
use crate::generator::{Generator, State};
use crate::ops::project;
use crate::witness::IccViolation;

/// An erasure candidate that was refused.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub label: String,
    /// Index of the intermediate generator the pair belongs to (0 = the plant).
    pub stage: usize,
    pub states: (State, State),
    pub violation: IccViolation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErasureTrace {
    /// Accepted erasures in the order they were applied.
    pub erased: Vec<String>,
    pub rejected: Vec<Rejection>,
    /// The remaining observable alphabet.
    pub result: ObservableSet,
}

/// Greedy event erasure. Uncontrollable labels are tried in ascending order;
/// a candidate `σ` is erased from the current generator when, for every state
/// `q` with an outgoing `σ`, `q` together with all states reachable from it
/// by nonempty `σ`-only paths are pairwise ICC. After each accepted erasure
/// the current generator is replaced by its projection.
pub fn find_gcc_alphabet(g: &Generator, mode: IccMode) -> Result<ErasureTrace> {
    require_nonblocking(g)?;
    let mut current = g.clone();
    let mut observable = ObservableSet::all(g.alphabet());
    let mut erased = Vec::new();
    let mut rejected = Vec::new();
    for label in g.alphabet().uncontrollable_labels() {
        let stage = erased.len();
        match erasure_conflict(&current, &label, mode) {
            Some((states, violation)) => rejected.push(Rejection {
                label,
                stage,
                states,
                violation,
            }),
            None => {
                observable = observable.without(&label);
                current = project(&current, &observable);
                erased.push(label);
            }
        }
    }
    Ok(ErasureTrace {
        erased,
        rejected,
        result: observable,
    })
}

fn erasure_conflict(
    g: &Generator,
    label: &str,
    mode: IccMode,
) -> Option<((State, State), IccViolation)> {
    let ev = g.alphabet().index_of(label)?;
    for q in 0..g.state_count() {
        let Some(first) = g.step(q, ev) else {
            continue;
        };
        let mut chain = BTreeSet::from([q]);
        let mut frontier = vec![first];
        let mut descendants = BTreeSet::new();
        while let Some(p) = frontier.pop() {
            if descendants.insert(p) {
                frontier.extend(g.step(p, ev));
            }
        }
        chain.extend(descendants);
        let members: Vec<State> = chain.into_iter().collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if let Some(v) = icc_violation(g, a, b, mode) {
                    return Some(((a, b), v));
                }
            }
        }
    }
    None
}
