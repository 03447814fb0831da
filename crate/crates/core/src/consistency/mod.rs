//! Consistency properties of a natural projection with respect to a plant:
//! intrinsic control consistency of state pairs (ICC), G-control consistency
//! (GCC), output control consistency (OCC), the observer property, normality
//! and paranormality, plus the event-erasure search for a GCC alphabet.

mod erasure;
mod normality;
mod observer;
mod occ;

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

pub use erasure::{find_gcc_alphabet, ErasureTrace, Rejection};
pub use normality::{check_normal, check_paranormal};
pub use observer::check_observer;
pub use occ::check_occ;

use crate::alphabet::ObservableSet;
use crate::error::{Error, Result};
use crate::generator::{Generator, State};
use crate::reach::{is_nonblocking, reachable_mask};
use crate::witness::{display_word, IccViolation, Witness, Word};

/// How clause (i) of intrinsic control consistency is read.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IccMode {
    /// No controllable event may be defined at both states.
    #[default]
    Literal,
    /// Both states must enable the same controllable events.
    Agreement,
}

impl std::fmt::Display for IccMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Literal => "literal",
            Self::Agreement => "agreement",
        })
    }
}

impl std::str::FromStr for IccMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "literal" => Ok(Self::Literal),
            "agreement" => Ok(Self::Agreement),
            other => Err(format!("unknown ICC mode `{other}` (literal|agreement)")),
        }
    }
}

/// ICC clauses for two distinct states, without precondition checks.
pub(crate) fn icc_violation(
    g: &Generator,
    qi: State,
    qj: State,
    mode: IccMode,
) -> Option<IccViolation> {
    let alphabet = g.alphabet();
    for ev in 0..alphabet.len() {
        if !alphabet.is_controllable(ev) {
            continue;
        }
        let (at_i, at_j) = (g.step(qi, ev).is_some(), g.step(qj, ev).is_some());
        let label = alphabet.label(ev).to_owned();
        match mode {
            IccMode::Literal if at_i && at_j => {
                return Some(IccViolation::SharedControllable { label })
            }
            IccMode::Agreement if at_i != at_j => {
                return Some(IccViolation::EnablementMismatch { label })
            }
            _ => {}
        }
    }
    (g.is_marked(qi) && g.is_marked(qj)).then_some(IccViolation::BothMarked)
}

pub(crate) fn require_nonblocking(g: &Generator) -> Result<()> {
    match is_nonblocking(g) {
        (true, _) => Ok(()),
        (false, Some(Witness::Path { path })) => Err(Error::NotNonblocking(path)),
        (false, _) => Err(Error::NotNonblocking(Vec::new())),
    }
}

/// Whether `qi` and `qj` are intrinsic control consistent.
pub fn is_icc(
    g: &Generator,
    qi: State,
    qj: State,
    mode: IccMode,
) -> Result<(bool, Option<Witness>)> {
    let n = g.state_count();
    for q in [qi, qj] {
        if q >= n {
            return Err(Error::StateOutOfRange { state: q, count: n });
        }
    }
    if qi == qj {
        return Err(Error::SameState(qi));
    }
    let reach = reachable_mask(g);
    if let Some(&q) = [qi, qj].iter().find(|&&q| !reach[q]) {
        return Err(Error::UnreachableState(q));
    }
    require_nonblocking(g)?;
    Ok(match icc_violation(g, qi, qj, mode) {
        None => (true, None),
        Some(violation) => (false, Some(Witness::Event { violation })),
    })
}

/// State pairs reachable by string pairs with equal projection. Keys are
/// normalized `(min, max)`; the value holds one witnessing string per state,
/// in key order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LookalikePairs {
    pairs: BTreeMap<(State, State), (Word, Word)>,
}

impl LookalikePairs {
    pub fn contains(&self, a: State, b: State) -> bool {
        self.pairs.contains_key(&(a.min(b), a.max(b)))
    }

    pub fn witness(&self, a: State, b: State) -> Option<(&Word, &Word)> {
        let (s, t) = self.pairs.get(&(a.min(b), a.max(b)))?;
        Some(if a <= b { (s, t) } else { (t, s) })
    }

    /// Normalized pairs in ascending order.
    pub fn pairs(&self) -> impl Iterator<Item = (State, State)> + '_ {
        self.pairs.keys().copied()
    }

    pub fn off_diagonal(&self) -> impl Iterator<Item = (State, State)> + '_ {
        self.pairs().filter(|(a, b)| a != b)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Fixpoint of the pair construction: from `(q, q')` an observable event
/// defined at both moves both components, an unobservable event moves one.
pub fn lookalike_pairs(g: &Generator, s: &ObservableSet) -> LookalikePairs {
    let mut pairs = BTreeMap::new();
    let Some(q0) = g.initial() else {
        return LookalikePairs { pairs };
    };
    let observable = s.mask(g.alphabet());
    let alphabet = g.alphabet();
    let mut queue = VecDeque::from([(q0, q0)]);
    pairs.insert((q0, q0), (Word::new(), Word::new()));
    let visit = |pairs: &mut BTreeMap<_, _>,
                     queue: &mut VecDeque<_>,
                     (a, b): (State, State),
                     (sa, sb): (Word, Word)| {
        let (key, val) = if a <= b { ((a, b), (sa, sb)) } else { ((b, a), (sb, sa)) };
        if let std::collections::btree_map::Entry::Vacant(v) = pairs.entry(key) {
            v.insert(val);
            queue.push_back(key);
        }
    };
    while let Some((a, b)) = queue.pop_front() {
        let (sa, sb) = pairs[&(a, b)].clone();
        let ext = |w: &Word, ev: usize| {
            let mut w = w.clone();
            w.push(alphabet.label(ev).to_owned());
            w
        };
        for ev in 0..alphabet.len() {
            let (ta, tb) = (g.step(a, ev), g.step(b, ev));
            if observable[ev] {
                if let (Some(ta), Some(tb)) = (ta, tb) {
                    visit(&mut pairs, &mut queue, (ta, tb), (ext(&sa, ev), ext(&sb, ev)));
                }
            } else {
                if let Some(ta) = ta {
                    visit(&mut pairs, &mut queue, (ta, b), (ext(&sa, ev), sb.clone()));
                }
                if let Some(tb) = tb {
                    visit(&mut pairs, &mut queue, (a, tb), (sa.clone(), ext(&sb, ev)));
                }
            }
        }
    }
    LookalikePairs { pairs }
}

/// A lookalike state pair that is not ICC.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GccViolation {
    pub states: (State, State),
    pub strings: (Word, Word),
    pub violation: IccViolation,
}

impl GccViolation {
    pub fn witness(&self) -> Witness {
        Witness::StatePair {
            states: self.states,
            strings: self.strings.clone(),
            violation: self.violation.clone(),
        }
    }
}

impl std::fmt::Display for GccViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "states ({}, {}) reached by ({}, {}): {}",
            self.states.0,
            self.states.1,
            display_word(&self.strings.0),
            display_word(&self.strings.1),
            self.violation
        )
    }
}

pub(crate) fn require_controllable_observable(g: &Generator, s: &ObservableSet) -> Result<()> {
    let hidden: Vec<String> = g
        .alphabet()
        .controllable_labels()
        .into_iter()
        .filter(|l| !s.contains(l))
        .collect();
    if hidden.is_empty() {
        Ok(())
    } else {
        Err(Error::ControllableUnobservable(hidden))
    }
}

/// The first (in ascending pair order) lookalike pair that is not ICC.
pub fn gcc_violation(
    g: &Generator,
    s: &ObservableSet,
    mode: IccMode,
) -> Result<Option<GccViolation>> {
    s.validate(g.alphabet())?;
    require_controllable_observable(g, s)?;
    require_nonblocking(g)?;
    let pairs = lookalike_pairs(g, s);
    let found = pairs.off_diagonal().find_map(|(a, b)| {
        icc_violation(g, a, b, mode).map(|violation| {
            let (sa, sb) = pairs.witness(a, b).unwrap();
            GccViolation {
                states: (a, b),
                strings: (sa.clone(), sb.clone()),
                violation,
            }
        })
    });
    Ok(found)
}

/// Whether the projection onto `s` is G-control consistent.
pub fn check_gcc(
    g: &Generator,
    s: &ObservableSet,
    mode: IccMode,
) -> Result<(bool, Option<Witness>)> {
    Ok(match gcc_violation(g, s, mode)? {
        None => (true, None),
        Some(v) => (false, Some(v.witness())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, EventAttr};
    use crate::oracle::fixtures;
    use crate::witness::word;

    fn obs(labels: &[&str]) -> ObservableSet {
        ObservableSet::new(labels.iter().copied())
    }

    #[test]
    fn icc_examples() {
        assert_eq!(
            is_icc(&fixtures::two_path(), 0, 1, IccMode::Literal).unwrap(),
            (true, None)
        );
        let (ok, w) = is_icc(&fixtures::clash(), 0, 1, IccMode::Literal).unwrap();
        assert!(!ok);
        assert_eq!(
            w,
            Some(Witness::Event {
                violation: IccViolation::SharedControllable { label: "c".into() }
            })
        );
        let (ok, w) = is_icc(&fixtures::obs_a(), 2, 3, IccMode::Literal).unwrap();
        assert!(!ok);
        assert_eq!(
            w,
            Some(Witness::Event {
                violation: IccViolation::BothMarked
            })
        );
    }

    #[test]
    fn icc_agreement_mode() {
        // c defined at 0 only: fine literally, a mismatch under agreement
        let (ok, w) = is_icc(&fixtures::two_path(), 0, 1, IccMode::Agreement).unwrap();
        assert!(!ok);
        assert_eq!(
            w,
            Some(Witness::Event {
                violation: IccViolation::EnablementMismatch { label: "c".into() }
            })
        );
        assert!(is_icc(&fixtures::clash(), 0, 1, IccMode::Agreement).unwrap().0);
    }

    #[test]
    fn icc_errors() {
        let g = fixtures::two_path();
        assert_eq!(is_icc(&g, 1, 1, IccMode::Literal), Err(Error::SameState(1)));
        let a = Alphabet::new([EventAttr::uncontrollable("a")]).unwrap();
        let blocking = Generator::new("b", a, 3, 0, [1], [(0, "a", 1), (1, "a", 2)]).unwrap();
        assert!(matches!(
            is_icc(&blocking, 0, 1, IccMode::Literal),
            Err(Error::NotNonblocking(_))
        ));
    }

    #[test]
    fn lookalike_examples() {
        let g = fixtures::two_path();
        let full = lookalike_pairs(&g, &ObservableSet::all(g.alphabet()));
        assert_eq!(full.pairs().collect::<Vec<_>>(), [(0, 0), (1, 1), (2, 2)]);

        let p = lookalike_pairs(&g, &obs(&["c"]));
        assert_eq!(p.pairs().collect::<Vec<_>>(), [(0, 0), (0, 1), (1, 1), (2, 2)]);
        assert_eq!(p.witness(0, 1), Some((&word(&[]), &word(&["a"]))));
        assert_eq!(p.witness(1, 0), Some((&word(&["a"]), &word(&[]))));

        let p = lookalike_pairs(&fixtures::obs_a(), &obs(&["b"]));
        assert!(p.contains(0, 1));
        assert!(p.contains(2, 3));
    }

    #[test]
    fn gcc_examples() {
        assert_eq!(
            check_gcc(&fixtures::two_path(), &obs(&["c"]), IccMode::Literal).unwrap(),
            (true, None)
        );
        let v = gcc_violation(&fixtures::clash(), &obs(&["c"]), IccMode::Literal)
            .unwrap()
            .unwrap();
        assert_eq!(v.states, (0, 1));
        assert_eq!(v.strings, (word(&[]), word(&["a"])));

        let v = gcc_violation(&fixtures::obs_a(), &obs(&["b"]), IccMode::Literal)
            .unwrap()
            .unwrap();
        assert_eq!(v.states, (2, 3));
        assert_eq!(v.violation, IccViolation::BothMarked);
        assert_eq!(v.strings, (word(&["a", "b"]), word(&["b"])));
    }

    #[test]
    fn gcc_requires_observable_controllables() {
        let err = check_gcc(&fixtures::two_path(), &obs(&["a"]), IccMode::Literal);
        assert_eq!(err, Err(Error::ControllableUnobservable(vec!["c".into()])));
        let err = check_gcc(&fixtures::two_path(), &obs(&["c", "zz"]), IccMode::Literal);
        assert_eq!(err, Err(Error::UnknownLabel("zz".into())));
    }
}
