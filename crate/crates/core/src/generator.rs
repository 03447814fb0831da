//! The generator model `(Q, Σ, δ, q0, Qm)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{Alphabet, EventId};
use crate::error::{Error, Result};

pub type State = usize;

/// A deterministic finite automaton over an attributed alphabet.
///
/// States are `0..n`. The generator with `n == 0` is the canonical empty
/// generator: both its closed and marked languages are empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    name: String,
    alphabet: Alphabet,
    initial: State,
    marked: BTreeSet<State>,
    // delta[q] maps event id -> target, iterated in sorted label order
    delta: Vec<BTreeMap<EventId, State>>,
}

impl Generator {
    pub fn new<'a>(
        name: impl Into<String>,
        alphabet: Alphabet,
        states: usize,
        initial: State,
        marked: impl IntoIterator<Item = State>,
        transitions: impl IntoIterator<Item = (State, &'a str, State)>,
    ) -> Result<Self> {
        let mut g = Self {
            name: name.into(),
            alphabet,
            initial: 0,
            marked: BTreeSet::new(),
            delta: vec![BTreeMap::new(); states],
        };
        if states > 0 {
            g.check_state(initial)?;
            g.initial = initial;
        }
        for q in marked {
            g.check_state(q)?;
            g.marked.insert(q);
        }
        for (src, label, dst) in transitions {
            let ev = g
                .alphabet
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
            g.add_transition(src, ev, dst)?;
        }
        Ok(g)
    }

    /// The canonical empty generator over `alphabet`.
    pub fn empty(name: impl Into<String>, alphabet: Alphabet) -> Self {
        Self {
            name: name.into(),
            alphabet,
            initial: 0,
            marked: BTreeSet::new(),
            delta: Vec::new(),
        }
    }

    /// One state, self-looped with every event, marked: `L = L_m = Σ*`.
    pub fn universal(name: impl Into<String>, alphabet: Alphabet) -> Self {
        let delta = vec![(0..alphabet.len()).map(|e| (e, 0)).collect()];
        Self {
            name: name.into(),
            alphabet,
            initial: 0,
            marked: BTreeSet::from([0]),
            delta,
        }
    }

    /// Recognizer of a finite set of words: a prefix tree marked at the words.
    pub fn from_words<W, S>(
        name: impl Into<String>,
        alphabet: Alphabet,
        words: impl IntoIterator<Item = W>,
    ) -> Result<Self>
    where
        W: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut g = Self {
            name: name.into(),
            alphabet,
            initial: 0,
            marked: BTreeSet::new(),
            delta: vec![BTreeMap::new()],
        };
        let mut any = false;
        for w in words {
            any = true;
            let mut q = 0;
            for label in w {
                let label = label.as_ref();
                let ev = g
                    .alphabet
                    .index_of(label)
                    .ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
                q = match g.delta[q].get(&ev) {
                    Some(&next) => next,
                    None => {
                        let next = g.add_state();
                        g.delta[q].insert(ev, next);
                        next
                    }
                };
            }
            g.marked.insert(q);
        }
        if !any {
            return Ok(Self::empty(g.name, g.alphabet));
        }
        Ok(g)
    }

    pub(crate) fn from_parts(
        name: String,
        alphabet: Alphabet,
        initial: State,
        marked: BTreeSet<State>,
        delta: Vec<BTreeMap<EventId, State>>,
    ) -> Self {
        debug_assert!(delta.is_empty() || initial < delta.len());
        Self {
            name,
            alphabet,
            initial,
            marked,
            delta,
        }
    }

    fn check_state(&self, q: State) -> Result<()> {
        if q < self.delta.len() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                state: q,
                count: self.delta.len(),
            })
        }
    }

    pub fn add_state(&mut self) -> State {
        self.delta.push(BTreeMap::new());
        self.delta.len() - 1
    }

    pub fn add_transition(&mut self, src: State, ev: EventId, dst: State) -> Result<()> {
        self.check_state(src)?;
        self.check_state(dst)?;
        if ev >= self.alphabet.len() {
            return Err(Error::UnknownLabel(format!("#{ev}")));
        }
        match self.delta[src].get(&ev) {
            Some(&existing) if existing != dst => Err(Error::Nondeterministic {
                state: src,
                label: self.alphabet.label(ev).to_owned(),
            }),
            _ => {
                self.delta[src].insert(ev, dst);
                Ok(())
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    /// The initial state, `None` for the empty generator.
    pub fn initial(&self) -> Option<State> {
        (!self.delta.is_empty()).then_some(self.initial)
    }

    pub fn marked(&self) -> &BTreeSet<State> {
        &self.marked
    }

    pub fn is_marked(&self, q: State) -> bool {
        self.marked.contains(&q)
    }

    pub fn step(&self, q: State, ev: EventId) -> Option<State> {
        self.delta[q].get(&ev).copied()
    }

    pub fn step_label(&self, q: State, label: &str) -> Option<State> {
        self.alphabet.index_of(label).and_then(|ev| self.step(q, ev))
    }

    /// Outgoing transitions of `q` in sorted label order.
    pub fn outgoing(&self, q: State) -> impl Iterator<Item = (EventId, State)> + '_ {
        self.delta[q].iter().map(|(&e, &t)| (e, t))
    }

    pub fn transitions(&self) -> impl Iterator<Item = (State, EventId, State)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(q, m)| m.iter().map(move |(&e, &t)| (q, e, t)))
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().map(BTreeMap::len).sum()
    }

    /// State reached from the initial state by `word`; labels outside the
    /// alphabet are undefined.
    pub fn run<S: AsRef<str>>(&self, word: &[S]) -> Option<State> {
        let mut q = self.initial()?;
        for label in word {
            q = self.step_label(q, label.as_ref())?;
        }
        Some(q)
    }

    pub fn in_closed<S: AsRef<str>>(&self, word: &[S]) -> bool {
        self.run(word).is_some()
    }

    pub fn in_marked<S: AsRef<str>>(&self, word: &[S]) -> bool {
        self.run(word).is_some_and(|q| self.is_marked(q))
    }

    /// Keep the states selected by `keep`, renumbered in ascending order.
    /// Returns the empty generator if the initial state is dropped.
    pub fn restrict(&self, keep: &[bool]) -> Generator {
        if self.is_empty() || !keep[self.initial] {
            return Self::empty(self.name.clone(), self.alphabet.clone());
        }
        let mut index = vec![usize::MAX; self.delta.len()];
        let mut next = 0;
        for (q, &k) in keep.iter().enumerate() {
            if k {
                index[q] = next;
                next += 1;
            }
        }
        let delta = self
            .delta
            .iter()
            .enumerate()
            .filter(|(q, _)| keep[*q])
            .map(|(_, m)| {
                m.iter()
                    .filter(|(_, t)| keep[**t])
                    .map(|(&e, &t)| (e, index[t]))
                    .collect()
            })
            .collect();
        let marked = self
            .marked
            .iter()
            .filter(|q| keep[**q])
            .map(|&q| index[q])
            .collect();
        Self::from_parts(
            self.name.clone(),
            self.alphabet.clone(),
            index[self.initial],
            marked,
            delta,
        )
    }

    /// Same structure with every state marked (`L_m = L`).
    pub fn mark_all(&self) -> Generator {
        let mut g = self.clone();
        g.marked = (0..g.delta.len()).collect();
        g
    }

    pub fn set_marked(&mut self, q: State, marked: bool) {
        if marked {
            self.marked.insert(q);
        } else {
            self.marked.remove(&q);
        }
    }

    pub fn remove_transition(&mut self, q: State, ev: EventId) {
        self.delta[q].remove(&ev);
    }

    /// Replace the alphabet by a superset with identical attributes on the
    /// shared labels; transitions are re-indexed, no new ones are added.
    pub fn widen_alphabet(&self, alphabet: &Alphabet) -> Result<Generator> {
        self.alphabet.is_subset_of(alphabet)?;
        let map = self.alphabet.map_into(alphabet);
        let delta = self
            .delta
            .iter()
            .map(|m| m.iter().map(|(&e, &t)| (map[e].unwrap(), t)).collect())
            .collect();
        Ok(Self::from_parts(
            self.name.clone(),
            alphabet.clone(),
            self.initial,
            self.marked.clone(),
            delta,
        ))
    }
}
