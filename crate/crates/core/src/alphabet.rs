//! Attributed event alphabets and observable event sets.
//!
//! Events are identified by their label. Inside a [`Generator`](crate::Generator)
//! an event is addressed by its position in the alphabet, which is always the
//! sorted label order.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of an event within one alphabet.
pub type EventId = usize;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EventAttr {
    pub label: String,
    pub controllable: bool,
    /// Default observability. Projection-dependent operations always take an
    /// explicit [`ObservableSet`]; this flag only seeds [`ObservableSet::default_of`].
    pub observable: bool,
}

impl EventAttr {
    pub fn new(label: impl Into<String>, controllable: bool, observable: bool) -> Self {
        Self {
            label: label.into(),
            controllable,
            observable,
        }
    }

    pub fn controllable(label: impl Into<String>) -> Self {
        Self::new(label, true, true)
    }

    pub fn uncontrollable(label: impl Into<String>) -> Self {
        Self::new(label, false, true)
    }
}

pub fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Alphabet {
    events: Vec<EventAttr>,
}

impl Alphabet {
    pub fn new(events: impl IntoIterator<Item = EventAttr>) -> Result<Self> {
        let mut events: Vec<EventAttr> = events.into_iter().collect();
        for ev in &events {
            if !is_valid_label(&ev.label) {
                return Err(Error::InvalidLabel(ev.label.clone()));
            }
        }
        events.sort_by(|a, b| a.label.cmp(&b.label));
        for pair in events.windows(2) {
            if pair[0].label == pair[1].label {
                return Err(Error::DuplicateLabel(pair[0].label.clone()));
            }
        }
        Ok(Self { events })
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[EventAttr] {
        &self.events
    }

    pub fn get(&self, id: EventId) -> &EventAttr {
        &self.events[id]
    }

    pub fn label(&self, id: EventId) -> &str {
        &self.events[id].label
    }

    pub fn index_of(&self, label: &str) -> Option<EventId> {
        self.events
            .binary_search_by(|ev| ev.label.as_str().cmp(label))
            .ok()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    pub fn attr(&self, label: &str) -> Option<&EventAttr> {
        self.index_of(label).map(|i| &self.events[i])
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.events.iter().map(|ev| ev.label.as_str())
    }

    pub fn is_controllable(&self, id: EventId) -> bool {
        self.events[id].controllable
    }

    pub fn controllable_labels(&self) -> BTreeSet<String> {
        self.events
            .iter()
            .filter(|ev| ev.controllable)
            .map(|ev| ev.label.clone())
            .collect()
    }

    pub fn uncontrollable_labels(&self) -> BTreeSet<String> {
        self.events
            .iter()
            .filter(|ev| !ev.controllable)
            .map(|ev| ev.label.clone())
            .collect()
    }

    /// Union of two alphabets. Shared labels must agree on controllability;
    /// the default observability of `self` wins.
    pub fn union(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut events = self.events.clone();
        for ev in &other.events {
            match self.attr(&ev.label) {
                Some(mine) if mine.controllable != ev.controllable => {
                    return Err(Error::AttributeClash(ev.label.clone()));
                }
                Some(_) => {}
                None => events.push(ev.clone()),
            }
        }
        Alphabet::new(events)
    }

    /// Sub-alphabet of the events whose labels are in `keep`.
    pub fn restrict(&self, keep: &ObservableSet) -> Alphabet {
        Alphabet {
            events: self
                .events
                .iter()
                .filter(|ev| keep.contains(&ev.label))
                .cloned()
                .collect(),
        }
    }

    /// Every label of `self` is in `other` with the same controllability.
    pub fn is_subset_of(&self, other: &Alphabet) -> Result<()> {
        for ev in &self.events {
            match other.attr(&ev.label) {
                None => return Err(Error::NotSubAlphabet(ev.label.clone())),
                Some(o) if o.controllable != ev.controllable => {
                    return Err(Error::AttributeClash(ev.label.clone()))
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    /// Same labels with the same controllability.
    pub fn same_events(&self, other: &Alphabet) -> bool {
        self.events.len() == other.events.len()
            && self
                .events
                .iter()
                .zip(&other.events)
                .all(|(a, b)| a.label == b.label && a.controllable == b.controllable)
    }

    /// For each event id of `self`, its id in `other` (if present).
    pub(crate) fn map_into(&self, other: &Alphabet) -> Vec<Option<EventId>> {
        self.labels().map(|l| other.index_of(l)).collect()
    }
}

/// The observable event set Σ_0 of a natural projection.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ObservableSet {
    labels: BTreeSet<String>,
}

impl ObservableSet {
    pub fn new<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            labels: labels.into_iter().map(Into::into).collect(),
        }
    }

    /// Every event of the alphabet is observable.
    pub fn all(alphabet: &Alphabet) -> Self {
        Self::new(alphabet.labels())
    }

    /// The set declared by the events' default observability flags.
    pub fn default_of(alphabet: &Alphabet) -> Self {
        Self::new(
            alphabet
                .events()
                .iter()
                .filter(|ev| ev.observable)
                .map(|ev| ev.label.as_str()),
        )
    }

    /// Parse a comma- or whitespace-separated label list.
    pub fn parse(list: &str) -> Result<Self> {
        let labels: BTreeSet<String> = list
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::to_owned)
            .collect();
        if let Some(bad) = labels.iter().find(|l| !is_valid_label(l)) {
            return Err(Error::InvalidLabel(bad.clone()));
        }
        Ok(Self { labels })
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.contains(label)
    }

    pub fn labels(&self) -> &BTreeSet<String> {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn without(&self, label: &str) -> Self {
        let mut labels = self.labels.clone();
        labels.remove(label);
        Self { labels }
    }

    pub fn intersect(&self, alphabet: &Alphabet) -> Self {
        Self::new(alphabet.labels().filter(|l| self.contains(l)))
    }

    /// Every label must exist in `alphabet`.
    pub fn validate(&self, alphabet: &Alphabet) -> Result<()> {
        match self.labels.iter().find(|l| !alphabet.contains(l)) {
            Some(l) => Err(Error::UnknownLabel(l.clone())),
            None => Ok(()),
        }
    }

    pub(crate) fn mask(&self, alphabet: &Alphabet) -> Vec<bool> {
        alphabet.labels().map(|l| self.contains(l)).collect()
    }
}

impl std::fmt::Display for ObservableSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let labels: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}
