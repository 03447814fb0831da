//! Language comparison with shortest separating witnesses.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::generator::{Generator, State};
use crate::witness::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LanguageKind {
    Closed,
    Marked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equal,
    LeftProperSubset,
    RightProperSubset,
    Incomparable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Equal => "equal",
            Self::LeftProperSubset => "left-proper-subset",
            Self::RightProperSubset => "right-proper-subset",
            Self::Incomparable => "incomparable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub verdict: Verdict,
    /// Shortest string in the left language but not the right.
    pub only_left: Option<Word>,
    /// Shortest string in the right language but not the left.
    pub only_right: Option<Word>,
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }

    /// Left language contained in the right one.
    pub fn left_subset(&self) -> bool {
        self.only_left.is_none()
    }

    pub fn right_subset(&self) -> bool {
        self.only_right.is_none()
    }
}

type Pair = (Option<State>, Option<State>);

/// Compare `L(g1)` with `L(g2)` (or the marked languages) over the union of
/// both alphabets; a label absent from one generator is undefined there.
///
/// The product is explored breadth-first with labels in sorted order, against
/// a dead state standing in for undefined moves, so the first separating pair
/// found in each direction yields the shortlex-least witness.
pub fn language_compare(g1: &Generator, g2: &Generator, which: LanguageKind) -> Comparison {
    // Only labels matter here, attribute clashes are irrelevant to languages.
    let mut labels: Vec<&str> = g1.alphabet().labels().chain(g2.alphabet().labels()).collect();
    labels.sort_unstable();
    labels.dedup();
    let ids1: Vec<_> = labels.iter().map(|l| g1.alphabet().index_of(l)).collect();
    let ids2: Vec<_> = labels.iter().map(|l| g2.alphabet().index_of(l)).collect();

    let accepts = |g: &Generator, q: Option<State>| match (which, q) {
        (_, None) => false,
        (LanguageKind::Closed, Some(_)) => true,
        (LanguageKind::Marked, Some(q)) => g.is_marked(q),
    };

    let start: Pair = (g1.initial(), g2.initial());
    let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut only_left = None;
    let mut only_right = None;
    if start != (None, None) {
        parent.insert(start, None);
        queue.push_back(start);
    }
    let path = |parent: &HashMap<Pair, Option<(Pair, usize)>>, mut p: Pair| {
        let mut rev = Vec::new();
        while let Some(&Some((prev, li))) = parent.get(&p) {
            rev.push(labels[li].to_owned());
            p = prev;
        }
        rev.reverse();
        rev
    };
    while let Some(p @ (q1, q2)) = queue.pop_front() {
        let (a1, a2) = (accepts(g1, q1), accepts(g2, q2));
        if a1 && !a2 && only_left.is_none() {
            only_left = Some(path(&parent, p));
        }
        if a2 && !a1 && only_right.is_none() {
            only_right = Some(path(&parent, p));
        }
        if only_left.is_some() && only_right.is_some() {
            break;
        }
        for li in 0..labels.len() {
            let n1 = q1.zip(ids1[li]).and_then(|(q, e)| g1.step(q, e));
            let n2 = q2.zip(ids2[li]).and_then(|(q, e)| g2.step(q, e));
            let next = (n1, n2);
            if next == (None, None) || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next, Some((p, li)));
            queue.push_back(next);
        }
    }
    let verdict = match (&only_left, &only_right) {
        (None, None) => Verdict::Equal,
        (None, Some(_)) => Verdict::LeftProperSubset,
        (Some(_), None) => Verdict::RightProperSubset,
        (Some(_), Some(_)) => Verdict::Incomparable,
    };
    Comparison {
        verdict,
        only_left,
        only_right,
    }
}
