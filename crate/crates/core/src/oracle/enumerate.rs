use std::collections::BTreeSet;

use serde::Serialize;

use crate::alphabet::ObservableSet;
use crate::compare::LanguageKind;
use crate::generator::{Generator, State};
use crate::witness::Word;

/// A bounded sample of a language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LanguageSample {
    pub strings: BTreeSet<Word>,
    pub bound: usize,
    /// The sample is the whole language.
    pub exact: bool,
}

/// Length of the longest path from the initial state, `None` if a cycle is
/// reachable.
pub fn longest_path(g: &Generator) -> Option<usize> {
    fn visit(g: &Generator, q: State, memo: &mut [Option<usize>], on_stack: &mut [bool]) -> Option<usize> {
        if let Some(d) = memo[q] {
            return Some(d);
        }
        if on_stack[q] {
            return None;
        }
        on_stack[q] = true;
        let mut best = 0;
        for (_, t) in g.outgoing(q) {
            best = best.max(1 + visit(g, t, memo, on_stack)?);
        }
        on_stack[q] = false;
        memo[q] = Some(best);
        Some(best)
    }
    let Some(q0) = g.initial() else {
        return Some(0);
    };
    let n = g.state_count();
    visit(g, q0, &mut vec![None; n], &mut vec![false; n])
}

/// All strings of the selected language with length at most `bound`, by
/// direct replay from the initial state.
pub fn enumerate(g: &Generator, which: LanguageKind, bound: usize) -> LanguageSample {
    let mut strings = BTreeSet::new();
    if let Some(q0) = g.initial() {
        let mut stack: Vec<(State, Word)> = vec![(q0, Word::new())];
        while let Some((q, w)) = stack.pop() {
            if which == LanguageKind::Closed || g.is_marked(q) {
                strings.insert(w.clone());
            }
            if w.len() == bound {
                continue;
            }
            for (ev, t) in g.outgoing(q) {
                let mut next = w.clone();
                next.push(g.alphabet().label(ev).to_owned());
                stack.push((t, next));
            }
        }
    }
    let exact = longest_path(g).is_some_and(|l| bound >= l);
    LanguageSample {
        strings,
        bound,
        exact,
    }
}

/// Natural projection of a single word.
pub fn project_word(w: &[String], s: &ObservableSet) -> Word {
    w.iter().filter(|l| s.contains(l)).cloned().collect()
}

/// All prefixes (including ε and the words themselves).
pub fn prefix_closure<'a>(words: impl IntoIterator<Item = &'a Word>) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for w in words {
        for i in 0..=w.len() {
            out.insert(w[..i].to_vec());
        }
    }
    out
}

/// Shortlex order: shorter first, then lexicographic.
pub fn shortlex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}
