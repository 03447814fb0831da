use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::ObservableSet;
use crate::compare::LanguageKind;
use crate::error::Result;
use crate::generator::{Generator, State};
use crate::ops::{subset_construction, unobservable_closure};
use crate::reach::{accessible, trim};
use crate::witness::{Witness, Word};

/// Whether the projection onto `s` is an observer for `L_m(G)` (`Marked`) or
/// `L(G)` (`Closed`). Strings `s` range over the prefix closure of the
/// language.
///
/// Pairs `(q, x)` of a plant state and a projected state reached by one
/// string are pruned to a greatest fixpoint: a pair goes when `x` is marked
/// but no unobservable path from `q` reaches a marked state, or when some
/// observable event enabled at `x` cannot be matched from `q` by an
/// unobservable path followed by that event into a surviving pair. The
/// projection is an observer iff no pair is pruned.
pub fn check_observer(
    g: &Generator,
    s: &ObservableSet,
    which: LanguageKind,
) -> Result<(bool, Option<Witness>)> {
    s.validate(g.alphabet())?;
    let h = match which {
        LanguageKind::Marked => trim(g),
        LanguageKind::Closed => accessible(g).mark_all(),
    };
    let Some(q0) = h.initial() else {
        return Ok((true, None));
    };
    let alphabet = h.alphabet();
    let observable = s.mask(alphabet);
    let projected = subset_construction(&h, s);
    let pg = &projected.generator;
    let to_proj: Vec<Option<usize>> = alphabet.map_into(pg.alphabet());

    // reachable pairs, breadth-first so the first recorded path is shortest
    let mut index: HashMap<(State, State), usize> = HashMap::from([((q0, 0), 0)]);
    let mut pairs = vec![(q0, 0)];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let (q, x) = pairs[i];
        for (ev, t) in h.outgoing(q) {
            let y = match to_proj[ev] {
                Some(e0) => pg.step(x, e0).expect("projection covers every plant move"),
                None => x,
            };
            if let std::collections::hash_map::Entry::Vacant(v) = index.entry((t, y)) {
                v.insert(pairs.len());
                pairs.push((t, y));
                parent.push(Some((i, ev)));
                queue.push_back(pairs.len() - 1);
            }
        }
    }

    let reach_u: Vec<BTreeSet<State>> = (0..h.state_count())
        .map(|q| unobservable_closure(&h, &observable, [q]))
        .collect();
    let mut alive = vec![true; pairs.len()];
    loop {
        let mut changed = false;
        for i in 0..pairs.len() {
            if !alive[i] {
                continue;
            }
            let (q, x) = pairs[i];
            let marks_ok = !pg.is_marked(x) || reach_u[q].iter().any(|&p| h.is_marked(p));
            let moves_ok = marks_ok
                && pg.outgoing(x).all(|(e0, y)| {
                    let ev = alphabet.index_of(pg.alphabet().label(e0)).unwrap();
                    reach_u[q].iter().any(|&p| {
                        h.step(p, ev)
                            .and_then(|t| index.get(&(t, y)))
                            .is_some_and(|&j| alive[j])
                    })
                });
            if !moves_ok {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if alive.iter().all(|&a| a) {
        return Ok((true, None));
    }

    let path_to = |mut i: usize| {
        let mut rev = Word::new();
        while let Some((p, ev)) = parent[i] {
            rev.push(alphabet.label(ev).to_owned());
            i = p;
        }
        rev.reverse();
        rev
    };
    // every pair violating the language condition is pruned, so the first
    // pruned pair with a missing continuation gives the witness
    for (i, &(q, x)) in pairs.iter().enumerate() {
        if alive[i] {
            continue;
        }
        if let Some(v) = missing_continuation(&h, &observable, pg, q, x) {
            let s_word = path_to(i);
            let mut t: Word = s_word
                .iter()
                .filter(|l| s.contains(l))
                .cloned()
                .collect();
            t.extend(v);
            return Ok((false, Some(Witness::StringPair { s: s_word, t })));
        }
    }
    unreachable!("a pruned pair always has a missing continuation")
}

/// Shortest observed continuation `v` marked from projected state `x` that
/// no unobservable-interleaved path from `q` realizes.
fn missing_continuation(
    h: &Generator,
    observable: &[bool],
    pg: &Generator,
    q: State,
    x: State,
) -> Option<Word> {
    let start = (x, unobservable_closure(h, observable, [q]));
    let mut seen = std::collections::HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, Word::new())]);
    while let Some(((y, z), v)) = queue.pop_front() {
        if pg.is_marked(y) && !z.iter().any(|&p| h.is_marked(p)) {
            return Some(v);
        }
        for (e0, y2) in pg.outgoing(y) {
            let label = pg.alphabet().label(e0);
            let ev = h.alphabet().index_of(label).unwrap();
            let image: Vec<State> = z.iter().filter_map(|&p| h.step(p, ev)).collect();
            let z2 = unobservable_closure(h, observable, image);
            let key = (y2, z2);
            if seen.insert(key.clone()) {
                let mut v2 = v.clone();
                v2.push(label.to_owned());
                queue.push_back((key, v2));
            }
        }
    }
    None
}
