//! Synchronous product, meet, natural projection and inverse projection.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Alphabet, EventId, ObservableSet};
use crate::error::{Error, Result};
use crate::generator::{Generator, State};

/// Product of two generators over `alphabet`, where `moves1[e]`/`moves2[e]`
/// give each component's event id for `alphabet` event `e` (or `None` when the
/// component does not participate and stays put). Only reachable pairs are
/// built; `pairs[i]` is the component state pair of result state `i`.
pub(crate) struct Product {
    pub generator: Generator,
    pub pairs: Vec<(State, State)>,
}

fn product(
    name: String,
    alphabet: Alphabet,
    g1: &Generator,
    g2: &Generator,
    shared_only: bool,
) -> Product {
    let map1 = alphabet.map_into(g1.alphabet());
    let map2 = alphabet.map_into(g2.alphabet());
    let (Some(i1), Some(i2)) = (g1.initial(), g2.initial()) else {
        return Product {
            generator: Generator::empty(name, alphabet),
            pairs: Vec::new(),
        };
    };
    let mut index: HashMap<(State, State), State> = HashMap::from([((i1, i2), 0)]);
    let mut pairs = vec![(i1, i2)];
    let mut delta: Vec<BTreeMap<EventId, State>> = vec![BTreeMap::new()];
    let mut queue = VecDeque::from([0]);
    while let Some(s) = queue.pop_front() {
        let (q1, q2) = pairs[s];
        for e in 0..alphabet.len() {
            let n1 = match map1[e] {
                Some(e1) => g1.step(q1, e1),
                None if shared_only => None,
                None => Some(q1),
            };
            let n2 = match map2[e] {
                Some(e2) => g2.step(q2, e2),
                None if shared_only => None,
                None => Some(q2),
            };
            let (Some(n1), Some(n2)) = (n1, n2) else {
                continue;
            };
            let t = *index.entry((n1, n2)).or_insert_with(|| {
                pairs.push((n1, n2));
                delta.push(BTreeMap::new());
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            });
            delta[s].insert(e, t);
        }
    }
    let marked = pairs
        .iter()
        .enumerate()
        .filter(|(_, (a, b))| g1.is_marked(*a) && g2.is_marked(*b))
        .map(|(i, _)| i)
        .collect();
    Product {
        generator: Generator::from_parts(name, alphabet, 0, marked, delta),
        pairs,
    }
}

pub(crate) fn sync_product(g1: &Generator, g2: &Generator) -> Result<Product> {
    let alphabet = g1.alphabet().union(g2.alphabet())?;
    let name = format!("sync({},{})", g1.name(), g2.name());
    Ok(product(name, alphabet, g1, g2, false))
}

/// Synchronous product: shared events move both components, private events
/// interleave. Marked iff both components are marked. Reachable part only.
pub fn sync(g1: &Generator, g2: &Generator) -> Result<Generator> {
    Ok(sync_product(g1, g2)?.generator)
}

pub(crate) fn meet_product(g1: &Generator, g2: &Generator) -> Result<Product> {
    if !g1.alphabet().same_events(g2.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    let name = format!("meet({},{})", g1.name(), g2.name());
    Ok(product(name, g1.alphabet().clone(), g1, g2, true))
}

/// Product over a common alphabet: `L = L1 ∩ L2`, `L_m = L_m1 ∩ L_m2`.
pub fn meet(g1: &Generator, g2: &Generator) -> Result<Generator> {
    Ok(meet_product(g1, g2)?.generator)
}

/// The subset construction behind [`project`]: result generator plus the
/// member set (sorted) of every subset state.
pub(crate) struct SubsetConstruction {
    pub generator: Generator,
    pub cells: Vec<Vec<State>>,
}

/// Unobservable closure of `seed`.
pub(crate) fn unobservable_closure(
    g: &Generator,
    observable: &[bool],
    seed: impl IntoIterator<Item = State>,
) -> BTreeSet<State> {
    let mut set: BTreeSet<State> = BTreeSet::new();
    let mut stack: Vec<State> = Vec::new();
    for q in seed {
        if set.insert(q) {
            stack.push(q);
        }
    }
    while let Some(q) = stack.pop() {
        for (e, t) in g.outgoing(q) {
            if !observable[e] && set.insert(t) {
                stack.push(t);
            }
        }
    }
    set
}

pub(crate) fn subset_construction(g: &Generator, s: &ObservableSet) -> SubsetConstruction {
    let observable = s.mask(g.alphabet());
    let alphabet = g.alphabet().restrict(s);
    let to_full: Vec<EventId> = alphabet
        .labels()
        .map(|l| g.alphabet().index_of(l).unwrap())
        .collect();
    let name = format!("P({})", g.name());
    let Some(q0) = g.initial() else {
        return SubsetConstruction {
            generator: Generator::empty(name, alphabet),
            cells: Vec::new(),
        };
    };
    let start: Vec<State> = unobservable_closure(g, &observable, [q0]).into_iter().collect();
    let mut index: HashMap<Vec<State>, State> = HashMap::from([(start.clone(), 0)]);
    let mut cells = vec![start];
    let mut delta: Vec<BTreeMap<EventId, State>> = vec![BTreeMap::new()];
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (e0, &e) in to_full.iter().enumerate() {
            let image: Vec<State> = cells[x].iter().filter_map(|&q| g.step(q, e)).collect();
            if image.is_empty() {
                continue;
            }
            let cell: Vec<State> = unobservable_closure(g, &observable, image)
                .into_iter()
                .collect();
            let t = match index.get(&cell) {
                Some(&t) => t,
                None => {
                    let t = cells.len();
                    index.insert(cell.clone(), t);
                    cells.push(cell);
                    delta.push(BTreeMap::new());
                    queue.push_back(t);
                    t
                }
            };
            delta[x].insert(e0, t);
        }
    }
    let marked = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.iter().any(|&q| g.is_marked(q)))
        .map(|(i, _)| i)
        .collect();
    SubsetConstruction {
        generator: Generator::from_parts(name, alphabet, 0, marked, delta),
        cells,
    }
}

/// Natural projection onto `s`: `L(result) = P(L(G))`, `L_m(result) = P(L_m(G))`.
///
/// Subset states are unobservable closures of step images, numbered in
/// breadth-first discovery order over sorted labels. Labels of `s` that are
/// not in the alphabet of `g` are ignored.
pub fn project(g: &Generator, s: &ObservableSet) -> Generator {
    subset_construction(g, s).generator
}

/// Lift to `full`: every label of `full` missing from `g` is self-looped at
/// every state, so `L = P^{-1}(L(g))` and `L_m = P^{-1}(L_m(g))`.
pub fn inverse_project(g: &Generator, full: &Alphabet) -> Result<Generator> {
    let mut lifted = g.widen_alphabet(full)?;
    let extra: Vec<EventId> = full
        .labels()
        .enumerate()
        .filter(|(_, l)| !g.alphabet().contains(l))
        .map(|(e, _)| e)
        .collect();
    for q in 0..lifted.state_count() {
        for &e in &extra {
            lifted.add_transition(q, e, q)?;
        }
    }
    Ok(lifted)
}
