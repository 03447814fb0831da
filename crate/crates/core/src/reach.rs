//! Reachability, trimming and the nonblocking check.

use std::collections::{BTreeSet, VecDeque};

use crate::generator::{Generator, State};
use crate::witness::{Witness, Word};

/// Breadth-first search tree from the initial state, exploring labels in
/// sorted order. Paths read off the tree are shortlex-minimal.
pub(crate) struct BfsTree {
    pub order: Vec<State>,
    parent: Vec<Option<(State, usize)>>,
    seen: Vec<bool>,
}

impl BfsTree {
    pub fn new(g: &Generator) -> Self {
        let n = g.state_count();
        let mut tree = Self {
            order: Vec::new(),
            parent: vec![None; n],
            seen: vec![false; n],
        };
        let Some(q0) = g.initial() else {
            return tree;
        };
        let mut queue = VecDeque::from([q0]);
        tree.seen[q0] = true;
        while let Some(q) = queue.pop_front() {
            tree.order.push(q);
            for (ev, t) in g.outgoing(q) {
                if !tree.seen[t] {
                    tree.seen[t] = true;
                    tree.parent[t] = Some((q, ev));
                    queue.push_back(t);
                }
            }
        }
        tree
    }

    pub fn reached(&self, q: State) -> bool {
        self.seen[q]
    }

    pub fn path_to(&self, g: &Generator, mut q: State) -> Word {
        let mut rev = Vec::new();
        while let Some((p, ev)) = self.parent[q] {
            rev.push(g.alphabet().label(ev).to_owned());
            q = p;
        }
        rev.reverse();
        rev
    }
}

pub fn reachable(g: &Generator) -> BTreeSet<State> {
    BfsTree::new(g).order.into_iter().collect()
}

pub fn coreachable(g: &Generator) -> BTreeSet<State> {
    coreachable_mask(g)
        .into_iter()
        .enumerate()
        .filter_map(|(q, c)| c.then_some(q))
        .collect()
}

pub(crate) fn coreachable_mask(g: &Generator) -> Vec<bool> {
    let n = g.state_count();
    let mut preds = vec![Vec::new(); n];
    for (q, _, t) in g.transitions() {
        preds[t].push(q);
    }
    let mut mask = vec![false; n];
    let mut stack: Vec<State> = g.marked().iter().copied().collect();
    for &q in &stack {
        mask[q] = true;
    }
    while let Some(q) = stack.pop() {
        for &p in &preds[q] {
            if !mask[p] {
                mask[p] = true;
                stack.push(p);
            }
        }
    }
    mask
}

pub(crate) fn reachable_mask(g: &Generator) -> Vec<bool> {
    let tree = BfsTree::new(g);
    (0..g.state_count()).map(|q| tree.reached(q)).collect()
}

/// Restriction to the reachable states.
pub fn accessible(g: &Generator) -> Generator {
    g.restrict(&reachable_mask(g))
}

/// Restriction to states that are both reachable and coreachable, renumbered
/// in ascending original order.
pub fn trim(g: &Generator) -> Generator {
    let reach = reachable_mask(g);
    let coreach = coreachable_mask(g);
    let keep: Vec<bool> = reach.iter().zip(&coreach).map(|(r, c)| *r && *c).collect();
    g.restrict(&keep)
}

/// Nonblocking iff every reachable state is coreachable. The witness is the
/// shortlex-least path to a blocking state.
pub fn is_nonblocking(g: &Generator) -> (bool, Option<Witness>) {
    let tree = BfsTree::new(g);
    let coreach = coreachable_mask(g);
    match tree.order.iter().find(|&&q| !coreach[q]) {
        None => (true, None),
        Some(&q) => (
            false,
            Some(Witness::Path {
                path: tree.path_to(g, q),
            }),
        ),
    }
}

pub fn is_acyclic(g: &Generator) -> bool {
    // Kahn's algorithm over the whole state set
    let n = g.state_count();
    let mut indeg = vec![0usize; n];
    for (_, _, t) in g.transitions() {
        indeg[t] += 1;
    }
    let mut stack: Vec<State> = (0..n).filter(|&q| indeg[q] == 0).collect();
    let mut seen = 0;
    while let Some(q) = stack.pop() {
        seen += 1;
        for (_, t) in g.outgoing(q) {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                stack.push(t);
            }
        }
    }
    seen == n
}
