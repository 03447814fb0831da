use std::collections::VecDeque;

use crate::alphabet::ObservableSet;
use crate::error::Result;
use crate::generator::Generator;
use crate::witness::{Witness, Word};

/// Output control consistency of the projection for `L(G)`.
///
/// Runs `G` against a two-state taint monitor: a controllable unobservable
/// event taints, any observable event cleans. A tainted configuration that
/// enables an observable uncontrollable event is a violation; the witness is
/// the shortest such path, ending in that event.
pub fn check_occ(g: &Generator, s: &ObservableSet) -> Result<(bool, Option<Witness>)> {
    s.validate(g.alphabet())?;
    let Some(q0) = g.initial() else {
        return Ok((true, None));
    };
    let alphabet = g.alphabet();
    let observable = s.mask(alphabet);
    let node = |q: usize, tainted: bool| 2 * q + usize::from(tainted);
    let mut parent: Vec<Option<Option<(usize, usize)>>> = vec![None; 2 * g.state_count()];
    parent[node(q0, false)] = Some(None);
    let mut queue = VecDeque::from([(q0, false)]);
    let path = |parent: &[Option<Option<(usize, usize)>>], mut n: usize| {
        let mut rev = Word::new();
        while let Some(Some((prev, ev))) = parent[n] {
            rev.push(alphabet.label(ev).to_owned());
            n = prev;
        }
        rev.reverse();
        rev
    };
    while let Some((q, tainted)) = queue.pop_front() {
        let here = node(q, tainted);
        for (ev, t) in g.outgoing(q) {
            let controllable = alphabet.is_controllable(ev);
            if tainted && observable[ev] && !controllable {
                let mut w = path(&parent, here);
                w.push(alphabet.label(ev).to_owned());
                return Ok((false, Some(Witness::Path { path: w })));
            }
            let next_taint = if observable[ev] {
                false
            } else {
                tainted || controllable
            };
            let next = node(t, next_taint);
            if parent[next].is_none() {
                parent[next] = Some(Some((here, ev)));
                queue.push_back((t, next_taint));
            }
        }
    }
    Ok((true, None))
}
