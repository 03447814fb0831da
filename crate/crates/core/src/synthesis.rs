//! Controllability, the supremal controllable sublanguage, and control
//! equivalence of supervisors.

use std::collections::VecDeque;

use serde::Serialize;

use crate::alphabet::EventAttr;
use crate::compare::{language_compare, Comparison, LanguageKind};
use crate::error::Result;
use crate::generator::{Generator, State};
use crate::ops::{inverse_project, meet_product, sync};
use crate::reach::trim;
use crate::witness::{Witness, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisResult {
    /// Trim recognizer of the synthesized language.
    pub supervisor: Generator,
    /// `(supervisor state, controllable label)` pairs the plant enables but the
    /// supervisor does not.
    pub disabled: Vec<(State, String)>,
    pub empty: bool,
}

/// Shortest `s ∈ K̄ ∩ L(G)` with an event `σ` selected by `escapes` such that
/// `sσ ∈ L(G)` but `sσ ∉ K̄`. `K̄` is the prefix closure of `L_m(k)`.
pub(crate) fn closure_escape(
    k: &Generator,
    g: &Generator,
    escapes: impl Fn(&EventAttr) -> bool,
) -> Option<(Word, String)> {
    let kt = trim(k);
    let (Some(k0), Some(g0)) = (kt.initial(), g.initial()) else {
        return None;
    };
    let ga = g.alphabet();
    let to_k: Vec<_> = ga.labels().map(|l| kt.alphabet().index_of(l)).collect();
    let mut parent = std::collections::HashMap::from([((k0, g0), None)]);
    let mut queue = VecDeque::from([(k0, g0)]);
    let path = |parent: &std::collections::HashMap<(State, State), Option<((State, State), usize)>>,
                mut p: (State, State)| {
        let mut rev = Vec::new();
        while let Some(Some((prev, e))) = parent.get(&p) {
            rev.push(ga.label(*e).to_owned());
            p = *prev;
        }
        rev.reverse();
        rev
    };
    while let Some(p @ (qk, qg)) = queue.pop_front() {
        for (e, tg) in g.outgoing(qg) {
            let tk = to_k[e].and_then(|ek| kt.step(qk, ek));
            match tk {
                None if escapes(ga.get(e)) => {
                    return Some((path(&parent, p), ga.label(e).to_owned()));
                }
                None => {}
                Some(tk) => {
                    if let std::collections::hash_map::Entry::Vacant(v) = parent.entry((tk, tg)) {
                        v.insert(Some((p, e)));
                        queue.push_back((tk, tg));
                    }
                }
            }
        }
    }
    None
}

/// `K̄ Σ_u ∩ L(G) ⊆ K̄` where `K = L_m(k)`. Labels of `G` absent from `k` are
/// undefined in `k`; the caller lifts `k` beforehand if it means otherwise.
pub fn is_controllable(k: &Generator, g: &Generator) -> Result<(bool, Option<Witness>)> {
    k.alphabet().is_subset_of(g.alphabet())?;
    Ok(match closure_escape(k, g, |ev| !ev.controllable) {
        None => (true, None),
        Some((path, event)) => (false, Some(Witness::PathEvent { path, event })),
    })
}

/// Recognizer of `supC(L_m(E) ∩ L_m(G), L(G))`.
///
/// `E` is lifted to `Σ(G)` and met with `G`; the product keeps the plant
/// component, so a product state is bad when the plant enables an
/// uncontrollable event the product cannot follow. Bad-state deletion and
/// trimming alternate until nothing changes.
pub fn supcon(g: &Generator, e: &Generator) -> Result<SynthesisResult> {
    let lifted = inverse_project(e, g.alphabet())?;
    let product = meet_product(&lifted, g)?;
    let pg = &product.generator;
    let n = pg.state_count();
    let ga = g.alphabet();
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for s in 0..n {
            if !alive[s] {
                continue;
            }
            let plant = product.pairs[s].1;
            let bad = g.outgoing(plant).any(|(ev, _)| {
                !ga.is_controllable(ev) && !pg.step(s, ev).is_some_and(|t| alive[t])
            });
            if bad {
                alive[s] = false;
                changed = true;
            }
        }
        changed |= trim_mask(pg, &mut alive);
        if !changed {
            break;
        }
    }
    let kept: Vec<State> = (0..n).filter(|&s| alive[s]).collect();
    let supervisor = pg.restrict(&alive).with_name(format!("supcon({},{})", g.name(), e.name()));
    let mut disabled = Vec::new();
    for (new, &old) in kept.iter().enumerate() {
        let plant = product.pairs[old].1;
        for (ev, _) in g.outgoing(plant) {
            if ga.is_controllable(ev) && supervisor.step(new, ev).is_none() {
                disabled.push((new, ga.label(ev).to_owned()));
            }
        }
    }
    let empty = supervisor.is_empty();
    Ok(SynthesisResult {
        supervisor,
        disabled,
        empty,
    })
}

/// Restrict `alive` to states reachable and coreachable through alive states.
/// Returns whether anything was removed.
fn trim_mask(g: &Generator, alive: &mut [bool]) -> bool {
    let n = g.state_count();
    let mut reach = vec![false; n];
    if let Some(q0) = g.initial().filter(|&q| alive[q]) {
        let mut stack = vec![q0];
        reach[q0] = true;
        while let Some(q) = stack.pop() {
            for (_, t) in g.outgoing(q) {
                if alive[t] && !reach[t] {
                    reach[t] = true;
                    stack.push(t);
                }
            }
        }
    }
    let mut preds = vec![Vec::new(); n];
    for (q, _, t) in g.transitions() {
        if alive[q] && alive[t] {
            preds[t].push(q);
        }
    }
    let mut coreach = vec![false; n];
    let mut stack: Vec<State> = g.marked().iter().copied().filter(|&q| alive[q]).collect();
    for &q in &stack {
        coreach[q] = true;
    }
    while let Some(q) = stack.pop() {
        for &p in &preds[q] {
            if !coreach[p] {
                coreach[p] = true;
                stack.push(p);
            }
        }
    }
    let mut changed = false;
    for q in 0..n {
        if alive[q] && !(reach[q] && coreach[q]) {
            alive[q] = false;
            changed = true;
        }
    }
    changed
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ControlEquivalence {
    /// `L_m(G) ∩ L_m(RSUP)` against `L_m(SUP)`.
    pub marked: Comparison,
    /// `L(G) ∩ L(RSUP)` against `L(SUP)`.
    pub closed: Comparison,
}

impl ControlEquivalence {
    pub fn holds(&self) -> bool {
        self.marked.is_equal() && self.closed.is_equal()
    }

    pub fn witness(&self) -> Option<Witness> {
        [&self.marked, &self.closed].into_iter().find_map(|c| {
            c.only_left
                .clone()
                .or_else(|| c.only_right.clone())
                .map(|path| Witness::Path { path })
        })
    }
}

/// Whether `rsup` is control equivalent to `sup` with respect to `g`. The
/// intersections are synchronous products, so events of `G` that `rsup` does
/// not know are unconstrained by it.
pub fn control_equivalent(
    rsup: &Generator,
    sup: &Generator,
    g: &Generator,
) -> Result<ControlEquivalence> {
    rsup.alphabet().is_subset_of(g.alphabet())?;
    sup.alphabet().is_subset_of(g.alphabet())?;
    let left = sync(g, rsup)?;
    Ok(ControlEquivalence {
        marked: language_compare(&left, sup, LanguageKind::Marked),
        closed: language_compare(&left, sup, LanguageKind::Closed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, EventAttr};
    use crate::oracle::{enumerate, fixtures};
    use crate::reach::is_nonblocking;
    use crate::witness::word;

    #[test]
    fn controllability_examples() {
        let g = fixtures::two_path();
        assert_eq!(is_controllable(&g, &g).unwrap(), (true, None));

        let p = fixtures::supc();
        let k = Generator::from_words("k", p.alphabet().clone(), [vec!["c"]]).unwrap();
        assert_eq!(
            is_controllable(&k, &p).unwrap(),
            (
                false,
                Some(Witness::PathEvent {
                    path: vec![],
                    event: "u".into()
                })
            )
        );
        let empty = Generator::empty("k", p.alphabet().clone());
        assert!(is_controllable(&empty, &p).unwrap().0);
    }

    #[test]
    fn supcon_keeps_unrestricted_behavior() {
        let g = fixtures::two_path();
        let r = supcon(&g, &Generator::universal("e", g.alphabet().clone())).unwrap();
        assert!(!r.empty);
        assert!(language_compare(&r.supervisor, &g, LanguageKind::Marked).is_equal());
        assert!(r.disabled.is_empty());
    }

    #[test]
    fn supcon_supc_fixture() {
        let p = fixtures::supc();
        let e = Generator::from_words("e", p.alphabet().clone(), [vec!["c"]]).unwrap();
        let r = supcon(&p, &e).unwrap();
        assert!(r.empty);
        assert!(r.supervisor.is_empty());

        let e = Generator::from_words("e", p.alphabet().clone(), [vec!["u"], vec!["c"]]).unwrap();
        let r = supcon(&p, &e).unwrap();
        assert!(!r.empty);
        assert_eq!(
            enumerate(&r.supervisor, LanguageKind::Marked, 3).strings,
            [word(&["c"]), word(&["u"])].into_iter().collect()
        );
    }

    #[test]
    fn supcon_reports_disabled_events() {
        // plant 0 -c-> 1 -u-> 2, 0 -u-> 2, everything marked; spec forbids c
        let a = Alphabet::new([EventAttr::controllable("c"), EventAttr::uncontrollable("u")])
            .unwrap();
        let g = Generator::new("g", a.clone(), 3, 0, [0, 1, 2], [(0, "c", 1), (1, "u", 2), (0, "u", 2)])
            .unwrap();
        let e = Generator::from_words("e", a, [vec![], vec!["u"]]).unwrap();
        let r = supcon(&g, &e).unwrap();
        assert_eq!(r.disabled, vec![(0, "c".to_string())]);
        assert!(is_nonblocking(&r.supervisor).0);
        assert!(is_controllable(&r.supervisor, &g).unwrap().0);
    }

    #[test]
    fn control_equivalence_examples() {
        let g = fixtures::two_path();
        let sup = supcon(&g, &Generator::universal("e", g.alphabet().clone()))
            .unwrap()
            .supervisor;
        assert!(control_equivalent(&sup, &sup, &g).unwrap().holds());
        let univ = Generator::universal("r", g.alphabet().clone());
        assert!(control_equivalent(&univ, &sup, &g).unwrap().holds());

        let c_only = Alphabet::new([EventAttr::controllable("c")]).unwrap();
        let rsup = Generator::from_words("rsup", c_only, [vec!["c"]]).unwrap();
        let sup = Generator::from_words("sup", g.alphabet().clone(), [vec!["c"]]).unwrap();
        let ce = control_equivalent(&rsup, &sup, &g).unwrap();
        assert!(ce.marked.is_equal());
        assert!(!ce.closed.is_equal());
        assert!(!ce.holds());
        assert_eq!(ce.witness(), Some(Witness::Path { path: word(&["a"]) }));
    }
}
