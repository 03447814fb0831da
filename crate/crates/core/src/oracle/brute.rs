//! Literal, string-level evaluation of the definitions. Everything here works
//! on enumerated languages and replays words on the generators; none of it
//! goes through the automaton constructions it is used to check.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::enumerate::{enumerate, longest_path, prefix_closure, project_word, shortlex, LanguageSample};
use crate::alphabet::ObservableSet;
use crate::compare::LanguageKind;
use crate::consistency::IccMode;
use crate::error::{Error, Result};
use crate::generator::{Generator, State};
use crate::witness::{IccViolation, Witness, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BruteProperty {
    Gcc(IccMode),
    Occ,
    ObserverMarked,
    ObserverClosed,
}

/// Supremal controllable sublanguage of a finite candidate set by iterated
/// deletion: a string goes when one of its prefixes `s` has an uncontrollable
/// continuation `sσ` in the plant that leaves the candidate's closure.
pub fn brute_supc_lang(
    candidate: &BTreeSet<Word>,
    plant_closed: &BTreeSet<Word>,
    uncontrollable: &BTreeSet<String>,
) -> BTreeSet<Word> {
    let mut k = candidate.clone();
    loop {
        let closure = prefix_closure(&k);
        let bad: BTreeSet<&Word> = closure
            .iter()
            .filter(|s| {
                uncontrollable.iter().any(|sigma| {
                    let mut ext = (*s).clone();
                    ext.push(sigma.clone());
                    plant_closed.contains(&ext) && !closure.contains(&ext)
                })
            })
            .collect();
        if bad.is_empty() {
            return k;
        }
        k.retain(|w| (0..=w.len()).all(|i| !bad.contains(&w[..i].to_vec())));
    }
}

/// Membership of `w` in `P_E^{-1}(L_m(E))`: `E` judges only its own labels.
pub fn spec_accepts(e: &Generator, w: &[String]) -> bool {
    let own = ObservableSet::all(e.alphabet());
    e.in_marked(&project_word(w, &own))
}

/// `supC(L_m(E) ∥ L_m(G), L(G))` computed on the enumerated languages.
pub fn brute_supcon(g: &Generator, e: &Generator, bound: usize) -> LanguageSample {
    let closed = enumerate(g, LanguageKind::Closed, bound);
    let marked = enumerate(g, LanguageKind::Marked, bound);
    let candidate: BTreeSet<Word> = marked
        .strings
        .into_iter()
        .filter(|w| spec_accepts(e, w))
        .collect();
    let strings = brute_supc_lang(&candidate, &closed.strings, &g.alphabet().uncontrollable_labels());
    LanguageSample {
        strings,
        bound,
        exact: closed.exact,
    }
}

fn exact_bound(g: &Generator) -> Result<usize> {
    longest_path(g).ok_or(Error::NotAcyclic)
}

/// `K_0 = supC(E ∩ P(L_m(G)), P(L(G)))` from the projected enumerations.
/// Requires an acyclic plant.
pub fn brute_decentralized(g: &Generator, e: &Generator, s: &ObservableSet) -> Result<BTreeSet<Word>> {
    let bound = exact_bound(g)?;
    let closed = enumerate(g, LanguageKind::Closed, bound).strings;
    let marked = enumerate(g, LanguageKind::Marked, bound).strings;
    let p_closed: BTreeSet<Word> = closed.iter().map(|w| project_word(w, s)).collect();
    let candidate: BTreeSet<Word> = marked
        .iter()
        .map(|w| project_word(w, s))
        .filter(|t| spec_accepts(e, t))
        .collect();
    let uncontrollable: BTreeSet<String> = g
        .alphabet()
        .uncontrollable_labels()
        .into_iter()
        .filter(|l| s.contains(l))
        .collect();
    Ok(brute_supc_lang(&candidate, &p_closed, &uncontrollable))
}

/// `K = supC(E ∥ L_m(G), L(G))`. Requires an acyclic plant.
pub fn brute_monolithic(g: &Generator, e: &Generator) -> Result<BTreeSet<Word>> {
    let bound = exact_bound(g)?;
    Ok(brute_supcon(g, e, bound).strings)
}

/// `P^{-1}(K_0) ∩ L_m(G)`.
pub fn brute_lift_into(g: &Generator, k0: &BTreeSet<Word>, s: &ObservableSet) -> Result<BTreeSet<Word>> {
    let bound = exact_bound(g)?;
    Ok(enumerate(g, LanguageKind::Marked, bound)
        .strings
        .into_iter()
        .filter(|w| k0.contains(&project_word(w, s)))
        .collect())
}

/// Nonblocking of `sync(SUP_0, G)` evaluated on strings: every string of
/// `P^{-1}(K̄_0) ∩ L(G)` must extend to one of `P^{-1}(K_0) ∩ L_m(G)`.
/// Returns the shortest blocking string, if any.
pub fn brute_lemma1(g: &Generator, k0: &BTreeSet<Word>, s: &ObservableSet) -> Result<Option<Word>> {
    let bound = exact_bound(g)?;
    let k0_closure = prefix_closure(k0);
    let closed: Vec<Word> = enumerate(g, LanguageKind::Closed, bound)
        .strings
        .into_iter()
        .filter(|w| k0_closure.contains(&project_word(w, s)))
        .collect();
    let marked = brute_lift_into(g, k0, s)?;
    let marked_closure = prefix_closure(&marked);
    let mut blocking: Vec<Word> = closed
        .into_iter()
        .filter(|w| !marked_closure.contains(w))
        .collect();
    blocking.sort_by(shortlex);
    Ok(blocking.into_iter().next())
}

fn icc_clauses(g: &Generator, a: State, b: State, mode: IccMode) -> Option<IccViolation> {
    for ev in g.alphabet().events().iter().filter(|ev| ev.controllable) {
        let at_a = g.step_label(a, &ev.label).is_some();
        let at_b = g.step_label(b, &ev.label).is_some();
        let label = ev.label.clone();
        if mode == IccMode::Literal && at_a && at_b {
            return Some(IccViolation::SharedControllable { label });
        }
        if mode == IccMode::Agreement && at_a != at_b {
            return Some(IccViolation::EnablementMismatch { label });
        }
    }
    (g.is_marked(a) && g.is_marked(b)).then_some(IccViolation::BothMarked)
}

/// Literal evaluation of a property by quantifier expansion over the whole
/// (finite) language of an acyclic generator.
pub fn brute_check(
    g: &Generator,
    s: &ObservableSet,
    property: BruteProperty,
) -> Result<(bool, Option<Witness>)> {
    s.validate(g.alphabet())?;
    let bound = exact_bound(g)?;
    let closed = enumerate(g, LanguageKind::Closed, bound).strings;
    let marked = enumerate(g, LanguageKind::Marked, bound).strings;
    let mut by_len: Vec<&Word> = closed.iter().collect();
    by_len.sort_by(|a, b| shortlex(a, b));
    match property {
        BruteProperty::Gcc(mode) => {
            let hidden: Vec<String> = g
                .alphabet()
                .controllable_labels()
                .into_iter()
                .filter(|l| !s.contains(l))
                .collect();
            if !hidden.is_empty() {
                return Err(Error::ControllableUnobservable(hidden));
            }
            let marked_closure = prefix_closure(&marked);
            if let Some(w) = by_len.iter().find(|w| !marked_closure.contains(**w)) {
                return Err(Error::NotNonblocking((*w).clone()));
            }
            let mut groups: BTreeMap<Word, Vec<&Word>> = BTreeMap::new();
            for w in &by_len {
                groups.entry(project_word(w, s)).or_default().push(w);
            }
            let mut found: Option<((State, State), (Word, Word), IccViolation)> = None;
            for group in groups.values() {
                for (i, w1) in group.iter().enumerate() {
                    for w2 in &group[i + 1..] {
                        let (q1, q2) = (g.run(w1).unwrap(), g.run(w2).unwrap());
                        if q1 == q2 {
                            continue;
                        }
                        if let Some(v) = icc_clauses(g, q1, q2, mode) {
                            let (key, strings) = if q1 < q2 {
                                ((q1, q2), ((*w1).clone(), (*w2).clone()))
                            } else {
                                ((q2, q1), ((*w2).clone(), (*w1).clone()))
                            };
                            if found.as_ref().is_none_or(|(k, _, _)| key < *k) {
                                found = Some((key, strings, v));
                            }
                        }
                    }
                }
            }
            Ok(match found {
                None => (true, None),
                Some((states, strings, violation)) => (
                    false,
                    Some(Witness::StatePair {
                        states,
                        strings,
                        violation,
                    }),
                ),
            })
        }
        BruteProperty::Occ => {
            let alphabet = g.alphabet();
            let controllable = |l: &str| alphabet.attr(l).is_some_and(|ev| ev.controllable);
            let violating = by_len.iter().find(|w| {
                let Some((last, body)) = w.split_last() else {
                    return false;
                };
                if !s.contains(last) || controllable(last) {
                    return false;
                }
                body.iter()
                    .rev()
                    .take_while(|l| !s.contains(l))
                    .any(|l| controllable(l))
            });
            Ok(match violating {
                None => (true, None),
                Some(w) => (false, Some(Witness::Path { path: (*w).clone() })),
            })
        }
        BruteProperty::ObserverMarked | BruteProperty::ObserverClosed => {
            let lang = if property == BruteProperty::ObserverMarked {
                marked
            } else {
                closed
            };
            let mut prefixes: Vec<Word> = prefix_closure(&lang).into_iter().collect();
            prefixes.sort_by(shortlex);
            let mut targets: Vec<Word> = lang
                .iter()
                .map(|w| project_word(w, s))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            targets.sort_by(shortlex);
            for sw in &prefixes {
                let ps = project_word(sw, s);
                for t in targets.iter().filter(|t| t.starts_with(&ps)) {
                    let realized = lang
                        .iter()
                        .any(|w| w.starts_with(sw) && project_word(w, s) == *t);
                    if !realized {
                        return Ok((
                            false,
                            Some(Witness::StringPair {
                                s: sw.clone(),
                                t: t.clone(),
                            }),
                        ));
                    }
                }
            }
            Ok((true, None))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures;
    use crate::witness::word;

    fn obs(l: &[&str]) -> ObservableSet {
        ObservableSet::new(l.iter().copied())
    }

    #[test]
    fn brute_supcon_fixtures() {
        let p = fixtures::supc();
        let e = Generator::from_words("e", p.alphabet().clone(), [vec!["c"]]).unwrap();
        assert!(brute_supcon(&p, &e, 3).strings.is_empty());
        let e = Generator::from_words("e", p.alphabet().clone(), [vec!["u"], vec!["c"]]).unwrap();
        assert_eq!(
            brute_supcon(&p, &e, 3).strings,
            BTreeSet::from([word(&["c"]), word(&["u"])])
        );
        let u = Generator::universal("u", p.alphabet().clone());
        assert_eq!(
            brute_supcon(&p, &u, 3).strings,
            enumerate(&p, LanguageKind::Marked, 3).strings
        );
    }

    #[test]
    fn brute_check_fixtures() {
        assert!(brute_check(&fixtures::two_path(), &obs(&["c"]), BruteProperty::Gcc(IccMode::Literal)).unwrap().0);
        assert!(!brute_check(&fixtures::clash(), &obs(&["c"]), BruteProperty::Gcc(IccMode::Literal)).unwrap().0);
        assert!(!brute_check(&fixtures::taint(), &obs(&["u"]), BruteProperty::Occ).unwrap().0);
        assert!(brute_check(&fixtures::obs_a(), &obs(&["b"]), BruteProperty::ObserverMarked).unwrap().0);
        assert!(!brute_check(&fixtures::obs_b(), &obs(&["b"]), BruteProperty::ObserverMarked).unwrap().0);
    }

    #[test]
    fn brute_check_needs_acyclic() {
        let g = Generator::universal("u", fixtures::two_path().alphabet().clone());
        assert_eq!(
            brute_check(&g, &obs(&["a", "c"]), BruteProperty::Occ),
            Err(Error::NotAcyclic)
        );
    }

    #[test]
    fn pinned_twopath_pipeline_by_strings() {
        // K = ∅; K_0 = {c}; K_0 ∥ L_m = {c}; sync(SUP_0, G) blocks after a
        let g = fixtures::two_path();
        let e = fixtures::spec_c();
        let s = obs(&["c"]);
        assert!(brute_monolithic(&g, &e).unwrap().is_empty());
        let k0 = brute_decentralized(&g, &e, &s).unwrap();
        assert_eq!(k0, BTreeSet::from([word(&["c"])]));
        assert_eq!(brute_lift_into(&g, &k0, &s).unwrap(), BTreeSet::from([word(&["c"])]));
        assert_eq!(brute_lemma1(&g, &k0, &s).unwrap(), Some(word(&["a"])));
    }
}
