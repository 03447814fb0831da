//! Cover, reduced plant, the decentralized and monolithic synthesis
//! pipelines, and the randomized replication harness.

mod replicate;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

pub use replicate::{
    evaluate, replay, replicate, Claim, Counterexample, Evaluation, Outcome, ReplicationConfig,
    ReplicationReport, VerdictPair,
};

use crate::alphabet::{EventId, ObservableSet};
use crate::compare::{language_compare, Comparison, LanguageKind};
use crate::consistency::{gcc_violation, IccMode};
use crate::error::{Error, Result};
use crate::generator::{Generator, State};
use crate::ops::{subset_construction, sync, unobservable_closure};
use crate::reach::is_nonblocking;
use crate::synthesis::{supcon, SynthesisResult};
use crate::witness::Witness;

/// Cells of lookalike states: the subset states of the projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    cells: Vec<Vec<State>>,
    source: Generator,
    observable: ObservableSet,
}

impl Cover {
    pub fn cells(&self) -> &[Vec<State>] {
        &self.cells
    }

    pub fn source(&self) -> &Generator {
        &self.source
    }

    pub fn observable(&self) -> &ObservableSet {
        &self.observable
    }

    fn closure_image(&self, cell: usize, ev: EventId, mask: &[bool]) -> Vec<State> {
        let g = &self.source;
        let image: Vec<State> = self.cells[cell].iter().filter_map(|&q| g.step(q, ev)).collect();
        if image.is_empty() {
            return image;
        }
        unobservable_closure(g, mask, image).into_iter().collect()
    }

    /// Totality over reachable states, `q0` in cell 0, and successor closure.
    pub fn check(&self) -> std::result::Result<(), String> {
        let g = &self.source;
        let Some(q0) = g.initial() else {
            return if self.cells.is_empty() {
                Ok(())
            } else {
                Err("empty generator with nonempty cover".into())
            };
        };
        if let Some(i) = self.cells.iter().position(|c| c.is_empty()) {
            return Err(format!("cell {i} is empty"));
        }
        if !self.cells.first().is_some_and(|c| c.contains(&q0)) {
            return Err("cell 0 does not contain the initial state".into());
        }
        let mut covered = vec![false; g.state_count()];
        for c in &self.cells {
            for &q in c {
                covered[q] = true;
            }
        }
        let reach = crate::reach::reachable_mask(g);
        if let Some(q) = (0..g.state_count()).find(|&q| reach[q] && !covered[q]) {
            return Err(format!("reachable state {q} is in no cell"));
        }
        let mask = self.observable.mask(g.alphabet());
        for i in 0..self.cells.len() {
            for ev in (0..g.alphabet().len()).filter(|&e| mask[e]) {
                let image = self.closure_image(i, ev, &mask);
                if !image.is_empty()
                    && !self.cells.iter().any(|c| image.iter().all(|q| c.contains(q)))
                {
                    return Err(format!(
                        "successors of cell {i} under `{}` span several cells",
                        g.alphabet().label(ev)
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The cover of `g` under the projection onto `s`. Requires GCC.
pub fn build_cover(g: &Generator, s: &ObservableSet, mode: IccMode) -> Result<Cover> {
    if let Some(v) = gcc_violation(g, s, mode)? {
        return Err(Error::NotGcc(Box::new(v)));
    }
    let cover = Cover {
        cells: subset_construction(g, s).cells,
        source: g.clone(),
        observable: s.clone(),
    };
    if let Err(msg) = cover.check() {
        panic!("cover invariant violated: {msg}");
    }
    Ok(cover)
}

/// Quotient of the plant by its cover, over the observable events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedPlant {
    pub generator: Generator,
    pub cover: Cover,
    /// For each plant state, the cells containing it (ascending).
    pub membership: Vec<Vec<usize>>,
}

impl ReducedPlant {
    pub fn cells_of(&self, q: State) -> &[usize] {
        &self.membership[q]
    }
}

/// One state per cell; `cell_i -σ-> cell_j` when the unobservable closure of
/// the σ-successors of `cell_i` lies in `cell_j`; a cell is marked when it
/// meets `Q_m`.
pub fn reduce_plant(g: &Generator, cover: &Cover) -> Result<ReducedPlant> {
    if cover.source != *g {
        return Err(Error::CoverMismatch);
    }
    let alphabet = g.alphabet().restrict(&cover.observable);
    let name = format!("reduced({})", g.name());
    let mut membership = vec![Vec::new(); g.state_count()];
    for (i, c) in cover.cells.iter().enumerate() {
        for &q in c {
            membership[q].push(i);
        }
    }
    if cover.cells.is_empty() {
        return Ok(ReducedPlant {
            generator: Generator::empty(name, alphabet),
            cover: cover.clone(),
            membership,
        });
    }
    let index: HashMap<&[State], usize> = cover
        .cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i))
        .collect();
    let mask = cover.observable.mask(g.alphabet());
    let mut delta = vec![BTreeMap::new(); cover.cells.len()];
    for (i, row) in delta.iter_mut().enumerate() {
        for (e0, label) in alphabet.labels().enumerate() {
            let ev = g.alphabet().index_of(label).expect("restricted label");
            let image = cover.closure_image(i, ev, &mask);
            if image.is_empty() {
                continue;
            }
            let j = index.get(image.as_slice()).copied().or_else(|| {
                cover
                    .cells
                    .iter()
                    .position(|c| image.iter().all(|q| c.contains(q)))
            });
            row.insert(e0, j.expect("cover is successor closed"));
        }
    }
    let marked = cover
        .cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.iter().any(|&q| g.is_marked(q)))
        .map(|(i, _)| i)
        .collect();
    Ok(ReducedPlant {
        generator: Generator::from_parts(name, alphabet, 0, marked, delta),
        cover: cover.clone(),
        membership,
    })
}

fn require_spec_observable(g: &Generator, e: &Generator, s: &ObservableSet) -> Result<()> {
    e.alphabet().is_subset_of(g.alphabet())?;
    match e.alphabet().labels().find(|l| !s.contains(l)) {
        Some(l) => Err(Error::NotSubAlphabet(l.to_owned())),
        None => Ok(()),
    }
}

/// `SUP_0`: supervisor synthesized on the reduced plant, over the observable
/// events.
pub fn decentralized_supcon(
    g: &Generator,
    e: &Generator,
    s: &ObservableSet,
    mode: IccMode,
) -> Result<SynthesisResult> {
    require_spec_observable(g, e, s)?;
    let cover = build_cover(g, s, mode)?;
    let reduced = reduce_plant(g, &cover)?;
    let mut out = supcon(&reduced.generator, e)?;
    out.supervisor = out.supervisor.with_name(format!("sup0({},{})", g.name(), e.name()));
    Ok(out)
}

/// `SUP`: supervisor synthesized on the full plant.
pub fn monolithic_supcon(g: &Generator, e: &Generator, s: &ObservableSet) -> Result<SynthesisResult> {
    s.validate(g.alphabet())?;
    require_spec_observable(g, e, s)?;
    let mut out = supcon(g, e)?;
    out.supervisor = out.supervisor.with_name(format!("sup({},{})", g.name(), e.name()));
    Ok(out)
}

/// Whether `SUP_0` running alongside the plant (`sync(SUP_0, G)`) is
/// nonblocking.
pub fn verify_lemma1(g: &Generator, sup0: &Generator) -> Result<(bool, Option<Witness>)> {
    sup0.alphabet().is_subset_of(g.alphabet())?;
    Ok(is_nonblocking(&sync(sup0, g)?))
}

/// Monolithic against lifted decentralized supervision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Record {
    pub gcc: bool,
    /// `L_m(SUP)` (left) against `L_m(sync(SUP_0, G))` (right).
    pub comparison: Comparison,
    pub equal: bool,
    pub witness: Option<Witness>,
    pub lemma1: bool,
    pub lemma1_witness: Option<Witness>,
    #[serde(skip)]
    pub sup: Generator,
    #[serde(skip)]
    pub sup0: Generator,
    #[serde(skip)]
    pub lifted: Generator,
}

pub fn verify_theorem1(
    g: &Generator,
    e: &Generator,
    s: &ObservableSet,
    mode: IccMode,
) -> Result<Theorem1Record> {
    let sup0 = decentralized_supcon(g, e, s, mode)?.supervisor;
    let sup = monolithic_supcon(g, e, s)?.supervisor;
    let lifted = sync(&sup0, g)?;
    let comparison = language_compare(&sup, &lifted, LanguageKind::Marked);
    let equal = comparison.is_equal();
    let witness = comparison
        .only_left
        .clone()
        .or_else(|| comparison.only_right.clone())
        .map(|path| Witness::Path { path });
    let (lemma1, lemma1_witness) = is_nonblocking(&lifted);
    Ok(Theorem1Record {
        gcc: true,
        comparison,
        equal,
        witness,
        lemma1,
        lemma1_witness,
        sup,
        sup0,
        lifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::Verdict;
    use crate::ops::project;
    use crate::oracle::{enumerate, fixtures};
    use crate::reach::trim;
    use crate::witness::word;
    use std::collections::BTreeSet;

    fn obs(labels: &[&str]) -> ObservableSet {
        ObservableSet::new(labels.iter().copied())
    }

    fn marked(g: &Generator) -> BTreeSet<Vec<String>> {
        enumerate(g, LanguageKind::Marked, 8).strings
    }

    #[test]
    fn cover_examples() {
        let g = fixtures::two_path();
        let c = build_cover(&g, &obs(&["c"]), IccMode::Literal).unwrap();
        assert_eq!(c.cells(), &[vec![0, 1], vec![2]]);

        let all = ObservableSet::all(g.alphabet());
        let c = build_cover(&g, &all, IccMode::Literal).unwrap();
        assert_eq!(c.cells(), &[vec![0], vec![1], vec![2]]);

        assert!(matches!(
            build_cover(&fixtures::clash(), &obs(&["c"]), IccMode::Literal),
            Err(Error::NotGcc(_))
        ));
    }

    #[test]
    fn reduced_twopath() {
        let g = fixtures::two_path();
        let c = build_cover(&g, &obs(&["c"]), IccMode::Literal).unwrap();
        let r = reduce_plant(&g, &c).unwrap();
        assert_eq!(r.generator.state_count(), 2);
        assert_eq!(r.generator.step_label(0, "c"), Some(1));
        assert_eq!(r.generator.marked(), &BTreeSet::from([0, 1]));
        assert_eq!(marked(&r.generator), BTreeSet::from([word(&[]), word(&["c"])]));
        assert_eq!(r.cells_of(1), &[0]);
    }

    #[test]
    fn reduced_full_observation_is_trim_plant() {
        let g = fixtures::obs_a();
        let all = ObservableSet::all(g.alphabet());
        let c = build_cover(&g, &all, IccMode::Literal).unwrap();
        let r = reduce_plant(&g, &c).unwrap();
        let t = trim(&g);
        assert_eq!(r.generator.state_count(), t.state_count());
        assert!(language_compare(&r.generator, &t, LanguageKind::Marked).is_equal());
        assert!(language_compare(&r.generator, &t, LanguageKind::Closed).is_equal());
        assert!(language_compare(&r.generator, &project(&g, &all), LanguageKind::Closed).is_equal());
    }

    #[test]
    fn foreign_cover_rejected() {
        let g = fixtures::two_path();
        let c = build_cover(&g, &obs(&["c"]), IccMode::Literal).unwrap();
        assert_eq!(reduce_plant(&fixtures::taint(), &c), Err(Error::CoverMismatch));
    }

    #[test]
    fn decentralized_examples() {
        let g = fixtures::two_path();
        let s = obs(&["c"]);
        let sigma0 = g.alphabet().restrict(&s);
        let uni = Generator::universal("all", sigma0.clone());
        let k0 = decentralized_supcon(&g, &uni, &s, IccMode::Literal).unwrap();
        assert_eq!(marked(&k0.supervisor), BTreeSet::from([word(&[]), word(&["c"])]));

        let k0 = decentralized_supcon(&g, &fixtures::spec_c(), &s, IccMode::Literal).unwrap();
        assert_eq!(marked(&k0.supervisor), BTreeSet::from([word(&["c"])]));

        let none = Generator::empty("none", sigma0);
        assert!(decentralized_supcon(&g, &none, &s, IccMode::Literal).unwrap().empty);
    }

    #[test]
    fn spec_must_be_observable() {
        let g = fixtures::two_path();
        let e = Generator::universal("e", g.alphabet().clone());
        assert_eq!(
            decentralized_supcon(&g, &e, &obs(&["c"]), IccMode::Literal),
            Err(Error::NotSubAlphabet("a".into()))
        );
    }

    #[test]
    fn monolithic_examples() {
        let g = fixtures::two_path();
        let s = obs(&["c"]);
        let uni = Generator::universal("all", g.alphabet().restrict(&s));
        let k = monolithic_supcon(&g, &uni, &s).unwrap();
        assert!(language_compare(&k.supervisor, &g, LanguageKind::Marked).is_equal());
        assert!(monolithic_supcon(&g, &fixtures::spec_c(), &s).unwrap().empty);
    }

    #[test]
    fn lemma1_examples() {
        let g = fixtures::two_path();
        let (ok, w) = verify_lemma1(&g, &fixtures::spec_c()).unwrap();
        assert!(!ok);
        assert_eq!(w, Some(Witness::Path { path: word(&["a"]) }));
        let uni = Generator::universal("u", g.alphabet().clone());
        assert_eq!(verify_lemma1(&g, &uni).unwrap(), (true, None));
        let none = Generator::empty("none", fixtures::spec_c().alphabet().clone());
        assert_eq!(verify_lemma1(&g, &none).unwrap(), (true, None));
    }

    #[test]
    fn theorem1_twopath() {
        let g = fixtures::two_path();
        let r = verify_theorem1(&g, &fixtures::spec_c(), &obs(&["c"]), IccMode::Literal).unwrap();
        assert!(!r.equal);
        assert_eq!(r.comparison.verdict, Verdict::LeftProperSubset);
        assert_eq!(r.comparison.only_right, Some(word(&["c"])));
        assert_eq!(r.witness, Some(Witness::Path { path: word(&["c"]) }));
        assert!(!r.lemma1);
        assert!(marked(&r.sup).is_empty());
        assert_eq!(marked(&r.lifted), BTreeSet::from([word(&["c"])]));
    }

    #[test]
    fn theorem1_unrestrictive_spec() {
        let g = fixtures::two_path();
        let s = obs(&["c"]);
        let uni = Generator::universal("all", g.alphabet().restrict(&s));
        let r = verify_theorem1(&g, &uni, &s, IccMode::Literal).unwrap();
        assert!(r.equal && r.lemma1);
    }
}
