use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{decentralized_supcon, verify_lemma1, verify_theorem1};
use crate::alphabet::ObservableSet;
use crate::compare::LanguageKind;
use crate::consistency::{check_gcc, check_observer, check_occ, find_gcc_alphabet, IccMode};
use crate::error::Result;
use crate::format;
use crate::generator::Generator;
use crate::oracle::{
    brute_check, brute_decentralized, brute_lemma1, brute_lift_into, brute_monolithic, enumerate,
    longest_path, random_instance, BruteProperty, Instance, InstanceConfig,
};
use crate::reach::trim;
use crate::witness::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    Prop1,
    Prop2,
    Corollary1,
    Lemma1,
    Theorem1,
}

impl Claim {
    pub const ALL: [Claim; 5] = [
        Claim::Prop1,
        Claim::Prop2,
        Claim::Corollary1,
        Claim::Lemma1,
        Claim::Theorem1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::Prop1 => "prop1",
            Claim::Prop2 => "prop2",
            Claim::Corollary1 => "corollary1",
            Claim::Lemma1 => "lemma1",
            Claim::Theorem1 => "theorem1",
        }
    }

    /// The implication a trial tests. For `corollary1` this is the converse
    /// of `prop2`, so its failures are the witnesses the corollary predicts.
    pub fn statement(self) -> &'static str {
        match self {
            Claim::Prop1 => "the erasure search returns an alphabet under which the plant is GCC",
            Claim::Prop2 => "OCC and marked observer imply GCC",
            Claim::Corollary1 => "GCC implies OCC and marked observer",
            Claim::Lemma1 => "under GCC, sync(SUP0, G) is nonblocking",
            Claim::Theorem1 => "under GCC, L_m(SUP) equals L_m(sync(SUP0, G))",
        }
    }
}

impl std::fmt::Display for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown claim `{s}` (prop1|prop2|corollary1|lemma1|theorem1)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Hold,
    Fail,
    /// Hypothesis unmet.
    Skip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerdictPair {
    pub implementation: bool,
    pub oracle: bool,
}

/// One claim evaluated on one instance. The outcome follows the oracle;
/// `mismatches` names every verdict or language on which the implementation
/// and the oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub outcome: Outcome,
    pub observable: ObservableSet,
    pub verdicts: BTreeMap<String, VerdictPair>,
    pub mismatches: Vec<String>,
}

impl Evaluation {
    fn new(observable: ObservableSet) -> Self {
        Self {
            outcome: Outcome::Skip,
            observable,
            verdicts: BTreeMap::new(),
            mismatches: Vec::new(),
        }
    }

    fn verdict(&mut self, key: &str, implementation: bool, oracle: bool) -> bool {
        if implementation != oracle {
            self.mismatches.push(key.to_owned());
        }
        self.verdicts.insert(
            key.to_owned(),
            VerdictPair {
                implementation,
                oracle,
            },
        );
        oracle
    }

    fn language(&mut self, key: &str, implementation: &BTreeSet<Word>, oracle: &BTreeSet<Word>) {
        if implementation != oracle {
            self.mismatches.push(key.to_owned());
        }
    }

    fn conclude(mut self, holds: bool) -> Self {
        self.outcome = if holds { Outcome::Hold } else { Outcome::Fail };
        self
    }
}

fn marked_strings(g: &Generator, bound: usize) -> BTreeSet<Word> {
    enumerate(g, LanguageKind::Marked, bound).strings
}

/// Evaluate `claim` on `inst`. The oracle routines need an acyclic plant.
pub fn evaluate(claim: Claim, inst: &Instance, mode: IccMode) -> Result<Evaluation> {
    let g = &inst.plant;
    if claim == Claim::Prop1 {
        let s = find_gcc_alphabet(g, mode)?.result;
        let mut ev = Evaluation::new(s.clone());
        let gcc = ev.verdict(
            "gcc",
            check_gcc(g, &s, mode)?.0,
            brute_check(g, &s, BruteProperty::Gcc(mode))?.0,
        );
        return Ok(ev.conclude(gcc));
    }

    let s = &inst.observable;
    let mut ev = Evaluation::new(s.clone());
    let impl_gcc = check_gcc(g, s, mode)?.0;
    let gcc = ev.verdict("gcc", impl_gcc, brute_check(g, s, BruteProperty::Gcc(mode))?.0);
    match claim {
        Claim::Prop1 => unreachable!(),
        Claim::Prop2 | Claim::Corollary1 => {
            let occ = ev.verdict("occ", check_occ(g, s)?.0, brute_check(g, s, BruteProperty::Occ)?.0);
            let observer = ev.verdict(
                "observer",
                check_observer(g, s, LanguageKind::Marked)?.0,
                brute_check(g, s, BruteProperty::ObserverMarked)?.0,
            );
            Ok(match claim {
                Claim::Prop2 if occ && observer => ev.conclude(gcc),
                Claim::Corollary1 if gcc => ev.conclude(occ && observer),
                _ => ev,
            })
        }
        Claim::Lemma1 | Claim::Theorem1 => {
            if !gcc {
                return Ok(ev);
            }
            let bound = longest_path(g).ok_or(crate::error::Error::NotAcyclic)?;
            let k0 = brute_decentralized(g, &inst.spec, s)?;
            let oracle_holds = if claim == Claim::Lemma1 {
                brute_lemma1(g, &k0, s)?.is_none()
            } else {
                brute_monolithic(g, &inst.spec)? == brute_lift_into(g, &k0, s)?
            };
            if !impl_gcc {
                // Already recorded as a mismatch; the pipelines refuse non-GCC input.
                let key = claim.name();
                ev.verdict(key, !oracle_holds, oracle_holds);
                return Ok(ev.conclude(oracle_holds));
            }
            let sup0 = decentralized_supcon(g, &inst.spec, s, mode)?.supervisor;
            ev.language("k0", &marked_strings(&sup0, bound), &k0);
            let holds = if claim == Claim::Lemma1 {
                ev.verdict("lemma1", verify_lemma1(g, &sup0)?.0, oracle_holds)
            } else {
                let record = verify_theorem1(g, &inst.spec, s, mode)?;
                ev.language("k", &marked_strings(&record.sup, bound), &brute_monolithic(g, &inst.spec)?);
                ev.verdict("theorem1", record.equal, oracle_holds)
            };
            Ok(ev.conclude(holds))
        }
    }
}

/// A failing instance, minimized, with the verdicts it produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Trial index, or `None` for an injected instance.
    pub trial: Option<usize>,
    pub original_size: (usize, usize),
    pub plant: String,
    pub spec: String,
    pub observable: ObservableSet,
    pub verdicts: BTreeMap<String, VerdictPair>,
}

impl Counterexample {
    pub fn instance(&self) -> Result<Instance> {
        Ok(Instance {
            plant: format::parse(&self.plant)?,
            spec: format::parse(&self.spec)?,
            observable: self.observable.clone(),
        })
    }
}

/// Re-run the claim on a stored counterexample: it must still fail, with the
/// same verdicts.
pub fn replay(claim: Claim, cx: &Counterexample, mode: IccMode) -> Result<bool> {
    let ev = evaluate(claim, &cx.instance()?, mode)?;
    Ok(ev.outcome == Outcome::Fail
        && ev.verdicts == cx.verdicts
        && ev.observable == cx.observable)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicationConfig {
    pub claims: Vec<Claim>,
    pub trials: usize,
    pub seed: u64,
    pub mode: IccMode,
    pub instances: InstanceConfig,
    /// Failures recorded (and minimized) per claim.
    pub max_counterexamples: usize,
}

impl Default for ReplicationConfig {
    fn default() -> Self {
        Self {
            claims: Claim::ALL.to_vec(),
            trials: 100,
            seed: 0,
            mode: IccMode::Literal,
            instances: InstanceConfig::default(),
            max_counterexamples: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplicationReport {
    pub claim: Claim,
    pub statement: &'static str,
    pub trials: usize,
    pub holds: usize,
    pub fails: usize,
    pub skipped: usize,
    pub oracle_disagreements: usize,
    pub counterexamples: Vec<Counterexample>,
    pub seed: u64,
    pub mode: IccMode,
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    // splitmix64 finalizer over (seed, trial)
    let mut z = seed ^ (trial as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn size(g: &Generator) -> (usize, usize, usize) {
    (g.state_count(), g.transition_count(), g.marked().len())
}

fn shrink_candidates(g: &Generator) -> Vec<Generator> {
    let mut out = Vec::new();
    let q0 = g.initial().unwrap_or(0);
    for q in (0..g.state_count()).filter(|&q| q != q0) {
        let mut keep = vec![true; g.state_count()];
        keep[q] = false;
        out.push(g.restrict(&keep));
    }
    for (q, ev, _) in g.transitions() {
        let mut h = g.clone();
        h.remove_transition(q, ev);
        out.push(h);
    }
    for &q in g.marked() {
        let mut h = g.clone();
        h.set_marked(q, false);
        out.push(h);
    }
    out.into_iter()
        .map(|h| trim(&h).with_name(g.name()))
        .filter(|h| !h.is_empty() && size(h) < size(g))
        .collect()
}

/// Greedy deletion of states, then transitions, then markings, keeping a
/// candidate only while the claim still fails on it.
fn shrink(claim: Claim, mut inst: Instance, mut ev: Evaluation, mode: IccMode) -> Result<(Instance, Evaluation)> {
    'outer: loop {
        for plant in shrink_candidates(&inst.plant) {
            let cand = Instance {
                plant,
                ..inst.clone()
            };
            let cev = evaluate(claim, &cand, mode)?;
            if cev.outcome == Outcome::Fail {
                inst = cand;
                ev = cev;
                continue 'outer;
            }
        }
        return Ok((inst, ev));
    }
}

/// Run every claim on `injected` instances first, then on `cfg.trials`
/// random ones. Trial `i` draws its instance from a seed derived from
/// `(cfg.seed, i)`; all claims see the same instance.
pub fn replicate(cfg: &ReplicationConfig, injected: &[Instance]) -> Result<Vec<ReplicationReport>> {
    let mut claims = cfg.claims.clone();
    claims.sort();
    claims.dedup();
    let mut reports: Vec<ReplicationReport> = claims
        .iter()
        .map(|&claim| ReplicationReport {
            claim,
            statement: claim.statement(),
            trials: 0,
            holds: 0,
            fails: 0,
            skipped: 0,
            oracle_disagreements: 0,
            counterexamples: Vec::new(),
            seed: cfg.seed,
            mode: cfg.mode,
        })
        .collect();
    let random = (0..cfg.trials).map(|i| {
        let inst = random_instance(&cfg.instances.with_seed(trial_seed(cfg.seed, i)));
        (Some(i), inst)
    });
    let all = injected.iter().map(|inst| (None, inst.clone())).chain(random);
    for (trial, inst) in all {
        for report in reports.iter_mut() {
            let ev = evaluate(report.claim, &inst, cfg.mode)?;
            report.trials += 1;
            if !ev.mismatches.is_empty() {
                report.oracle_disagreements += 1;
            }
            match ev.outcome {
                Outcome::Hold => report.holds += 1,
                Outcome::Skip => report.skipped += 1,
                Outcome::Fail => {
                    report.fails += 1;
                    if report.counterexamples.len() < cfg.max_counterexamples {
                        let original_size = (inst.plant.state_count(), inst.plant.transition_count());
                        let (small, ev) = shrink(report.claim, inst.clone(), ev, cfg.mode)?;
                        report.counterexamples.push(Counterexample {
                            trial,
                            original_size,
                            plant: format::to_text(&small.plant),
                            spec: format::to_text(&small.spec),
                            observable: ev.observable,
                            verdicts: ev.verdicts,
                        });
                    }
                }
            }
        }
    }
    Ok(reports)
}
