use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alphabet::{Alphabet, EventAttr, ObservableSet};
use crate::generator::Generator;
use crate::reach::{accessible, coreachable_mask, reachable_mask};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceConfig {
    pub max_states: usize,
    pub max_events: usize,
    /// Probability that a given (state, event) pair gets a transition.
    pub transition_density: f64,
    pub controllable_fraction: f64,
    pub observable_fraction: f64,
    pub acyclic_only: bool,
    /// Force every controllable event into the observable set.
    pub observe_controllable: bool,
    pub spec_max_states: usize,
    pub seed: u64,
}

impl Default for InstanceConfig {
    fn default() -> Self {
        Self {
            max_states: 6,
            max_events: 5,
            transition_density: 0.35,
            controllable_fraction: 0.5,
            observable_fraction: 0.6,
            acyclic_only: true,
            observe_controllable: true,
            spec_max_states: 4,
            seed: 0,
        }
    }
}

impl InstanceConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }
}

/// A plant, a specification over the observable events, and the observable set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub plant: Generator,
    pub spec: Generator,
    pub observable: ObservableSet,
}

const LABELS: &str = "abcdefghijklmnopqrstuvwxyz";

/// A reachable, nonblocking (hence trim) plant with a random specification.
/// Deterministic in `cfg`.
pub fn random_instance(cfg: &InstanceConfig) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n_events = rng.gen_range(1..=cfg.max_events.clamp(1, LABELS.len()));
    let events: Vec<EventAttr> = LABELS[..n_events]
        .chars()
        .map(|c| {
            let controllable = rng.gen_bool(cfg.controllable_fraction);
            EventAttr::new(c.to_string(), controllable, true)
        })
        .collect();
    let mut observable: Vec<EventAttr> = Vec::new();
    let mut events_final = Vec::new();
    for mut ev in events {
        let seen = rng.gen_bool(cfg.observable_fraction) || (cfg.observe_controllable && ev.controllable);
        ev.observable = seen;
        if seen {
            observable.push(ev.clone());
        }
        events_final.push(ev);
    }
    let alphabet = Alphabet::new(events_final).expect("generated labels are distinct");
    let obs_set = ObservableSet::new(observable.iter().map(|ev| ev.label.as_str()));

    let n = rng.gen_range(1..=cfg.max_states.max(1));
    let mut plant = Generator::new("plant", alphabet.clone(), n, 0, [], []).expect("valid size");
    for q in 0..n {
        for ev in 0..alphabet.len() {
            if !rng.gen_bool(cfg.transition_density) {
                continue;
            }
            let target = if cfg.acyclic_only {
                if q + 1 >= n {
                    continue;
                }
                rng.gen_range(q + 1..n)
            } else {
                rng.gen_range(0..n)
            };
            plant.add_transition(q, ev, target).expect("fresh transition");
        }
        if rng.gen_bool(0.4) {
            plant.set_marked(q, true);
        }
    }
    let plant = make_nonblocking(accessible(&plant), &mut rng);

    let spec_alphabet = alphabet.restrict(&obs_set);
    let m = rng.gen_range(1..=cfg.spec_max_states.max(1));
    let mut spec = Generator::new("spec", spec_alphabet.clone(), m, 0, [], []).expect("valid size");
    for q in 0..m {
        for ev in 0..spec_alphabet.len() {
            if rng.gen_bool(0.5) {
                let target = rng.gen_range(0..m);
                spec.add_transition(q, ev, target).expect("fresh transition");
            }
        }
        if rng.gen_bool(0.5) {
            spec.set_marked(q, true);
        }
    }
    if spec.marked().is_empty() {
        let q = rng.gen_range(0..m);
        spec.set_marked(q, true);
    }

    Instance {
        plant,
        spec,
        observable: obs_set,
    }
}

/// A generator over a random subset of `alphabet`'s events, unconstrained
/// otherwise: it may block, have cycles, or mark nothing.
pub fn random_generator(alphabet: &Alphabet, max_states: usize, seed: u64) -> Generator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let events: Vec<EventAttr> = alphabet
        .events()
        .iter()
        .filter(|_| rng.gen_bool(0.7))
        .cloned()
        .collect();
    let sub = Alphabet::new(events).expect("subset of a valid alphabet");
    let n = rng.gen_range(1..=max_states.max(1));
    let mut g = Generator::new("random", sub.clone(), n, 0, [], []).expect("valid size");
    for q in 0..n {
        for ev in 0..sub.len() {
            if rng.gen_bool(0.5) {
                let target = rng.gen_range(0..n);
                g.add_transition(q, ev, target).expect("fresh transition");
            }
        }
        if rng.gen_bool(0.5) {
            g.set_marked(q, true);
        }
    }
    g
}

/// Mark dead ends until every reachable state is coreachable.
fn make_nonblocking(mut g: Generator, rng: &mut ChaCha8Rng) -> Generator {
    loop {
        let reach = reachable_mask(&g);
        let coreach = coreachable_mask(&g);
        let blocked: Vec<usize> = (0..g.state_count())
            .filter(|&q| reach[q] && !coreach[q])
            .collect();
        if blocked.is_empty() {
            return g;
        }
        let dead: Vec<usize> = blocked
            .iter()
            .copied()
            .filter(|&q| g.outgoing(q).next().is_none())
            .collect();
        let pool = if dead.is_empty() { &blocked } else { &dead };
        let q = pool[rng.gen_range(0..pool.len())];
        g.set_marked(q, true);
    }
}
