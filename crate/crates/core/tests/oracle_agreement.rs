//! The automaton constructions against literal string-level evaluation on
//! seeded random acyclic instances.

use std::collections::BTreeSet;

use sctk::oracle::{
    brute_check, brute_decentralized, brute_monolithic, brute_supcon, enumerate, longest_path,
    project_word, random_instance, BruteProperty, Instance, InstanceConfig,
};
use sctk::{
    check_gcc, check_observer, check_occ, decentralized_supcon, monolithic_supcon, project, supcon,
    IccMode, LanguageKind, ObservableSet, Word,
};

const INSTANCES: u64 = 200;

fn instances(offset: u64) -> impl Iterator<Item = Instance> {
    let base = InstanceConfig::default();
    (0..INSTANCES).map(move |i| random_instance(&base.with_seed(offset + i)))
}

fn marked(g: &sctk::Generator) -> BTreeSet<Word> {
    let bound = longest_path(g).expect("acyclic");
    enumerate(g, LanguageKind::Marked, bound).strings
}

#[test]
fn supcon_matches_brute_force() {
    for (i, inst) in instances(1_000).enumerate() {
        let bound = longest_path(&inst.plant).unwrap();
        let expected = brute_supcon(&inst.plant, &inst.spec, bound);
        assert!(expected.exact);
        let got = supcon(&inst.plant, &inst.spec).unwrap();
        assert_eq!(marked(&got.supervisor), expected.strings, "instance {i}");
        assert_eq!(got.empty, expected.strings.is_empty(), "instance {i}");
    }
}

#[test]
fn projection_matches_projected_strings() {
    for (i, inst) in instances(2_000).enumerate() {
        let p = project(&inst.plant, &inst.observable);
        for which in [LanguageKind::Closed, LanguageKind::Marked] {
            let direct: BTreeSet<Word> = enumerate(&inst.plant, which, 8)
                .strings
                .iter()
                .map(|w| project_word(w, &inst.observable))
                .collect();
            assert_eq!(enumerate(&p, which, 8).strings, direct, "instance {i} {which:?}");
        }
    }
}

#[test]
fn projection_of_cyclic_plants_contains_projected_strings() {
    // Cutting G at depth 8 loses strings whose projection is short, so only
    // one direction survives truncation.
    let base = InstanceConfig {
        acyclic_only: false,
        ..InstanceConfig::default()
    };
    for i in 0..INSTANCES {
        let inst = random_instance(&base.with_seed(2_500 + i));
        let p = project(&inst.plant, &inst.observable);
        for which in [LanguageKind::Closed, LanguageKind::Marked] {
            let sample = enumerate(&p, which, 8).strings;
            for w in enumerate(&inst.plant, which, 8).strings {
                let pw = project_word(&w, &inst.observable);
                assert!(sample.contains(&pw), "instance {i} {which:?}");
            }
            for w in &sample {
                assert!(match which {
                    LanguageKind::Closed => p.in_closed(w),
                    LanguageKind::Marked => p.in_marked(w),
                });
            }
        }
    }
}

#[test]
fn checkers_match_brute_force() {
    for (i, inst) in instances(3_000).enumerate() {
        let (g, s) = (&inst.plant, &inst.observable);
        let pairs = [
            (check_gcc(g, s, IccMode::Literal), BruteProperty::Gcc(IccMode::Literal)),
            (check_gcc(g, s, IccMode::Agreement), BruteProperty::Gcc(IccMode::Agreement)),
            (check_occ(g, s), BruteProperty::Occ),
            (check_observer(g, s, LanguageKind::Marked), BruteProperty::ObserverMarked),
            (check_observer(g, s, LanguageKind::Closed), BruteProperty::ObserverClosed),
        ];
        for (got, property) in pairs {
            let (holds, witness) = got.unwrap();
            let (expected, _) = brute_check(g, s, property).unwrap();
            assert_eq!(holds, expected, "instance {i} {property:?}");
            assert_eq!(witness.is_some(), !holds, "instance {i} {property:?}");
        }
    }
}

#[test]
fn pipelines_match_brute_force() {
    let mut compared = 0;
    for (i, inst) in instances(4_000).enumerate() {
        let (g, s) = (&inst.plant, &inst.observable);
        let k = monolithic_supcon(g, &inst.spec, s).unwrap();
        assert_eq!(marked(&k.supervisor), brute_monolithic(g, &inst.spec).unwrap(), "instance {i}");
        if !check_gcc(g, s, IccMode::Literal).unwrap().0 {
            continue;
        }
        compared += 1;
        let k0 = decentralized_supcon(g, &inst.spec, s, IccMode::Literal).unwrap();
        assert_eq!(
            marked(&k0.supervisor),
            brute_decentralized(g, &inst.spec, s).unwrap(),
            "instance {i}"
        );
    }
    assert!(compared > 20, "only {compared} GCC instances");
}

#[test]
fn full_observation_brute_force_is_trivially_consistent() {
    for inst in instances(5_000).take(50) {
        let all = ObservableSet::all(inst.plant.alphabet());
        assert!(brute_check(&inst.plant, &all, BruteProperty::Gcc(IccMode::Literal)).unwrap().0);
        assert!(brute_check(&inst.plant, &all, BruteProperty::ObserverMarked).unwrap().0);
    }
}
