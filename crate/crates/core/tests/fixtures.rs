//! The fixture files shipped in `fixtures/` and the verdicts pinned on them.

use std::path::PathBuf;

use sctk::oracle::{brute_check, brute_monolithic, fixtures, BruteProperty};
use sctk::{
    check_gcc, check_observer, check_occ, format, supcon, IccMode, IccViolation, LanguageKind,
    ObservableSet, Witness,
};

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.des"))
}

fn obs(labels: &[&str]) -> ObservableSet {
    ObservableSet::new(labels.iter().copied())
}

#[test]
fn files_match_builtin_fixtures() {
    for g in fixtures::all() {
        let text = std::fs::read_to_string(fixture_path(g.name())).unwrap();
        assert_eq!(format::parse(&text).unwrap(), g, "{}", g.name());
        assert_eq!(format::to_text(&g), text, "{} is not canonical", g.name());
    }
}

#[test]
fn twopath_is_gcc() {
    let g = fixtures::two_path();
    let s = obs(&["c"]);
    assert!(check_gcc(&g, &s, IccMode::Literal).unwrap().0);
    assert!(brute_check(&g, &s, BruteProperty::Gcc(IccMode::Literal)).unwrap().0);
}

#[test]
fn clash_is_not_gcc() {
    let g = fixtures::clash();
    let s = obs(&["c"]);
    let (holds, witness) = check_gcc(&g, &s, IccMode::Literal).unwrap();
    assert!(!holds);
    let Some(Witness::StatePair { states, strings, .. }) = witness else {
        panic!("expected a state pair");
    };
    assert_eq!(states, (0, 1));
    assert_eq!(strings, (vec![], vec!["a".to_string()]));
    assert!(!brute_check(&g, &s, BruteProperty::Gcc(IccMode::Literal)).unwrap().0);
}

#[test]
fn taint_is_not_occ() {
    let g = fixtures::taint();
    let s = obs(&["u"]);
    assert!(!check_occ(&g, &s).unwrap().0);
    assert!(!brute_check(&g, &s, BruteProperty::Occ).unwrap().0);
}

#[test]
fn obs_a_observer_but_not_gcc() {
    let g = fixtures::obs_a();
    let s = obs(&["b"]);
    assert!(check_observer(&g, &s, LanguageKind::Marked).unwrap().0);
    assert!(brute_check(&g, &s, BruteProperty::ObserverMarked).unwrap().0);
    let (holds, witness) = check_gcc(&g, &s, IccMode::Literal).unwrap();
    assert!(!holds);
    let Some(Witness::StatePair { violation, .. }) = witness else {
        panic!("expected a state pair");
    };
    assert_eq!(violation, IccViolation::BothMarked);
    assert!(!brute_check(&g, &s, BruteProperty::Gcc(IccMode::Literal)).unwrap().0);
}

#[test]
fn obs_b_not_observer() {
    let g = fixtures::obs_b();
    let s = obs(&["b"]);
    assert!(!check_observer(&g, &s, LanguageKind::Marked).unwrap().0);
    assert!(!brute_check(&g, &s, BruteProperty::ObserverMarked).unwrap().0);
}

#[test]
fn supc_with_spec_c_is_empty() {
    let r = supcon(&fixtures::supc(), &fixtures::spec_c()).unwrap();
    assert!(r.empty);
    assert!(brute_monolithic(&fixtures::supc(), &fixtures::spec_c()).unwrap().is_empty());
}
