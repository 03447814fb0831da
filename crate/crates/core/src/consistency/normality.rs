use crate::alphabet::ObservableSet;
use crate::compare::{language_compare, LanguageKind};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::ops::{inverse_project, meet, project};
use crate::reach::trim;
use crate::synthesis::closure_escape;
use crate::witness::Witness;

/// Checks shared by normality and paranormality; returns the trimmed
/// candidate widened to the plant alphabet, whose closed language is `K̄`.
fn candidate_closure(k: &Generator, g: &Generator, s: &ObservableSet) -> Result<Generator> {
    s.validate(g.alphabet())?;
    k.alphabet().is_subset_of(g.alphabet())?;
    let kt = trim(k).widen_alphabet(g.alphabet())?;
    if let Some(w) = language_compare(&kt, g, LanguageKind::Closed).only_left {
        return Err(Error::SpecNotSublanguage(w));
    }
    Ok(kt)
}

/// `P^{-1}P(K̄) ∩ L(G) = K̄` with `K = L_m(k)`. The witness is the shortest
/// string of the left side outside `K̄`.
pub fn check_normal(
    k: &Generator,
    g: &Generator,
    s: &ObservableSet,
) -> Result<(bool, Option<Witness>)> {
    let kt = candidate_closure(k, g, s)?;
    let lifted = inverse_project(&project(&kt, s), g.alphabet())?;
    let lhs = meet(&lifted, g)?;
    let cmp = language_compare(&lhs, &kt, LanguageKind::Closed);
    Ok(match cmp.only_left {
        None => (true, None),
        Some(path) => (false, Some(Witness::Path { path })),
    })
}

/// `K̄(Σ − Σ_0) ∩ L(G) ⊆ K̄`: no unobservable event leaves `K̄`.
pub fn check_paranormal(
    k: &Generator,
    g: &Generator,
    s: &ObservableSet,
) -> Result<(bool, Option<Witness>)> {
    let kt = candidate_closure(k, g, s)?;
    Ok(match closure_escape(&kt, g, |ev| !s.contains(&ev.label)) {
        None => (true, None),
        Some((path, event)) => (false, Some(Witness::PathEvent { path, event })),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures;
    use crate::witness::word;

    fn spec_c() -> Generator {
        // recognizer of {c} declared over {a, c}
        let g = fixtures::two_path();
        Generator::from_words("k", g.alphabet().clone(), [vec!["c"]]).unwrap()
    }

    #[test]
    fn plant_is_normal_and_paranormal() {
        let g = fixtures::two_path();
        let s = ObservableSet::new(["c"]);
        assert_eq!(check_normal(&g, &g, &s).unwrap(), (true, None));
        assert_eq!(check_paranormal(&g, &g, &s).unwrap(), (true, None));
    }

    #[test]
    fn spec_c_is_not_normal() {
        let (ok, w) = check_normal(&spec_c(), &fixtures::two_path(), &ObservableSet::new(["c"]))
            .unwrap();
        assert!(!ok);
        assert_eq!(w, Some(Witness::Path { path: word(&["a"]) }));
    }

    #[test]
    fn spec_c_is_not_paranormal() {
        let (ok, w) =
            check_paranormal(&spec_c(), &fixtures::two_path(), &ObservableSet::new(["c"]))
                .unwrap();
        assert!(!ok);
        assert_eq!(
            w,
            Some(Witness::PathEvent {
                path: vec![],
                event: "a".into()
            })
        );
        let g = fixtures::two_path();
        let all = ObservableSet::all(g.alphabet());
        assert!(check_paranormal(&spec_c(), &g, &all).unwrap().0);
    }

    #[test]
    fn empty_candidate_is_normal() {
        let g = fixtures::two_path();
        let k = Generator::empty("k", g.alphabet().clone());
        assert!(check_normal(&k, &g, &ObservableSet::new(["c"])).unwrap().0);
    }

    #[test]
    fn candidate_outside_plant_is_rejected() {
        let g = fixtures::two_path();
        let k = Generator::from_words("k", g.alphabet().clone(), [vec!["c", "c"]]).unwrap();
        assert_eq!(
            check_normal(&k, &g, &ObservableSet::new(["c"])),
            Err(Error::SpecNotSublanguage(word(&["c", "c"])))
        );
    }
}
