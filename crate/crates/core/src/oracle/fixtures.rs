//! Canonical small plants used throughout the tests and shipped as files
//! under `fixtures/`.

use crate::alphabet::{Alphabet, EventAttr};
use crate::generator::Generator;

fn build(
    name: &str,
    events: Vec<EventAttr>,
    states: usize,
    marked: &[usize],
    transitions: &[(usize, &str, usize)],
) -> Generator {
    let alphabet = Alphabet::new(events).expect("fixture alphabet");
    Generator::new(
        name,
        alphabet,
        states,
        0,
        marked.iter().copied(),
        transitions.iter().copied(),
    )
    .expect("fixture generator")
}

/// `0 -a-> 1`, `0 -c-> 2`, marked {1, 2}; `a` uncontrollable, `c` controllable.
pub fn two_path() -> Generator {
    build(
        "twopath",
        vec![EventAttr::uncontrollable("a"), EventAttr::controllable("c")],
        3,
        &[1, 2],
        &[(0, "a", 1), (0, "c", 2)],
    )
}

/// [`two_path`] plus `1 -c-> 2`.
pub fn clash() -> Generator {
    build(
        "clash",
        vec![EventAttr::uncontrollable("a"), EventAttr::controllable("c")],
        3,
        &[1, 2],
        &[(0, "a", 1), (0, "c", 2), (1, "c", 2)],
    )
}

/// `0 -c-> 1 -u-> 2`, marked {2}.
pub fn taint() -> Generator {
    build(
        "taint",
        vec![EventAttr::controllable("c"), EventAttr::uncontrollable("u")],
        3,
        &[2],
        &[(0, "c", 1), (1, "u", 2)],
    )
}

/// `0 -a-> 1 -b-> 2`, `0 -b-> 3`, marked {2, 3}; all uncontrollable.
pub fn obs_a() -> Generator {
    build(
        "obs_a",
        vec![EventAttr::uncontrollable("a"), EventAttr::uncontrollable("b")],
        4,
        &[2, 3],
        &[(0, "a", 1), (1, "b", 2), (0, "b", 3)],
    )
}

/// `0 -a-> 1`, `0 -b-> 3`, marked {1, 3}; all uncontrollable.
pub fn obs_b() -> Generator {
    build(
        "obs_b",
        vec![EventAttr::uncontrollable("a"), EventAttr::uncontrollable("b")],
        4,
        &[1, 3],
        &[(0, "a", 1), (0, "b", 3)],
    )
}

/// `0 -u-> 1`, `0 -c-> 2`, marked {1, 2}.
pub fn supc() -> Generator {
    build(
        "supc",
        vec![EventAttr::uncontrollable("u"), EventAttr::controllable("c")],
        3,
        &[1, 2],
        &[(0, "u", 1), (0, "c", 2)],
    )
}

/// Recognizer of `{c}` over `{c}`, a specification for [`two_path`] observed
/// through `{c}`.
pub fn spec_c() -> Generator {
    build(
        "spec_c",
        vec![EventAttr::controllable("c")],
        2,
        &[1],
        &[(0, "c", 1)],
    )
}

pub fn all() -> Vec<Generator> {
    vec![two_path(), clash(), taint(), obs_a(), obs_b(), supc(), spec_c()]
}
