//! Reference semantics by brute force, the random instance generator, and
//! the canonical fixtures.
//!
//! The brute-force routines are exact only on acyclic generators; callers
//! that need ground truth restrict themselves to those.

mod brute;
mod enumerate;
pub mod fixtures;
mod random;

pub use brute::{
    brute_check, brute_decentralized, brute_lemma1, brute_lift_into, brute_monolithic,
    brute_supc_lang, brute_supcon, spec_accepts, BruteProperty,
};
pub use enumerate::{enumerate, longest_path, prefix_closure, project_word, shortlex, LanguageSample};
pub use random::{random_generator, random_instance, Instance, InstanceConfig};
