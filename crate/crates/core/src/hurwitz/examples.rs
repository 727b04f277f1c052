use serde::{Deserialize, Serialize};

use super::perm::Perm;
use super::tuple::MonodromyTuple;
use crate::signature::HypothesisVerdict;

/// A reference monodromy tuple with its claimed invariants next to the
/// computed ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceExample {
    pub name: String,
    pub cycles: Vec<String>,
    pub tuple: MonodromyTuple,
    pub claimed_degree: usize,
    pub claimed_genus: u32,
    /// Number of letters the permutations move.
    pub support: usize,
    pub computed_genus: Option<u32>,
    pub product_is_identity: bool,
    pub transitive: bool,
    pub at_most_one_non_pure: bool,
    pub verdict: Option<HypothesisVerdict>,
    pub discrepancy: Option<String>,
}

fn build(name: &str, cycles: &[&str], claimed_degree: usize, claimed_genus: u32) -> ReferenceExample {
    let support = cycles.iter().map(|c| Perm::support_size(c)).max().unwrap_or(0);
    let tuple = MonodromyTuple::parse(support, cycles).expect("fixture parses");
    let computed_genus = tuple.genus().ok();
    let profile = tuple.profile().ok();
    let verdict = match (&profile, computed_genus) {
        (Some(p), Some(g)) => Some(p.theorem_hypothesis(g)),
        _ => None,
    };
    let mut notes = Vec::new();
    if support != claimed_degree {
        notes.push(format!("permutations move {support} letters but the stated degree is {claimed_degree}"));
    }
    if computed_genus != Some(claimed_genus) {
        notes.push(format!("computed genus {computed_genus:?}, stated {claimed_genus}"));
    }
    ReferenceExample {
        name: name.to_string(),
        cycles: cycles.iter().map(|c| c.to_string()).collect(),
        product_is_identity: tuple.product().is_identity(),
        transitive: tuple.is_transitive(),
        at_most_one_non_pure: profile.as_ref().is_some_and(|p| p.non_pure_count() <= 1),
        tuple,
        claimed_degree,
        claimed_genus,
        support,
        computed_genus,
        verdict,
        discrepancy: (!notes.is_empty()).then(|| notes.join("; ")),
    }
}

/// The two reference tuples: a genus one cover with ten branch points and a
/// genus zero cover of degree five.
pub fn reference_examples() -> Vec<ReferenceExample> {
    vec![
        build(
            "genus-one",
            &["(12)(34)", "(456)", "(12)", "(13)", "(13)", "(14)", "(14)", "(35)", "(45)", "(56)"],
            5,
            1,
        ),
        build("genus-zero", &["(12)(34)", "(135)", "(132)", "(34)", "(45)"], 5, 0),
    ]
}
