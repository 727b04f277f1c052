mod support;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strata::flatgeom::{ChartData, ResidueForm};

fn chart() -> impl Strategy<Value = ChartData> {
    any::<u64>().prop_map(|seed| support::random_chart(&mut ChaCha8Rng::seed_from_u64(seed), 4))
}

/// Renames the saddle connection vectors by `sigma` (0-based images).
fn relabel(c: &ChartData, sigma: &[usize]) -> ChartData {
    let rename = |v: &Vec<usize>| v.iter().map(|&x| sigma[x - 1] + 1).collect();
    ChartData { pit: rename(&c.pit), pib: rename(&c.pib), ..c.clone() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn residues_sum_to_zero(c in chart()) {
        let total = c.residue_forms().unwrap().iter().fold(ResidueForm::default(), |acc, f| &acc + f);
        prop_assert!(total.is_zero(), "{c:?}: {total}");
    }

    #[test]
    fn rank_is_at_most_the_pole_count(c in chart()) {
        let rank = c.zero_residue_rank().unwrap();
        prop_assert!(rank <= c.nonsimple_poles());
        let expected = if c.simple_poles() == 0 { c.nonsimple_poles() - 1 } else { c.nonsimple_poles() };
        prop_assert_eq!(rank, expected);
    }

    #[test]
    fn relabelling_vectors_is_harmless(c in chart(), seed in any::<u64>()) {
        let mut sigma: Vec<usize> = (0..c.n).collect();
        sigma.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let r = relabel(&c, &sigma);
        prop_assert!(r.validate().is_ok());
        prop_assert_eq!(r.zero_residue_rank().unwrap(), c.zero_residue_rank().unwrap());
        for (a, b) in c.residue_forms().unwrap().iter().zip(r.residue_forms().unwrap()) {
            for (&v, &k) in &a.0 {
                prop_assert_eq!(b.coeff(sigma[v - 1] + 1), k);
            }
            prop_assert_eq!(a.0.len(), b.0.len());
        }
    }
}
