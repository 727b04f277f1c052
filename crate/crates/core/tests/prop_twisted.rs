use std::collections::BTreeSet;

use num_complex::Complex;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strata::twisted::{
    solve_residues, zr_grc_check, AxiomViolation, DualGraph, Edge, GrcViolation, TwistedConfig, Vertex,
};
use strata::{q, Rational};

/// A compact-type tree with distinct levels. Each node has order `e ≥ 0` at
/// its upper branch and `-2 - e` at its lower one; no marking is a simple
/// pole, and every marked pole is zeroed.
fn tree(seed: u64) -> TwistedConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'retry: loop {
        let v = rng.gen_range(1..=5);
        let mut levels: Vec<i64> = (0..v as i64).collect();
        levels.shuffle(&mut rng);
        let mut edges = Vec::new();
        let mut orders = Vec::new();
        let mut node_sum = vec![0i64; v];
        for c in 1..v {
            let p = rng.gen_range(0..c);
            let e = rng.gen_range(0..=2);
            let (hi, lo) = if levels[p] > levels[c] { (p, c) } else { (c, p) };
            edges.push(Edge { ends: [hi, lo] });
            orders.push([e, -2 - e]);
            node_sum[hi] += e;
            node_sum[lo] += -2 - e;
        }
        let mut vertices = Vec::new();
        let mut kappa = Vec::new();
        for sum in &node_sum {
            let genus = rng.gen_range(0..=1u32);
            let mut left = 2 * genus as i64 - 2 - sum;
            let mut markings = Vec::new();
            for _ in 1..rng.gen_range(1..=2) {
                let k = *[-3i64, -2, 0, 1, 2].choose(&mut rng).unwrap();
                kappa.push(k);
                markings.push(kappa.len() as u32);
                left -= k;
            }
            if left == -1 {
                continue 'retry;
            }
            kappa.push(left);
            markings.push(kappa.len() as u32);
            vertices.push(Vertex { genus, markings });
        }
        let zeroed: Vec<u32> = (1..=kappa.len() as u32).filter(|&i| kappa[i as usize - 1] <= -2).collect();
        let graph = DualGraph::new(vertices, edges).unwrap();
        return TwistedConfig::new(graph, kappa, orders)
            .unwrap()
            .with_levels(levels.into_iter().map(q).collect())
            .unwrap()
            .with_zeroed(zeroed)
            .unwrap();
    }
}

/// Residues in `-2..=2` at a random set of poles.
fn with_residues(mut cfg: TwistedConfig, seed: u64) -> TwistedConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for at in cfg.places() {
        if cfg.order(at).is_some_and(|o| o < 0) && rng.gen_bool(0.5) {
            cfg.set_residue(at, Complex::new(q(rng.gen_range(-2..=2)), q(0))).unwrap();
        }
    }
    cfg
}

fn without_levels(v: &[GrcViolation]) -> Vec<GrcViolation> {
    v.iter()
        .cloned()
        .map(|x| match x {
            GrcViolation::Global { component, sum, .. } => GrcViolation::Global { level: q(0), component, sum },
            x => x,
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_trees_satisfy_the_axioms(seed in any::<u64>()) {
        let cfg = tree(seed);
        prop_assert!(cfg.validate().is_empty());
        prop_assert!(cfg.check_levels().is_ok());
    }

    #[test]
    fn zeroed_compact_type_forces_zero_residues(seed in any::<u64>()) {
        let cfg = tree(seed);
        let sol = solve_residues(&cfg).unwrap();
        prop_assert!(sol.solvable);
        prop_assert!(sol.second_kind);
        prop_assert!(sol.solution.iter().all(|p| p.value == q(0)));
        prop_assert!(zr_grc_check(&cfg).unwrap().ok());
    }

    #[test]
    fn grc_ignores_order_preserving_relevelling(seed in any::<u64>(), gaps in prop::collection::vec((1i64..=5, 1i64..=3), 5)) {
        let cfg = with_residues(tree(seed), seed ^ 0x5eed);
        // level k goes to the k-th partial sum of positive rationals
        let mut image = vec![q(-7)];
        for &(a, b) in &gaps {
            let next = image.last().unwrap() + Rational::new(a.into(), b.into());
            image.push(next);
        }
        let levels: Vec<Rational> = cfg.levels.iter().map(|l| {
            let k: usize = l.to_integer().try_into().unwrap();
            image[k].clone()
        }).collect();
        let moved = cfg.clone().with_levels(levels).unwrap();
        let before = zr_grc_check(&cfg).unwrap();
        let after = zr_grc_check(&moved).unwrap();
        prop_assert_eq!(without_levels(&before.violations), without_levels(&after.violations));
    }

    #[test]
    fn shifting_one_marking_breaks_only_the_degree(seed in any::<u64>(), pick in any::<prop::sample::Index>(), up in any::<bool>()) {
        let cfg = tree(seed);
        let i = pick.index(cfg.kappa.len());
        let mut kappa = cfg.kappa.clone();
        kappa[i] += if up { 1 } else { -1 };
        let broken = TwistedConfig::new(cfg.graph.clone(), kappa, cfg.edge_orders.clone()).unwrap();
        let v = broken.validate();
        let vertex = cfg.graph.vertex_of(i as u32 + 1).unwrap();
        prop_assert_eq!(v.len(), 1);
        let is_degree_at_vertex = matches!(v[0], AxiomViolation::Degree { vertex: x, .. } if x == vertex);
        prop_assert!(is_degree_at_vertex);
    }

    #[test]
    fn shifting_one_branch_breaks_degree_and_node(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let cfg = tree(seed);
        prop_assume!(!cfg.edge_orders.is_empty());
        let e = pick.index(cfg.edge_orders.len());
        let mut orders = cfg.edge_orders.clone();
        orders[e][0] += 1;
        let broken = TwistedConfig::new(cfg.graph.clone(), cfg.kappa.clone(), orders).unwrap();
        let axioms: BTreeSet<u8> = broken.validate().iter().map(AxiomViolation::axiom).collect();
        prop_assert_eq!(axioms, BTreeSet::from([1, 2]));
    }
}

#[test]
fn free_places_are_poles() {
    for seed in 0..50 {
        let cfg = tree(seed);
        for at in cfg.free_poles() {
            assert!(cfg.order(at).unwrap() < 0, "{at:?}");
        }
    }
}
