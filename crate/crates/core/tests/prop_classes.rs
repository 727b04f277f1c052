use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strata::curves::{enumerate_fcurves, pair_fcurve};
use strata::picard::{
    full_mask, generators, keel_graph_class, members, normal_form, relation_classes, EdgeLabeledGraph,
};
use strata::{q, BoundaryIndex, Class, HypothesisVerdict, Partition, PicardSpace, RamificationProfile, Signature};

fn signature() -> impl Strategy<Value = Signature> {
    (0u32..=2, prop::collection::vec(-4i64..=4, 1..6)).prop_filter_map("degree", |(g, mut v)| {
        let last = 2 * g as i64 - 2 - v.iter().sum::<i64>();
        if !(-6..=8).contains(&last) {
            return None;
        }
        v.push(last);
        Signature::new(g, v).ok()
    })
}

fn partition(d: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=d, 1..=d as usize).prop_map(move |v| {
        let mut parts = Vec::new();
        let mut left = d;
        for x in v {
            if left == 0 {
                break;
            }
            let x = x.min(left);
            parts.push(x);
            left -= x;
        }
        parts.extend(std::iter::repeat_n(1, left as usize));
        Partition::new(parts)
    })
}

fn profile() -> impl Strategy<Value = RamificationProfile> {
    (2u32..=6)
        .prop_flat_map(|d| (Just(d), prop::collection::vec(partition(d), 1..6)))
        .prop_filter_map("parity", |(d, parts)| RamificationProfile::new(d, parts).ok())
}

/// `(g, n)` with a nonempty Picard group and few generators.
fn space() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![(Just(0u32), 4u32..=6), (Just(1u32), 1u32..=3), (Just(2u32), 1u32..=2)]
}

fn class_in(g: u32, n: u32) -> impl Strategy<Value = Class> {
    let len = generators(g, n).len();
    prop::collection::vec(-3i64..=3, len).prop_map(move |v| {
        Class::from_vec(g, n, &v.into_iter().map(q).collect::<Vec<_>>())
    })
}

fn class() -> impl Strategy<Value = Class> {
    space().prop_flat_map(|(g, n)| class_in(g, n))
}

fn pair_of_classes() -> impl Strategy<Value = (Class, Class, i64)> {
    space().prop_flat_map(|(g, n)| (class_in(g, n), class_in(g, n), -3i64..=3))
}

fn graph(n: u32) -> impl Strategy<Value = EdgeLabeledGraph<strata::Rational>> {
    let edges = (n * (n - 1) / 2) as usize;
    prop::collection::vec(-2i64..=2, edges).prop_map(move |v| {
        let mut it = v.into_iter();
        EdgeLabeledGraph::from_fn(n, |_, _| q(it.next().unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn profile_genus_matches_signature(sig in signature()) {
        if let Ok(profile) = sig.ramification_profile() {
            prop_assert_eq!(profile.genus().unwrap(), sig.genus());
        }
    }

    #[test]
    fn emptiness_ignores_entry_order(sig in signature(), seed in any::<u64>()) {
        let mut entries = sig.entries().to_vec();
        entries.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let shuffled = Signature::new(sig.genus(), entries).unwrap();
        prop_assert_eq!(shuffled.zero_residue_empty(), sig.zero_residue_empty());
    }

    #[test]
    fn applicable_hypotheses_need_one_non_pure_part(profile in profile(), g in 0u32..=2) {
        if profile.theorem_hypothesis(g) != HypothesisVerdict::NotCovered {
            prop_assert!(profile.non_pure_count() <= 1);
        }
    }

    #[test]
    fn boundary_labels_are_complement_invariant((g, n) in space(), i in 0u32..=2, mask in 0u32..64) {
        let mask = mask & full_mask(n);
        let left = BoundaryIndex::new(g, n, i, &members(mask));
        let right = BoundaryIndex::new(g, n, g.wrapping_sub(i), &members(full_mask(n) & !mask));
        match (left, right) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
        }
    }

    #[test]
    fn normal_form_is_idempotent(c in class()) {
        let nf = normal_form(&c);
        prop_assert_eq!(normal_form(&nf), nf);
    }

    #[test]
    fn normal_form_is_linear((a, b, t) in pair_of_classes()) {
        let lhs = normal_form(&(a.clone() + b.scale(&q(t))));
        let rhs = normal_form(&a) + normal_form(&b).scale(&q(t));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn relations_vanish_in_normal_form((g, n) in space(), pick in any::<prop::sample::Index>()) {
        let rels = relation_classes::<strata::Rational>(g, n);
        if !rels.is_empty() {
            prop_assert!(normal_form(&rels[pick.index(rels.len())]).is_zero());
        }
    }

    #[test]
    fn keel_class_is_linear((a, b) in (4u32..=6).prop_flat_map(|n| (graph(n), graph(n))), t in -3i64..=3) {
        let mut sum = EdgeLabeledGraph::new(a.markings());
        for i in 1..=a.markings() {
            for j in i + 1..=a.markings() {
                sum.set(i, j, a.edge(i, j) + b.edge(i, j) * q(t));
            }
        }
        prop_assert_eq!(keel_graph_class(&sum), keel_graph_class(&a) + keel_graph_class(&b).scale(&q(t)));
    }

    #[test]
    fn keel_classes_are_trivial(gr in (4u32..=6).prop_flat_map(graph)) {
        let c = keel_graph_class(&gr);
        prop_assert!(PicardSpace::<strata::Rational>::new(0, gr.markings()).is_trivial(&c).unwrap());
        for f in enumerate_fcurves(gr.markings()) {
            prop_assert_eq!(pair_fcurve(&c, &f).unwrap(), q(0));
        }
    }

    #[test]
    fn equal_classes_pair_equally(c in (4u32..=6).prop_flat_map(|n| class_in(0, n)), t in -2i64..=2, seed in any::<u64>()) {
        let n = c.markings();
        let rels = relation_classes::<strata::Rational>(0, n);
        let r = rels.choose(&mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let shifted = c.clone() + r.scale(&q(t));
        prop_assert!(strata::picard::equals_mod_relations(&c, &shifted).unwrap());
        for f in enumerate_fcurves(n) {
            prop_assert_eq!(pair_fcurve(&c, &f).unwrap(), pair_fcurve(&shifted, &f).unwrap());
        }
    }
}
