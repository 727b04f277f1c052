use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::atomic::{AtomicBool, Ordering};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::perm::Perm;
use super::tuple::MonodromyTuple;
use super::HurwitzError;
use crate::signature::{Partition, RamificationProfile};

/// Size limits for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guard {
    pub max_degree: usize,
    pub max_points: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Guard { max_degree: 6, max_points: 10 }
    }
}

impl Guard {
    fn check(&self, profile: &RamificationProfile) -> Result<(), HurwitzError> {
        let d = profile.degree() as usize;
        let s = profile.branch_points();
        if d > self.max_degree || s > self.max_points || d == 0 || d > u8::MAX as usize {
            return Err(HurwitzError::InstanceTooLarge { degree: d, points: s, guard: *self });
        }
        Ok(())
    }
}

/// Calls `each` on the tuples with cycle types `types` in this order whose
/// product is the identity, transitive or not, until it returns `false`.
/// With `first_fixed`, the first entry runs over a single representative of
/// its class, which still meets every conjugacy class of tuples.
fn tuples_in_order(d: usize, types: &[Partition], first_fixed: bool, each: &(dyn Fn(MonodromyTuple) -> bool + Sync)) {
    let s = types.len();
    let last = types[s - 1].padded(d as u32);
    if s == 1 {
        if last == Partition::new(vec![1; d]) {
            each(MonodromyTuple { d, perms: vec![Perm::identity(d)] });
        }
        return;
    }
    let mut classes: Vec<Vec<Perm>> = types[..s - 1].iter().map(|t| Perm::with_cycle_type(d, t)).collect();
    if first_fixed {
        classes[0].truncate(1);
    }
    let stop = AtomicBool::new(false);
    struct Ctx<'a> {
        d: usize,
        classes: &'a [Vec<Perm>],
        last: &'a Partition,
        stop: &'a AtomicBool,
        each: &'a (dyn Fn(MonodromyTuple) -> bool + Sync),
    }
    fn rec(ctx: &Ctx, prefix: &mut Vec<Perm>, acc: Perm) {
        if ctx.stop.load(Ordering::Relaxed) {
            return;
        }
        let k = prefix.len();
        if k == ctx.classes.len() {
            let closing = acc.inverse();
            if &closing.cycle_type() == ctx.last {
                let mut perms = prefix.clone();
                perms.push(closing);
                if !(ctx.each)(MonodromyTuple { d: ctx.d, perms }) {
                    ctx.stop.store(true, Ordering::Relaxed);
                }
            }
            return;
        }
        for p in &ctx.classes[k] {
            let next = acc.then(p);
            prefix.push(p.clone());
            rec(ctx, prefix, next);
            prefix.pop();
        }
    }
    let ctx = Ctx { d, classes: &classes, last: &last, stop: &stop, each };
    let seeds: Vec<(usize, usize)> = if classes.len() >= 2 {
        (0..classes[0].len()).cartesian_product(0..classes[1].len()).collect()
    } else {
        (0..classes[0].len()).map(|i| (i, usize::MAX)).collect()
    };
    seeds.par_iter().for_each(|&(i, j)| {
        let a = classes[0][i].clone();
        let mut prefix = vec![a.clone()];
        if j == usize::MAX {
            rec(&ctx, &mut prefix, a);
        } else {
            let b = classes[1][j].clone();
            let acc = a.then(&b);
            prefix.push(b);
            rec(&ctx, &mut prefix, acc);
        }
    });
}

fn collect_in_order(d: usize, types: &[Partition]) -> Vec<MonodromyTuple> {
    let found = std::sync::Mutex::new(Vec::new());
    tuples_in_order(d, types, false, &|t| {
        if t.is_transitive() {
            found.lock().expect("collector").push(t);
        }
        true
    });
    let mut out = found.into_inner().expect("collector");
    out.sort();
    out
}

/// All transitive tuples with product one realising the profile, over every
/// distinct ordering of its partitions. Sorted.
pub fn enumerate_tuples(profile: &RamificationProfile, guard: Guard) -> Result<Vec<MonodromyTuple>, HurwitzError> {
    guard.check(profile)?;
    let d = profile.degree() as usize;
    let orderings: BTreeSet<Vec<Partition>> =
        profile.parts().iter().cloned().permutations(profile.branch_points()).collect();
    let mut out: Vec<MonodromyTuple> = orderings.iter().flat_map(|o| collect_in_order(d, o)).collect();
    out.sort();
    Ok(out)
}

/// Canonical forms of the conjugacy classes of tuples with cycle types in
/// the profile's own order.
pub fn conjugacy_classes(profile: &RamificationProfile, guard: Guard) -> Result<BTreeSet<MonodromyTuple>, HurwitzError> {
    guard.check(profile)?;
    let d = profile.degree() as usize;
    Ok(collect_in_order(d, profile.parts()).into_par_iter().map(|t| t.canonical()).collect::<Vec<_>>().into_iter().collect())
}

/// Number of conjugacy classes of monodromy representations with the `i`-th
/// branch point of cycle type `profile.parts()[i]`.
pub fn hurwitz_number(profile: &RamificationProfile, guard: Guard) -> Result<usize, HurwitzError> {
    Ok(conjugacy_classes(profile, guard)?.len())
}

/// Whether some transitive tuple realises the profile. Stops at the first
/// one found, so it reaches larger degrees than full enumeration.
pub fn exists_tuple(profile: &RamificationProfile, guard: Guard) -> Result<bool, HurwitzError> {
    guard.check(profile)?;
    let d = profile.degree() as usize;
    let types = profile.parts();
    if types.iter().any(|t| t.parts().iter().any(|&e| e as usize > d)) {
        return Ok(false);
    }
    let found = AtomicBool::new(false);
    // the largest class goes last, where the closing entry is forced
    let mut order: Vec<Partition> = types.to_vec();
    order.sort_by_key(|t| t.ramification());
    tuples_in_order(d, &order, true, &|t| {
        if t.is_transitive() {
            found.store(true, Ordering::Relaxed);
            return false;
        }
        true
    });
    Ok(found.into_inner())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// Least canonical form in the orbit.
    pub representative: MonodromyTuple,
    /// Conjugacy classes in the orbit, across all orderings of the profile.
    pub size: usize,
    /// Of those, the classes with the profile's own ordering.
    pub in_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub degree: usize,
    pub profile: Vec<Partition>,
    /// The Hurwitz number for the profile's ordering.
    pub classes: usize,
    pub orbits: Vec<Orbit>,
}

impl OrbitReport {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.size).collect()
    }
}

fn neighbours(t: &MonodromyTuple) -> Vec<MonodromyTuple> {
    let s = t.perms.len();
    (1..s)
        .flat_map(|i| [false, true].map(|inv| t.braid_move(i, inv).expect("index in range").canonical()))
        .collect()
}

/// Orbits of the braid group on conjugacy classes. Every orbit meets the
/// classes in the profile's own order, so a search started from each of
/// those finds all orbits; frontiers expand in parallel.
pub fn braid_orbits(profile: &RamificationProfile, guard: Guard) -> Result<OrbitReport, HurwitzError> {
    let classes = conjugacy_classes(profile, guard)?;
    let own: BTreeSet<&MonodromyTuple> = classes.iter().collect();
    let mut seen: HashSet<MonodromyTuple> = HashSet::new();
    let mut orbits = Vec::new();
    for start in &classes {
        if seen.contains(start) {
            continue;
        }
        let mut members: BTreeSet<MonodromyTuple> = BTreeSet::new();
        members.insert(start.clone());
        seen.insert(start.clone());
        let mut frontier = vec![start.clone()];
        while !frontier.is_empty() {
            let next: Vec<MonodromyTuple> = frontier.par_iter().flat_map_iter(neighbours).collect();
            frontier.clear();
            for t in next {
                if seen.insert(t.clone()) {
                    members.insert(t.clone());
                    frontier.push(t);
                }
            }
        }
        let in_order = members.iter().filter(|m| own.contains(m)).count();
        let representative = members.iter().next().expect("nonempty").clone();
        orbits.push(Orbit { representative, size: members.len(), in_order });
    }
    orbits.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(OrbitReport { degree: profile.degree() as usize, profile: profile.parts().to_vec(), classes: classes.len(), orbits })
}

/// Cycle-type multiset of a tuple, as counts.
pub fn cycle_type_counts(t: &MonodromyTuple) -> BTreeMap<Partition, usize> {
    let mut m = BTreeMap::new();
    for c in t.cycle_types() {
        *m.entry(c).or_insert(0) += 1;
    }
    m
}
