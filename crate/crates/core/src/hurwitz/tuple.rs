use itertools::Itertools;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::perm::Perm;
use super::HurwitzError;
use crate::signature::{genus_from_ramification, Partition, ProfileError, RamificationProfile};

/// An ordered sequence of permutations of `1..=d`: the local monodromies
/// around the branch points of a cover of the line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonodromyTuple {
    pub d: usize,
    pub perms: Vec<Perm>,
}

impl MonodromyTuple {
    pub fn new(d: usize, perms: Vec<Perm>) -> Result<Self, HurwitzError> {
        if let Some(p) = perms.iter().find(|p| p.degree() != d) {
            return Err(HurwitzError::BadPermutation(format!("{p} is not on 1..={d}")));
        }
        Ok(MonodromyTuple { d, perms })
    }

    /// Parses a list of cycle notations, e.g. `["(12)(34)", "(135)"]`.
    pub fn parse(d: usize, perms: &[&str]) -> Result<Self, HurwitzError> {
        let perms = perms.iter().map(|p| Perm::parse(p, d)).collect::<Result<_, _>>()?;
        Self::new(d, perms)
    }

    /// Product with the leftmost factor acting first.
    pub fn product(&self) -> Perm {
        self.perms.iter().fold(Perm::identity(self.d), |acc, p| acc.then(p))
    }

    pub fn is_transitive(&self) -> bool {
        let mut uf = UnionFind::<u8>::new(self.d);
        for p in &self.perms {
            for x in 0..self.d as u8 {
                uf.union(x, p.apply(x));
            }
        }
        (1..self.d as u8).all(|x| uf.equiv(0, x))
    }

    pub fn validate(&self) -> Result<(), HurwitzError> {
        if !self.product().is_identity() {
            return Err(HurwitzError::ProductNotIdentity(self.product().to_string()));
        }
        if !self.is_transitive() {
            return Err(HurwitzError::NotTransitive);
        }
        Ok(())
    }

    pub fn cycle_types(&self) -> Vec<Partition> {
        self.perms.iter().map(Perm::cycle_type).collect()
    }

    /// Cycle types of the nontrivial entries.
    pub fn profile(&self) -> Result<RamificationProfile, ProfileError> {
        let parts = self.perms.iter().filter(|p| !p.is_identity()).map(Perm::cycle_type).collect();
        RamificationProfile::new(self.d as u32, parts)
    }

    /// Genus of the cover, from Riemann-Hurwitz.
    pub fn genus(&self) -> Result<u32, ProfileError> {
        let total: i64 = self.perms.iter().map(|p| p.cycle_type().ramification() as i64).sum();
        genus_from_ramification(self.d as i64, total)
    }

    /// The braid move at position `i` (1-based):
    /// `(τ_i, τ_{i+1}) ↦ (τ_i τ_{i+1} τ_i⁻¹, τ_i)`, or its inverse
    /// `(τ_i, τ_{i+1}) ↦ (τ_{i+1}, τ_{i+1}⁻¹ τ_i τ_{i+1})`.
    pub fn braid_move(&self, i: usize, inverse: bool) -> Result<Self, HurwitzError> {
        let s = self.perms.len();
        if i == 0 || i >= s {
            return Err(HurwitzError::IndexOutOfRange { index: i, len: s });
        }
        let mut out = self.clone();
        let (a, b) = (&self.perms[i - 1], &self.perms[i]);
        if inverse {
            out.perms[i - 1] = b.clone();
            out.perms[i] = b.inverse().then(a).then(b);
        } else {
            out.perms[i - 1] = a.then(b).then(&a.inverse());
            out.perms[i] = a.clone();
        }
        Ok(out)
    }

    /// Simultaneous conjugation `τ_i ↦ c⁻¹ τ_i c`.
    pub fn conjugate(&self, c: &Perm) -> Self {
        MonodromyTuple { d: self.d, perms: self.perms.iter().map(|p| p.conjugate(c)).collect() }
    }

    /// Relabels letters in breadth-first order from `start`, following the
    /// entries in order. Defined for transitive tuples.
    fn bfs_relabel(&self, start: u8) -> Vec<u8> {
        let d = self.d;
        let mut label = vec![u8::MAX; d];
        let mut order = Vec::with_capacity(d);
        label[start as usize] = 0;
        order.push(start);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for p in &self.perms {
                let y = p.apply(x);
                if label[y as usize] == u8::MAX {
                    label[y as usize] = order.len() as u8;
                    order.push(y);
                }
            }
        }
        let mut flat = Vec::with_capacity(d * self.perms.len());
        for p in &self.perms {
            let mut img = vec![0u8; d];
            for x in 0..d {
                img[label[x] as usize] = label[p.apply(x as u8) as usize];
            }
            flat.extend(img);
        }
        flat
    }

    /// Representative of the simultaneous conjugacy class: the least of the
    /// `d` breadth-first relabelings. Two transitive tuples are conjugate iff
    /// their canonical forms agree.
    pub fn canonical(&self) -> Self {
        debug_assert!(self.is_transitive());
        let best = (0..self.d as u8).map(|s| self.bfs_relabel(s)).min().expect("d > 0");
        self.with_flat(&best)
    }

    /// Least relabeling over all of `S_d`, for cross-checking.
    pub fn canonical_brute_force(&self) -> Self {
        let best = (0..self.d as u8)
            .permutations(self.d)
            .map(|c| {
                let c = Perm::from_images(c);
                self.conjugate(&c).perms.iter().flat_map(|p| p.images().to_vec()).collect::<Vec<u8>>()
            })
            .min()
            .expect("d > 0");
        self.with_flat(&best)
    }

    fn with_flat(&self, flat: &[u8]) -> Self {
        let perms = flat.chunks(self.d).map(|c| Perm::from_images(c.to_vec())).collect();
        MonodromyTuple { d: self.d, perms }
    }
}

impl std::fmt::Display for MonodromyTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body: Vec<String> = self.perms.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", body.join(", "))
    }
}
