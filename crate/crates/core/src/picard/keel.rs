//! Edge-labelled complete graphs and the trivial classes `D(Γ)` on `M̄_{0,n}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::boundary::{all_boundary, has, Mask};
use super::class::DivisorClass;
use crate::scalar::Scalar;

/// A complete graph on the markings `1..n` with a label on every edge;
/// unlabelled edges carry zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct EdgeLabeledGraph<T> {
    n: u32,
    labels: BTreeMap<(u32, u32), T>,
}

impl<T: Scalar> EdgeLabeledGraph<T> {
    pub fn new(n: u32) -> Self {
        EdgeLabeledGraph { n, labels: BTreeMap::new() }
    }

    /// Labels every edge `{i, j}` with `f(i, j)`.
    pub fn from_fn(n: u32, mut f: impl FnMut(u32, u32) -> T) -> Self {
        let mut g = Self::new(n);
        for i in 1..=n {
            for j in i + 1..=n {
                g.set(i, j, f(i, j));
            }
        }
        g
    }

    pub fn markings(&self) -> u32 {
        self.n
    }

    pub fn set(&mut self, i: u32, j: u32, label: T) {
        assert!(i != j && i >= 1 && j >= 1 && i <= self.n && j <= self.n, "bad edge {{{i},{j}}}");
        let key = (i.min(j), i.max(j));
        if label.is_zero() {
            self.labels.remove(&key);
        } else {
            self.labels.insert(key, label);
        }
    }

    /// `e(i ~ j)`.
    pub fn edge(&self, i: u32, j: u32) -> T {
        self.labels.get(&(i.min(j), i.max(j))).cloned().unwrap_or_else(T::zero)
    }

    /// `e(i) = Σ_{j ≠ i} e(i ~ j)`.
    pub fn vertex_weight(&self, i: u32) -> T {
        self.labels
            .iter()
            .filter(|((a, b), _)| *a == i || *b == i)
            .fold(T::zero(), |acc, (_, v)| acc + v.clone())
    }

    /// `e(S) = Σ_{i ∈ S, j ∉ S} e(i ~ j)`.
    pub fn cut_weight(&self, mask: Mask) -> T {
        self.labels
            .iter()
            .filter(|((a, b), _)| has(mask, *a) != has(mask, *b))
            .fold(T::zero(), |acc, (_, v)| acc + v.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::new(self.n);
        for (&(a, b), v) in &self.labels {
            out.set(a, b, v.clone() * c.clone());
        }
        out
    }
}

/// `D(Γ) = Σ e(i) ψ_i - Σ_{1 ∈ S} e(S) δ_{0:S}`, a trivial class on `M̄_{0,n}`.
pub fn keel_graph_class<T: Scalar>(graph: &EdgeLabeledGraph<T>) -> DivisorClass<T> {
    let n = graph.markings();
    let mut c = DivisorClass::zero(0, n);
    for i in 1..=n {
        c.add_psi(i, graph.vertex_weight(i));
    }
    for b in all_boundary(0, n) {
        c.add_boundary(b, -graph.cut_weight(b.mask()));
    }
    c
}

/// The `C(n, 2)` graphs with a single unit label, whose classes are the
/// Keel relations `ψ_i + ψ_j - Σ δ_{0:S}` over `S` separating `i` and `j`.
pub fn basis_graphs<T: Scalar>(n: u32) -> Vec<EdgeLabeledGraph<T>> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let mut g = EdgeLabeledGraph::new(n);
            g.set(i, j, T::one());
            out.push(g);
        }
    }
    out
}
