use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex;
use num_traits::Zero;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use super::graph::DualGraph;
use super::TwistedError;
use crate::signature::Signature;
use crate::Rational;

/// A place where a component differential may have a pole: one branch of a
/// node, or a marked point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pole {
    Node { edge: usize, end: usize },
    Marking(u32),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidueEntry {
    pub at: Pole,
    #[serde(with = "crate::serial::complex")]
    pub value: Complex<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    /// (1) orders at a vertex do not sum to `2g_v - 2`.
    Degree { vertex: usize, found: i64, expected: i64 },
    /// (2) the two branches of a node do not sum to `-2`.
    NodeSum { edge: usize, found: i64 },
    /// (3) a pair of components meets in both horizontal and other nodes.
    Horizontal { vertices: [usize; 2] },
    /// (4) nodes between a pair of components disagree on the direction.
    Comparison { vertices: [usize; 2] },
    /// (5) a loop `C_1 ⪰ ... ⪰ C_1` with a strict step.
    DirectedLoop { vertices: Vec<usize> },
}

impl AxiomViolation {
    pub fn axiom(&self) -> u8 {
        match self {
            AxiomViolation::Degree { .. } => 1,
            AxiomViolation::NodeSum { .. } => 2,
            AxiomViolation::Horizontal { .. } => 3,
            AxiomViolation::Comparison { .. } => 4,
            AxiomViolation::DirectedLoop { .. } => 5,
        }
    }
}

/// A nodal curve with orders at every marking and node branch, an optional
/// level function, the zeroed markings, and optionally residues.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct TwistedConfig {
    pub graph: DualGraph,
    /// `kappa[i-1]` is the order at marking `i`.
    pub kappa: Vec<i64>,
    /// Orders at the branches `ends[0]`, `ends[1]` of each edge.
    pub edge_orders: Vec<[i64; 2]>,
    /// One level per vertex; empty if not given.
    pub levels: Vec<Rational>,
    pub zeroed: BTreeSet<u32>,
    pub residues: BTreeMap<Pole, Complex<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    graph: DualGraph,
    kappa: Vec<i64>,
    edge_orders: Vec<[i64; 2]>,
    #[serde(default, with = "crate::serial::rational_vec")]
    levels: Vec<Rational>,
    #[serde(default)]
    zeroed: BTreeSet<u32>,
    #[serde(default)]
    residues: Vec<ResidueEntry>,
}

impl TryFrom<RawConfig> for TwistedConfig {
    type Error = TwistedError;
    fn try_from(raw: RawConfig) -> Result<Self, TwistedError> {
        let mut cfg = TwistedConfig::new(raw.graph, raw.kappa, raw.edge_orders)?;
        cfg.set_levels(raw.levels)?;
        cfg.set_zeroed(raw.zeroed)?;
        for r in raw.residues {
            cfg.set_residue(r.at, r.value)?;
        }
        Ok(cfg)
    }
}

impl From<TwistedConfig> for RawConfig {
    fn from(c: TwistedConfig) -> Self {
        RawConfig {
            graph: c.graph,
            kappa: c.kappa,
            edge_orders: c.edge_orders,
            levels: c.levels,
            zeroed: c.zeroed,
            residues: c.residues.into_iter().map(|(at, value)| ResidueEntry { at, value }).collect(),
        }
    }
}

impl TwistedConfig {
    pub fn new(graph: DualGraph, kappa: Vec<i64>, edge_orders: Vec<[i64; 2]>) -> Result<Self, TwistedError> {
        if kappa.len() != graph.markings() as usize {
            return Err(TwistedError::Shape(format!("{} orders for {} markings", kappa.len(), graph.markings())));
        }
        if edge_orders.len() != graph.edges().len() {
            return Err(TwistedError::Shape(format!("{} order pairs for {} edges", edge_orders.len(), graph.edges().len())));
        }
        Ok(TwistedConfig {
            graph,
            kappa,
            edge_orders,
            levels: Vec::new(),
            zeroed: BTreeSet::new(),
            residues: BTreeMap::new(),
        })
    }

    pub fn with_levels(mut self, levels: Vec<Rational>) -> Result<Self, TwistedError> {
        self.set_levels(levels)?;
        Ok(self)
    }

    pub fn with_zeroed(mut self, zeroed: impl IntoIterator<Item = u32>) -> Result<Self, TwistedError> {
        self.set_zeroed(zeroed.into_iter().collect())?;
        Ok(self)
    }

    pub fn set_levels(&mut self, levels: Vec<Rational>) -> Result<(), TwistedError> {
        if !levels.is_empty() && levels.len() != self.graph.vertices().len() {
            return Err(TwistedError::Shape("one level per vertex".into()));
        }
        self.levels = levels;
        Ok(())
    }

    pub fn set_zeroed(&mut self, zeroed: BTreeSet<u32>) -> Result<(), TwistedError> {
        for &i in &zeroed {
            if i == 0 || i as usize > self.kappa.len() || self.kappa[i as usize - 1] > -2 {
                return Err(TwistedError::Shape(format!("marking {i} is not a pole of order at least 2")));
            }
        }
        self.zeroed = zeroed;
        Ok(())
    }

    pub fn set_residue(&mut self, at: Pole, value: Complex<Rational>) -> Result<(), TwistedError> {
        if self.order(at).is_none() {
            return Err(TwistedError::Shape(format!("{at:?} does not exist")));
        }
        if value.is_zero() {
            self.residues.remove(&at);
        } else {
            self.residues.insert(at, value);
        }
        Ok(())
    }

    pub fn residue(&self, at: Pole) -> Complex<Rational> {
        self.residues.get(&at).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn order(&self, at: Pole) -> Option<i64> {
        match at {
            Pole::Node { edge, end } if end < 2 => self.edge_orders.get(edge).map(|o| o[end]),
            Pole::Marking(i) if i >= 1 => self.kappa.get(i as usize - 1).copied(),
            _ => None,
        }
    }

    /// Vertex carrying a marking or node branch.
    pub fn vertex_at(&self, at: Pole) -> usize {
        match at {
            Pole::Node { edge, end } => self.graph.edges()[edge].ends[end],
            Pole::Marking(i) => self.graph.vertex_of(i).expect("marking on some vertex"),
        }
    }

    /// Every marking and node branch, markings first.
    pub fn places(&self) -> Vec<Pole> {
        let mut out: Vec<Pole> = (1..=self.kappa.len() as u32).map(Pole::Marking).collect();
        for e in 0..self.edge_orders.len() {
            out.extend([Pole::Node { edge: e, end: 0 }, Pole::Node { edge: e, end: 1 }]);
        }
        out
    }

    /// Places with negative order, excluding zeroed markings: the unknowns
    /// of the residue system.
    pub fn free_poles(&self) -> Vec<Pole> {
        self.places()
            .into_iter()
            .filter(|&p| self.order(p).is_some_and(|o| o < 0))
            .filter(|p| !matches!(p, Pole::Marking(i) if self.zeroed.contains(i)))
            .collect()
    }

    /// Orders at the places on vertex `v`, as a signature of genus `g_v`.
    pub fn vertex_signature(&self, v: usize) -> Option<Signature> {
        let entries: Vec<i64> = self
            .places()
            .into_iter()
            .filter(|&p| self.vertex_at(p) == v)
            .map(|p| self.order(p).expect("place exists"))
            .collect();
        Signature::new(self.graph.vertices()[v].genus, entries).ok()
    }

    fn is_horizontal(&self, e: usize) -> bool {
        self.edge_orders[e] == [-1, -1]
    }

    /// `+1` if `ends[0] ≻ ends[1]` along edge `e`, `-1` for `≺`, `0` for `∼`.
    fn direction(&self, e: usize) -> i8 {
        let [a, b] = self.edge_orders[e];
        (a.cmp(&b)) as i8
    }

    /// Checks (1) to (5) independently and returns every violation found.
    pub fn validate(&self) -> Vec<AxiomViolation> {
        let mut out = Vec::new();
        let verts = self.graph.vertices().len();
        for v in 0..verts {
            let found: i64 = self.places().into_iter().filter(|&p| self.vertex_at(p) == v).map(|p| self.order(p).unwrap()).sum();
            let expected = 2 * self.graph.vertices()[v].genus as i64 - 2;
            if found != expected {
                out.push(AxiomViolation::Degree { vertex: v, found, expected });
            }
        }
        for (e, o) in self.edge_orders.iter().enumerate() {
            if o[0] + o[1] != -2 {
                out.push(AxiomViolation::NodeSum { edge: e, found: o[0] + o[1] });
            }
        }
        // per unordered pair: (has horizontal, has other, directions seen)
        let mut pairs: BTreeMap<[usize; 2], (bool, bool, BTreeSet<i8>)> = BTreeMap::new();
        for (e, edge) in self.graph.edges().iter().enumerate() {
            let [a, b] = edge.ends;
            let key = [a.min(b), a.max(b)];
            let dir = if a <= b { self.direction(e) } else { -self.direction(e) };
            let entry = pairs.entry(key).or_default();
            if self.is_horizontal(e) {
                entry.0 = true;
            } else {
                entry.1 = true;
                if a != b {
                    entry.2.insert(dir);
                }
            }
        }
        for (key, (hor, other, dirs)) in &pairs {
            if *hor && *other {
                out.push(AxiomViolation::Horizontal { vertices: *key });
            }
            if dirs.len() > 1 {
                out.push(AxiomViolation::Comparison { vertices: *key });
            }
        }
        let mut dg = DiGraph::<(), bool>::new();
        let nodes: Vec<_> = (0..verts).map(|_| dg.add_node(())).collect();
        for (e, edge) in self.graph.edges().iter().enumerate() {
            let [a, b] = edge.ends;
            match self.direction(e) {
                1 => {
                    dg.add_edge(nodes[a], nodes[b], true);
                }
                -1 => {
                    dg.add_edge(nodes[b], nodes[a], true);
                }
                _ => {
                    dg.add_edge(nodes[a], nodes[b], self.edge_orders[e][0] != -1);
                    dg.add_edge(nodes[b], nodes[a], self.edge_orders[e][0] != -1);
                }
            }
        }
        for scc in tarjan_scc(&dg) {
            let members: BTreeSet<_> = scc.iter().copied().collect();
            let strict = dg
                .edge_indices()
                .filter(|&ei| dg[ei])
                .filter_map(|ei| dg.edge_endpoints(ei))
                .any(|(s, t)| members.contains(&s) && members.contains(&t));
            if strict {
                let mut vs: Vec<usize> = scc.iter().map(|x| x.index()).collect();
                vs.sort_unstable();
                out.push(AxiomViolation::DirectedLoop { vertices: vs });
            }
        }
        out
    }

    /// Checks that the levels refine the comparisons: `≻` along a node means
    /// a strictly higher level, `∼` the same level.
    pub fn check_levels(&self) -> Result<(), TwistedError> {
        if self.levels.is_empty() {
            return Err(TwistedError::NotFullOrder("no levels given".into()));
        }
        for (e, edge) in self.graph.edges().iter().enumerate() {
            let [a, b] = edge.ends;
            let (la, lb) = (&self.levels[a], &self.levels[b]);
            let ok = match self.direction(e) {
                1 => la > lb,
                -1 => la < lb,
                _ => la == lb,
            };
            if !ok {
                return Err(TwistedError::NotFullOrder(format!("edge {e} between vertices {a} and {b}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::twisted::graph::{Edge, Vertex};

    /// Genus 1 top component attached at a point of order 0 to a rational
    /// bottom component carrying a double pole (marking 1) and a double zero.
    pub(crate) fn two_vertex() -> TwistedConfig {
        let g = DualGraph::new(
            vec![Vertex { genus: 1, markings: vec![] }, Vertex { genus: 0, markings: vec![1, 2] }],
            vec![Edge { ends: [0, 1] }],
        )
        .unwrap();
        TwistedConfig::new(g, vec![-2, 2], vec![[0, -2]]).unwrap()
    }

    #[test]
    fn canonical_two_vertex() {
        let c = two_vertex();
        assert!(c.validate().is_empty());
        let c = c.with_levels(vec![crate::q(1), crate::q(0)]).unwrap();
        c.check_levels().unwrap();
    }

    #[test]
    fn node_sum_violation() {
        let g = DualGraph::new(
            vec![Vertex { genus: 0, markings: vec![1, 2] }, Vertex { genus: 0, markings: vec![3, 4] }],
            vec![Edge { ends: [0, 1] }],
        )
        .unwrap();
        let c = TwistedConfig::new(g, vec![-1, -1, -1, -1], vec![[0, -3]]).unwrap();
        let v = c.validate();
        assert!(v.contains(&AxiomViolation::NodeSum { edge: 0, found: -3 }));
        assert!(v.iter().all(|x| x.axiom() != 5));
    }

    #[test]
    fn triangle_cycle() {
        let g = DualGraph::new(
            vec![
                Vertex { genus: 0, markings: vec![1] },
                Vertex { genus: 0, markings: vec![2] },
                Vertex { genus: 0, markings: vec![3] },
            ],
            vec![Edge { ends: [0, 1] }, Edge { ends: [1, 2] }, Edge { ends: [2, 0] }],
        )
        .unwrap();
        // 0 ≻ 1 ≻ 2 ≻ 0
        let c = TwistedConfig::new(g, vec![0, 0, 0], vec![[1, -3], [1, -3], [1, -3]]).unwrap();
        let v = c.validate();
        assert_eq!(v, vec![AxiomViolation::DirectedLoop { vertices: vec![0, 1, 2] }]);
    }

    #[test]
    fn mixed_pairs() {
        let g = DualGraph::new(
            vec![Vertex { genus: 0, markings: vec![1] }, Vertex { genus: 0, markings: vec![2] }],
            vec![Edge { ends: [0, 1] }, Edge { ends: [0, 1] }, Edge { ends: [1, 0] }],
        )
        .unwrap();
        let c = TwistedConfig::new(g.clone(), vec![0, 0], vec![[-1, -1], [0, -2], [-2, 0]]).unwrap();
        let axioms: BTreeSet<u8> = c.validate().iter().map(|v| v.axiom()).collect();
        assert!(axioms.contains(&3));
        let c = TwistedConfig::new(g, vec![0, 0], vec![[0, -2], [-2, 0], [0, -2]]).unwrap();
        let axioms: BTreeSet<u8> = c.validate().iter().map(|v| v.axiom()).collect();
        assert!(axioms.contains(&4) && axioms.contains(&5));
    }

    #[test]
    fn levels_must_agree() {
        let c = two_vertex().with_levels(vec![crate::q(0), crate::q(0)]).unwrap();
        assert!(matches!(c.check_levels(), Err(TwistedError::NotFullOrder(_))));
    }

    #[test]
    fn json_round_trip() {
        let mut c = two_vertex().with_levels(vec![crate::q(1), crate::q(0)]).unwrap().with_zeroed([1]).unwrap();
        c.set_residue(Pole::Node { edge: 0, end: 1 }, Complex::new(crate::q(0), crate::q(1))).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<TwistedConfig>(&s).unwrap(), c);
    }
}
