use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::TwistedError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub genus: u32,
    #[serde(default)]
    pub markings: Vec<u32>,
}

/// A node joining `ends[0]` and `ends[1]`; equal ends make a self-node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub ends: [usize; 2],
}

/// Dual graph of a stable pointed curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    n: u32,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: Vec<Vertex>,
    #[serde(default)]
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for DualGraph {
    type Error = TwistedError;
    fn try_from(raw: RawGraph) -> Result<Self, TwistedError> {
        DualGraph::new(raw.vertices, raw.edges)
    }
}

impl From<DualGraph> for RawGraph {
    fn from(g: DualGraph) -> Self {
        RawGraph { vertices: g.vertices, edges: g.edges }
    }
}

impl DualGraph {
    /// Checks that edges are in range, the markings partition `1..=n`, and
    /// the graph is connected.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, TwistedError> {
        let bad = |s: String| Err(TwistedError::Graph(s));
        if vertices.is_empty() {
            return bad("no vertices".into());
        }
        let v = vertices.len();
        if let Some(e) = edges.iter().find(|e| e.ends.iter().any(|&x| x >= v)) {
            return bad(format!("edge {:?} has an end outside 0..{v}", e.ends));
        }
        let mut all: Vec<u32> = vertices.iter().flat_map(|x| x.markings.iter().copied()).collect();
        all.sort_unstable();
        let n = all.len() as u32;
        if all.iter().enumerate().any(|(k, &m)| m != k as u32 + 1) {
            return bad(format!("markings {all:?} do not partition 1..={n}"));
        }
        let g = DualGraph { vertices, edges, n };
        if g.components(&vec![true; v]).len() != 1 {
            return bad("graph is disconnected".into());
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn markings(&self) -> u32 {
        self.n
    }

    /// `Σ g_v + b_1(Γ)`.
    pub fn genus(&self) -> u32 {
        let b1 = self.edges.len() + 1 - self.vertices.len();
        self.vertices.iter().map(|v| v.genus).sum::<u32>() + b1 as u32
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertices.len()
    }

    /// Vertex carrying marking `i`.
    pub fn vertex_of(&self, i: u32) -> Option<usize> {
        self.vertices.iter().position(|v| v.markings.contains(&i))
    }

    /// Connected components of the subgraph induced on `keep`.
    pub fn components(&self, keep: &[bool]) -> Vec<Vec<usize>> {
        let v = self.vertices.len();
        let mut uf = UnionFind::<usize>::new(v);
        for e in &self.edges {
            let [a, b] = e.ends;
            if keep[a] && keep[b] {
                uf.union(a, b);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in (0..v).filter(|&x| keep[x]) {
            groups.entry(uf.find(x)).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Stability `2g_v - 2 + (valence) > 0` at every vertex.
    pub fn is_stable(&self) -> bool {
        (0..self.vertices.len()).all(|x| {
            let half_edges: usize = self.edges.iter().map(|e| e.ends.iter().filter(|&&y| y == x).count()).sum();
            2 * self.vertices[x].genus as i64 - 2 + (half_edges + self.vertices[x].markings.len()) as i64 > 0
        })
    }
}
