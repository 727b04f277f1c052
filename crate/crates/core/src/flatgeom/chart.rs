use std::collections::BTreeMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::rank;
use crate::signature::Signature;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("malformed chart: {0}")]
    Shape(String),
    #[error("the glued surface has {0} connected components")]
    DisconnectedSurface(usize),
    #[error("pole {pole} is outside 1..={count}")]
    PoleIndexOutOfRange { pole: usize, count: usize },
}

/// Combinatorial data of a chart. Field names follow the usual notation:
/// `nplus = (n_1^+, ..., n_{d+s^+}^+)` with `n_0^+ = 0` implicit, likewise
/// `nminus`, and `dvec = (d_0, ..., d_r)` with `d_0 = 0` and `d_r = d`.
/// Permutations are one-line notation on `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartData {
    pub n: usize,
    pub nplus: Vec<usize>,
    pub nminus: Vec<usize>,
    pub pit: Vec<usize>,
    pub pib: Vec<usize>,
    pub dvec: Vec<usize>,
    pub splus: usize,
    pub sminus: usize,
}

/// A basic domain: `D^+_i`, `D^-_i` for `i < d`, `C^+_i`, `C^-_i` for `i ≥ d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Domain {
    Upper(usize),
    Lower(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleKind {
    /// Order `d_k - d_{k-1} + 1`.
    NonSimple { order: usize },
    /// Carried by a `C^+` domain (`upper`) or a `C^-` domain.
    Simple { upper: bool },
}

/// `Σ c_j v_j`, with zero coefficients omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueForm(pub BTreeMap<usize, i64>);

impl ResidueForm {
    fn bump(&mut self, var: usize, c: i64) {
        let e = self.0.entry(var).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&var);
        }
    }

    pub fn coeff(&self, var: usize) -> i64 {
        self.0.get(&var).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dense(&self, n: usize) -> Vec<i64> {
        (1..=n).map(|j| self.coeff(j)).collect()
    }
}

impl std::ops::Add for &ResidueForm {
    type Output = ResidueForm;
    fn add(self, rhs: &ResidueForm) -> ResidueForm {
        let mut out = self.clone();
        for (&v, &c) in &rhs.0 {
            out.bump(v, c);
        }
        out
    }
}

impl fmt::Display for ResidueForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (&v, &c)) in self.0.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}v{v}")?;
            } else {
                write!(f, "{sign}{mag}v{v}")?;
            }
        }
        Ok(())
    }
}

/// Number of period coordinates, `2g + |κ| - 2`.
pub fn coordinate_count(sig: &Signature) -> usize {
    2 * sig.genus() as usize + sig.len() - 2
}

fn is_perm(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n + 1];
    p.len() == n && p.iter().all(|&x| x >= 1 && x <= n && !std::mem::replace(&mut seen[x], true))
}

/// `0 = n_0 ≤ ... ≤ n_d < ... < n_{len} = n`.
fn check_cuts(name: &str, cuts: &[usize], d: usize, n: usize) -> Result<(), ChartError> {
    let bad = |why: &str| Err(ChartError::Shape(format!("{name}: {why}")));
    if cuts.last() != Some(&n) {
        return bad("must end at n");
    }
    let mut prev = 0;
    for (i, &c) in cuts.iter().enumerate() {
        if c < prev || (i >= d && c == prev) {
            return bad("not monotone");
        }
        prev = c;
    }
    Ok(())
}

impl ChartData {
    /// `d = d_r`, the number of `D^±` domains of each sign.
    pub fn d(&self) -> usize {
        self.dvec.last().copied().unwrap_or(0)
    }

    fn check_shape(&self) -> Result<(), ChartError> {
        let shape = |s: &str| Err(ChartError::Shape(s.into()));
        if self.n == 0 {
            return shape("no saddle connections");
        }
        if self.dvec.first() != Some(&0) || self.dvec.windows(2).any(|w| w[0] >= w[1]) {
            return shape("dvec must start at 0 and increase strictly");
        }
        let d = self.d();
        if self.nplus.len() != d + self.splus {
            return shape("nplus must have d + s^+ entries");
        }
        if self.nminus.len() != d + self.sminus {
            return shape("nminus must have d + s^- entries");
        }
        check_cuts("nplus", &self.nplus, d, self.n)?;
        check_cuts("nminus", &self.nminus, d, self.n)?;
        if !is_perm(&self.pit, self.n) || !is_perm(&self.pib, self.n) {
            return shape("pit and pib must be permutations of 1..n");
        }
        Ok(())
    }

    fn range(cuts: &[usize], i: usize) -> std::ops::Range<usize> {
        let lo = if i == 0 { 0 } else { cuts[i - 1] };
        lo..cuts[i]
    }

    /// Saddle connections on the boundary of a domain, in order.
    pub fn domain_vectors(&self, dom: Domain) -> Vec<usize> {
        match dom {
            Domain::Upper(i) => Self::range(&self.nplus, i).map(|j| self.pit[j]).collect(),
            Domain::Lower(i) => Self::range(&self.nminus, i).map(|j| self.pib[j]).collect(),
        }
    }

    fn domains(&self) -> Vec<Domain> {
        let mut out: Vec<Domain> = (0..self.nplus.len()).map(Domain::Upper).collect();
        out.extend((0..self.nminus.len()).map(Domain::Lower));
        out
    }

    /// Non-simple poles first (in `dvec` order), then the `C^+` simple poles,
    /// then the `C^-` ones.
    pub fn poles(&self) -> Vec<PoleKind> {
        let mut out: Vec<PoleKind> =
            self.dvec.windows(2).map(|w| PoleKind::NonSimple { order: w[1] - w[0] + 1 }).collect();
        out.extend((0..self.splus).map(|_| PoleKind::Simple { upper: true }));
        out.extend((0..self.sminus).map(|_| PoleKind::Simple { upper: false }));
        out
    }

    pub fn nonsimple_poles(&self) -> usize {
        self.dvec.len() - 1
    }

    pub fn simple_poles(&self) -> usize {
        self.splus + self.sminus
    }

    /// Domains surrounding pole `k` (1-based, ordering as in [`poles`](Self::poles)).
    fn pole_domains(&self, k: usize) -> Vec<Domain> {
        let r = self.nonsimple_poles();
        let d = self.d();
        if k <= r {
            (self.dvec[k - 1]..self.dvec[k]).flat_map(|i| [Domain::Upper(i), Domain::Lower(i)]).collect()
        } else if k <= r + self.splus {
            vec![Domain::Upper(d + k - r - 1)]
        } else {
            vec![Domain::Lower(d + k - r - self.splus - 1)]
        }
    }

    /// Pole index owning a domain.
    fn owner(&self, dom: Domain) -> usize {
        let d = self.d();
        let r = self.nonsimple_poles();
        match dom {
            Domain::Upper(i) | Domain::Lower(i) if i < d => self.dvec.partition_point(|&x| x <= i),
            Domain::Upper(i) => r + i - d + 1,
            Domain::Lower(i) => r + self.splus + i - d + 1,
        }
    }

    /// Number of connected components of the glued surface. Side gluings
    /// only join domains around the same pole, so the components are those
    /// of the graph on poles with one edge per saddle connection.
    pub fn components(&self) -> usize {
        let poles = self.poles().len();
        let mut uf = UnionFind::<usize>::new(poles + 1);
        let mut home = vec![(0, 0); self.n + 1];
        for dom in self.domains() {
            let p = self.owner(dom);
            for v in self.domain_vectors(dom) {
                match dom {
                    Domain::Upper(_) => home[v].0 = p,
                    Domain::Lower(_) => home[v].1 = p,
                }
            }
        }
        for &(a, b) in &home[1..] {
            uf.union(a, b);
        }
        let mut roots: Vec<usize> = (1..=poles).map(|p| uf.find(p)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    pub fn validate(&self) -> Result<(), ChartError> {
        self.check_shape()?;
        match self.components() {
            1 => Ok(()),
            c => Err(ChartError::DisconnectedSurface(c)),
        }
    }

    /// Residue at pole `k` (1-based): vectors on `+` domains count with `+1`,
    /// vectors on `-` domains with `-1`.
    pub fn residue_form(&self, k: usize) -> Result<ResidueForm, ChartError> {
        self.check_shape()?;
        let count = self.poles().len();
        if k == 0 || k > count {
            return Err(ChartError::PoleIndexOutOfRange { pole: k, count });
        }
        let mut form = ResidueForm::default();
        for dom in self.pole_domains(k) {
            let sign = if matches!(dom, Domain::Upper(_)) { 1 } else { -1 };
            for v in self.domain_vectors(dom) {
                form.bump(v, sign);
            }
        }
        Ok(form)
    }

    pub fn residue_forms(&self) -> Result<Vec<ResidueForm>, ChartError> {
        (1..=self.poles().len()).map(|k| self.residue_form(k)).collect()
    }

    /// Rank of the residue forms at the non-simple poles: the codimension of
    /// the zero-residue locus inside the chart.
    pub fn zero_residue_rank(&self) -> Result<usize, ChartError> {
        let rows: Vec<Vec<Rational>> = (1..=self.nonsimple_poles())
            .map(|k| self.residue_form(k).map(|f| f.dense(self.n).into_iter().map(crate::q).collect()))
            .collect::<Result<_, _>>()?;
        Ok(rank(rows, self.n))
    }
}
