use std::collections::BTreeSet;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::config::{Pole, TwistedConfig};
use super::TwistedError;
use crate::linalg::Echelon;
use crate::Rational;

pub const SOLVABILITY_CAVEAT: &str = "linear solvability of the residue conditions is necessary but not sufficient \
for smoothability: whether each component admits a differential with the required residues is not checked";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum GrcViolation {
    /// Residues supplied at a place that is not a pole.
    NotAPole { at: Pole },
    /// Residues at the two branches of a horizontal node do not cancel.
    Horizontal { edge: usize },
    /// Nonzero residue at a zeroed pole.
    ZeroedPole { marking: u32 },
    /// Residues on one component do not sum to zero.
    ResidueTheorem { vertex: usize },
    /// The residues at level `level` below the component `component` of the
    /// part strictly above that level do not sum to zero.
    Global {
        #[serde(with = "crate::serial::rational")]
        level: Rational,
        component: Vec<usize>,
        #[serde(with = "crate::serial::complex")]
        sum: Complex<Rational>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GrcReport {
    pub violations: Vec<GrcViolation>,
}

impl GrcReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One linear condition: the listed places have residues summing to zero.
struct Condition {
    places: Vec<Pole>,
    violation: GrcViolation,
}

fn conditions(cfg: &TwistedConfig) -> Result<Vec<Condition>, TwistedError> {
    let violations = cfg.validate();
    if !violations.is_empty() {
        return Err(TwistedError::Axioms(violations));
    }
    cfg.check_levels()?;
    let zero = Complex::zero();
    let mut out = Vec::new();
    for (e, o) in cfg.edge_orders.iter().enumerate() {
        if *o == [-1, -1] {
            let places = vec![Pole::Node { edge: e, end: 0 }, Pole::Node { edge: e, end: 1 }];
            out.push(Condition { places, violation: GrcViolation::Horizontal { edge: e } });
        }
    }
    for &i in &cfg.zeroed {
        out.push(Condition { places: vec![Pole::Marking(i)], violation: GrcViolation::ZeroedPole { marking: i } });
    }
    let poles: Vec<Pole> = cfg.places().into_iter().filter(|&p| cfg.order(p).is_some_and(|o| o < 0)).collect();
    for v in 0..cfg.graph.vertices().len() {
        let places = poles.iter().copied().filter(|&p| cfg.vertex_at(p) == v).collect();
        out.push(Condition { places, violation: GrcViolation::ResidueTheorem { vertex: v } });
    }
    let levels: BTreeSet<&Rational> = cfg.levels.iter().collect();
    for level in levels {
        let above: Vec<bool> = cfg.levels.iter().map(|l| l > level).collect();
        for comp in cfg.graph.components(&above) {
            let free_pole = cfg.kappa.iter().enumerate().any(|(k, &o)| {
                let i = k as u32 + 1;
                o < 0 && !cfg.zeroed.contains(&i) && comp.contains(&cfg.vertex_at(Pole::Marking(i)))
            });
            if free_pole {
                continue;
            }
            let mut places = Vec::new();
            for (e, edge) in cfg.graph.edges().iter().enumerate() {
                for end in 0..2 {
                    let (here, there) = (edge.ends[end], edge.ends[1 - end]);
                    if &cfg.levels[here] == level && comp.contains(&there) {
                        places.push(Pole::Node { edge: e, end });
                    }
                }
            }
            if places.is_empty() {
                continue;
            }
            let violation = GrcViolation::Global { level: level.clone(), component: comp, sum: zero.clone() };
            out.push(Condition { places, violation });
        }
    }
    Ok(out)
}

/// Checks a configuration with residues against the zero-residue global
/// residue condition for its level function: cancelling residues at
/// horizontal nodes, vanishing residues at zeroed poles, the residue theorem
/// on each component, and for every level `L` and every connected component
/// `Y` of the subgraph above `L` without a non-zeroed marked pole, vanishing
/// of the sum of residues at the level `L` branches of nodes joining `Y`.
pub fn zr_grc_check(cfg: &TwistedConfig) -> Result<GrcReport, TwistedError> {
    let mut report = GrcReport::default();
    for &at in cfg.residues.keys() {
        if cfg.order(at).is_some_and(|o| o >= 0) {
            report.violations.push(GrcViolation::NotAPole { at });
        }
    }
    for cond in conditions(cfg)? {
        let sum = cond.places.iter().fold(Complex::zero(), |acc: Complex<Rational>, &p| acc + cfg.residue(p));
        if !sum.is_zero() {
            let violation = match cond.violation {
                GrcViolation::Global { level, component, .. } => GrcViolation::Global { level, component, sum },
                v => v,
            };
            report.violations.push(violation);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleValue {
    pub at: Pole,
    #[serde(with = "crate::serial::rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidueSolution {
    /// Some assignment satisfies every condition with nonzero residues at
    /// all simple poles.
    pub solvable: bool,
    /// Such an assignment (real parts; imaginary parts obey the same system).
    pub solution: Vec<PoleValue>,
    /// Dimension of the space of residue assignments.
    pub freedom: usize,
    /// Every residue is forced to vanish, so each component differential is
    /// of the second kind.
    pub second_kind: bool,
    pub caveat: String,
}

/// Solves the linear conditions of [`zr_grc_check`] for the residues.
pub fn solve_residues(cfg: &TwistedConfig) -> Result<ResidueSolution, TwistedError> {
    let vars = cfg.free_poles();
    let col = |p: &Pole| vars.iter().position(|v| v == p);
    let rows: Vec<Vec<Rational>> = conditions(cfg)?
        .into_iter()
        .map(|c| {
            let mut row = vec![Rational::zero(); vars.len()];
            for p in &c.places {
                if let Some(j) = col(p) {
                    row[j] += Rational::one();
                }
            }
            row
        })
        .collect();
    let kernel = Echelon::new(rows, vars.len()).kernel();
    let simple: Vec<usize> = (0..vars.len()).filter(|&j| cfg.order(vars[j]) == Some(-1)).collect();
    let solvable = simple.iter().all(|&j| kernel.iter().any(|k| !k[j].is_zero()));
    let mut solution = vec![Rational::zero(); vars.len()];
    if solvable && !kernel.is_empty() {
        // Σ t^i k_i has a nonzero j-th entry for all but finitely many t
        for t in 1i64.. {
            let t = crate::q(t);
            let mut w = Rational::one();
            let mut v = vec![Rational::zero(); vars.len()];
            for k in &kernel {
                for (x, y) in v.iter_mut().zip(k) {
                    *x += y * &w;
                }
                w *= &t;
            }
            if simple.iter().all(|&j| !v[j].is_zero()) {
                solution = v;
                break;
            }
        }
    }
    Ok(ResidueSolution {
        solvable,
        solution: vars.into_iter().zip(solution).map(|(at, value)| PoleValue { at, value }).collect(),
        freedom: kernel.len(),
        second_kind: kernel.is_empty(),
        caveat: SOLVABILITY_CAVEAT.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;
    use crate::twisted::config::tests::two_vertex;
    use crate::twisted::graph::{DualGraph, Edge, Vertex};

    fn levelled() -> TwistedConfig {
        two_vertex().with_levels(vec![q(1), q(0)]).unwrap().with_zeroed([1]).unwrap()
    }

    #[test]
    fn compact_type_forced_zero() {
        let c = levelled();
        assert!(zr_grc_check(&c).unwrap().ok());
        let mut bad = c.clone();
        bad.set_residue(Pole::Node { edge: 0, end: 1 }, Complex::new(q(3), q(0))).unwrap();
        let report = zr_grc_check(&bad).unwrap();
        assert!(report.violations.iter().any(|v| matches!(v, GrcViolation::Global { .. })));
        let s = solve_residues(&c).unwrap();
        assert!(s.solvable && s.second_kind);
        assert!(s.solution.iter().all(|p| p.value.is_zero()));
    }

    #[test]
    fn level_relabeling_is_harmless() {
        let mut bad = levelled();
        bad.set_residue(Pole::Node { edge: 0, end: 1 }, Complex::new(q(3), q(0))).unwrap();
        let moved = bad.clone().with_levels(vec![Rational::new(7.into(), 2.into()), q(-5)]).unwrap();
        assert_eq!(zr_grc_check(&bad).unwrap().violations.len(), zr_grc_check(&moved).unwrap().violations.len());
    }

    fn banana() -> TwistedConfig {
        // two rational components joined by two horizontal nodes, each with
        // a zeroed double pole and a double zero
        let g = DualGraph::new(
            vec![Vertex { genus: 0, markings: vec![1, 2] }, Vertex { genus: 0, markings: vec![3, 4] }],
            vec![Edge { ends: [0, 1] }, Edge { ends: [0, 1] }],
        )
        .unwrap();
        TwistedConfig::new(g, vec![-2, 2, -2, 2], vec![[-1, -1], [-1, -1]])
            .unwrap()
            .with_levels(vec![q(0), q(0)])
            .unwrap()
            .with_zeroed([1, 3])
            .unwrap()
    }

    #[test]
    fn banana_with_opposite_residues() {
        let mut c = banana();
        let r = Complex::new(q(2), q(-1));
        c.set_residue(Pole::Node { edge: 0, end: 0 }, r.clone()).unwrap();
        c.set_residue(Pole::Node { edge: 0, end: 1 }, -r.clone()).unwrap();
        c.set_residue(Pole::Node { edge: 1, end: 0 }, -r.clone()).unwrap();
        c.set_residue(Pole::Node { edge: 1, end: 1 }, r.clone()).unwrap();
        assert!(zr_grc_check(&c).unwrap().ok());
        let s = solve_residues(&c).unwrap();
        assert!(s.solvable);
        assert_eq!(s.freedom, 1);
        let mut broken = c.clone();
        broken.set_residue(Pole::Node { edge: 1, end: 1 }, r.clone() + Complex::new(q(1), q(0))).unwrap();
        let v = zr_grc_check(&broken).unwrap().violations;
        assert!(v.contains(&GrcViolation::Horizontal { edge: 1 }));
    }

    #[test]
    fn overconstrained_chain() {
        // three levels; the bottom carries the only simple poles, and the
        // zeroed double pole on the middle forces its lower node residue to
        // vanish, which leaves the simple pole at marking 3 alone
        let g = DualGraph::new(
            vec![
                Vertex { genus: 1, markings: vec![] },
                Vertex { genus: 0, markings: vec![1, 2] },
                Vertex { genus: 0, markings: vec![3, 4] },
            ],
            vec![Edge { ends: [0, 1] }, Edge { ends: [1, 2] }],
        )
        .unwrap();
        let c = TwistedConfig::new(g, vec![-2, 2, -1, 1], vec![[0, -2], [0, -2]])
            .unwrap()
            .with_levels(vec![q(2), q(1), q(0)])
            .unwrap()
            .with_zeroed([1])
            .unwrap();
        assert!(c.validate().is_empty());
        let s = solve_residues(&c).unwrap();
        assert!(!s.solvable);
    }

    #[test]
    fn requires_levels() {
        let c = two_vertex().with_zeroed([1]).unwrap();
        assert!(matches!(zr_grc_check(&c), Err(TwistedError::NotFullOrder(_))));
    }
}
