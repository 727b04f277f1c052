use serde::{Deserialize, Serialize};

use super::config::{Pole, TwistedConfig};
use super::TwistedError;
use crate::signature::Signature;

/// For a compact type curve and `-1 ∉ κ`: whether the given orders define
/// a twisted differential all of whose components are of the second kind.
/// That holds iff the matching axioms hold, no branch has order `-1`, and
/// no component stratum with zero residues is empty.
pub fn compact_type_second_kind(sig: &Signature, cfg: &TwistedConfig) -> Result<bool, TwistedError> {
    if !cfg.graph.is_tree() {
        return Err(TwistedError::NotATree);
    }
    if sig.entries() != cfg.kappa.as_slice() || sig.genus() != cfg.graph.genus() {
        return Err(TwistedError::Shape("orders at the markings do not match the signature".into()));
    }
    if sig.simple_poles() > 0 || !cfg.validate().is_empty() {
        return Ok(false);
    }
    if cfg.places().into_iter().any(|p: Pole| cfg.order(p) == Some(-1)) {
        return Ok(false);
    }
    Ok((0..cfg.graph.vertices().len()).all(|v| cfg.vertex_signature(v).is_some_and(|s| !s.zero_residue_empty())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RestrictionCodim {
    /// `Σ (poles(κ_i) - 1)`, which equals `poles(κ) - 1`.
    Codim { codim: i64 },
    /// Component `component` has an empty zero-residue stratum.
    Empty { component: usize },
}

/// Codimension of `Z̄(κ) ∩ B` in a genus-zero boundary stratum `B` whose
/// general curve has components with signatures `components`.
pub fn restriction_codim(sig: &Signature, components: &[Signature]) -> Result<RestrictionCodim, TwistedError> {
    let bad = |s: &str| Err(TwistedError::InconsistentSplit(s.into()));
    if components.is_empty() {
        return bad("no components");
    }
    if sig.genus() != 0 || components.iter().any(|c| c.genus() != 0) {
        return bad("all signatures must have genus zero");
    }
    if sig.simple_poles() > 0 || components.iter().any(|c| c.simple_poles() > 0) {
        return bad("simple poles are not allowed");
    }
    let nodes = components.len() - 1;
    let mut rest: Vec<i64> = components.iter().flat_map(|c| c.entries().iter().copied()).collect();
    rest.sort_unstable();
    for &k in sig.entries() {
        match rest.binary_search(&k) {
            Ok(pos) => {
                rest.remove(pos);
            }
            Err(_) => return bad("κ is not contained in the component entries"),
        }
    }
    if rest.len() != 2 * nodes {
        return bad("wrong number of node branches");
    }
    // branches pair up as (x, -2-x); sorted, the k-th smallest pairs with the
    // k-th largest
    if (0..nodes).any(|k| rest[k] + rest[rest.len() - 1 - k] != -2) {
        return bad("node branches do not pair to -2");
    }
    if let Some(component) = components.iter().position(|c| c.zero_residue_empty()) {
        return Ok(RestrictionCodim::Empty { component });
    }
    let codim: i64 = components.iter().map(|c| c.poles() as i64 - 1).sum();
    debug_assert_eq!(codim, sig.poles() as i64 - 1);
    Ok(RestrictionCodim::Codim { codim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twisted::graph::{DualGraph, Edge, Vertex};

    fn s(e: &[i64]) -> Signature {
        Signature::new(0, e.to_vec()).unwrap()
    }

    #[test]
    fn single_vertex_is_emptiness() {
        for k in [vec![-2, -2, 1, 1], vec![2, -2, -2], vec![-3, 1]] {
            let sig = s(&k);
            let g = DualGraph::new(vec![Vertex { genus: 0, markings: (1..=k.len() as u32).collect() }], vec![]).unwrap();
            let cfg = TwistedConfig::new(g, k.clone(), vec![]).unwrap();
            assert_eq!(compact_type_second_kind(&sig, &cfg).unwrap(), !sig.zero_residue_empty());
        }
    }

    #[test]
    fn two_vertex_splits() {
        let sig = s(&[-2, -2, 1, 1]);
        // poles on one side, zeros on the other: degrees force the node
        // orders (2, -4), and (-2,-2,2) is empty
        let g = DualGraph::new(
            vec![Vertex { genus: 0, markings: vec![1, 2] }, Vertex { genus: 0, markings: vec![3, 4] }],
            vec![Edge { ends: [0, 1] }],
        )
        .unwrap();
        let cfg = TwistedConfig::new(g, vec![-2, -2, 1, 1], vec![[2, -4]]).unwrap();
        assert!(cfg.validate().is_empty());
        assert!(!compact_type_second_kind(&sig, &cfg).unwrap());
        // one pole on each side forces a simple pole at the node
        let g = DualGraph::new(
            vec![Vertex { genus: 0, markings: vec![1, 3] }, Vertex { genus: 0, markings: vec![2, 4] }],
            vec![Edge { ends: [0, 1] }],
        )
        .unwrap();
        let cfg = TwistedConfig::new(g, vec![-2, -2, 1, 1], vec![[-1, -1]]).unwrap();
        assert!(cfg.validate().is_empty());
        assert!(!compact_type_second_kind(&sig, &cfg).unwrap());
    }

    #[test]
    fn elliptic_tail() {
        // κ = (-3,1,1,1) in genus 1: (-3,1,0) on a rational component and
        // (1,1,-2) on an elliptic one
        let sig = Signature::new(1, vec![-3, 1, 1, 1]).unwrap();
        let g = DualGraph::new(
            vec![Vertex { genus: 0, markings: vec![1, 2] }, Vertex { genus: 1, markings: vec![3, 4] }],
            vec![Edge { ends: [0, 1] }],
        )
        .unwrap();
        let cfg = TwistedConfig::new(g, vec![-3, 1, 1, 1], vec![[0, -2]]).unwrap();
        assert!(cfg.validate().is_empty());
        assert!(compact_type_second_kind(&sig, &cfg).unwrap());
    }

    #[test]
    fn not_a_tree() {
        let g = DualGraph::new(vec![Vertex { genus: 0, markings: vec![1, 2] }], vec![Edge { ends: [0, 0] }]).unwrap();
        let sig = Signature::new(1, vec![-2, 2]).unwrap();
        let cfg = TwistedConfig::new(g, vec![-2, 2], vec![[-1, -1]]).unwrap();
        assert_eq!(compact_type_second_kind(&sig, &cfg), Err(TwistedError::NotATree));
    }

    #[test]
    fn codimension_identity() {
        let k = s(&[-3, -2, -2, 2, 1, 1, 1]);
        assert_eq!(restriction_codim(&k, std::slice::from_ref(&k)).unwrap(), RestrictionCodim::Codim { codim: 2 });
        // (-3,-2,1,2) ∪ (-2,1,1,-4): node (2,-4)
        let parts = [s(&[-3, -2, 1, 2]), s(&[-2, 2, 1, 1, -4])];
        assert_eq!(restriction_codim(&k, &parts).unwrap(), RestrictionCodim::Codim { codim: 2 });
        let parts = [s(&[-3, 2, -1]), s(&[-2, -2, 1, 1, 1, -1])];
        assert!(restriction_codim(&k, &parts).is_err());
        let parts = [s(&[-3, -2, 2, 1]), s(&[-2, -2, 1, 1])];
        assert!(restriction_codim(&k, &parts).is_err());
    }

    #[test]
    fn empty_component_reported() {
        let k = s(&[-2, -2, -2, 2, 1, 1]);
        // node (2,-4); (-2,-2,2) is empty
        let parts = [s(&[-2, -2, 2]), s(&[-2, 2, 1, 1, -4])];
        assert_eq!(restriction_codim(&k, &parts).unwrap(), RestrictionCodim::Empty { component: 0 });
    }
}
