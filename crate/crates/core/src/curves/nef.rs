//! Inductive nef certificates for genus-zero classes without simple poles.
//!
//! A class on `M̄_{0,n}` is nef once it is boundary effective, every curve
//! in the interior meets it nonnegatively, and its restriction to each
//! boundary divisor `δ_{0:S}` is a sum of pullbacks of classes of the same
//! kind on fewer markings. For `n ≤ 7` the F-nef test is conclusive.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::fcurve::FCurvePairing;
use super::CurveError;
use crate::picard::{all_boundary, boundary_effective_witness, zr_div_i, zr_restriction, PicardSpace, RestrictionSide};
use crate::Rational;

/// Largest `n` at which the F-nef test alone certifies nefness.
pub const FNEF_LIMIT: u32 = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertNode {
    /// Checked against every F-curve.
    Leaf { d: Vec<i64>, fcurves: usize },
    /// Same multiset of orders as a node certified earlier.
    Seen { d: Vec<i64> },
    /// Boundary effective, with the restriction to every boundary divisor
    /// certified below.
    Node { d: Vec<i64>, restrictions: Vec<RestrictionCert> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionCert {
    pub set: Vec<u32>,
    pub children: Vec<CertNode>,
    /// Sides that contribute nothing, with the reason.
    pub pruned: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefCertificate {
    pub root: CertNode,
}

impl NefCertificate {
    /// Number of F-nef leaves and boundary-effective nodes.
    pub fn size(&self) -> (usize, usize) {
        fn walk(n: &CertNode, acc: &mut (usize, usize)) {
            match n {
                CertNode::Leaf { .. } => acc.0 += 1,
                CertNode::Seen { .. } => {}
                CertNode::Node { restrictions, .. } => {
                    acc.1 += 1;
                    for r in restrictions {
                        for c in &r.children {
                            walk(c, acc);
                        }
                    }
                }
            }
        }
        let mut acc = (0, 0);
        walk(&self.root, &mut acc);
        acc
    }
}

struct Builder {
    seen: Mutex<HashMap<Vec<i64>, ()>>,
    pairings: Mutex<HashMap<u32, std::sync::Arc<FCurvePairing<Rational>>>>,
}

impl Builder {
    fn pairing(&self, n: u32) -> std::sync::Arc<FCurvePairing<Rational>> {
        let mut p = self.pairings.lock().expect("pairing cache");
        p.entry(n).or_insert_with(|| std::sync::Arc::new(FCurvePairing::new(n))).clone()
    }

    fn certify(&self, d: &[i64], path: &mut Vec<Vec<u32>>) -> Result<CertNode, CurveError> {
        let mut key = d.to_vec();
        key.sort_unstable();
        if self.seen.lock().expect("memo").contains_key(&key) {
            return Ok(CertNode::Seen { d: d.to_vec() });
        }
        let n = d.len() as u32;
        let fail = |path: &Vec<Vec<u32>>, reason: String| CurveError::RecursionFailure {
            path: path.clone(),
            d: d.to_vec(),
            reason,
        };
        let node = if n <= FNEF_LIMIT {
            let z = zr_div_i::<Rational>(0, d)?;
            let report = self.pairing(n).check(&z)?;
            if !report.is_fnef() {
                return Err(fail(path, format!("{} F-curves pair negatively", report.violations.len())));
            }
            CertNode::Leaf { d: d.to_vec(), fcurves: report.curves }
        } else {
            let w = boundary_effective_witness::<Rational>(d)?;
            if w.class.boundary().values().any(|v| v.is_negative()) || !w.class.is_psi_free() {
                return Err(fail(path, "boundary witness has a negative coefficient".into()));
            }
            let z = zr_div_i::<Rational>(0, d)?;
            let space = PicardSpace::new(0, n);
            if !space.equals_mod_relations(&w.class, &z.scale(&crate::q(2)))? {
                return Err(fail(path, "boundary witness is not equivalent to 2Z".into()));
            }
            let mut restrictions = Vec::new();
            for b in all_boundary(0, n) {
                let set = b.set();
                path.push(set.clone());
                let mut cert = RestrictionCert { set: set.clone(), children: Vec::new(), pruned: Vec::new() };
                for r in zr_restriction(d, &set)? {
                    for side in [r.first, r.second] {
                        match side {
                            RestrictionSide::Stratum { retained, .. } => {
                                cert.children.push(self.certify(&retained, path)?);
                            }
                            RestrictionSide::Vanishes { reason } => cert.pruned.push(reason),
                            RestrictionSide::Empty => cert.pruned.push("empty stratum".into()),
                        }
                    }
                }
                path.pop();
                restrictions.push(cert);
            }
            CertNode::Node { d: d.to_vec(), restrictions }
        };
        self.seen.lock().expect("memo").insert(key, ());
        Ok(node)
    }
}

/// Builds a nef certificate for `Z` with retained orders `d` on `M̄_{0,n}`.
pub fn nef_certificate(d: &[i64]) -> Result<NefCertificate, CurveError> {
    let builder = Builder { seen: Mutex::new(HashMap::new()), pairings: Mutex::new(HashMap::new()) };
    let root = builder.certify(d, &mut Vec::new())?;
    Ok(NefCertificate { root })
}
