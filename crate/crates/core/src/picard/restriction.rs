//! Restriction of a genus-zero class without simple poles to a boundary
//! divisor `δ_{0:S}`, as a sum of pulled back classes on the two sides.

use serde::{Deserialize, Serialize};

use super::boundary::{full_mask, has, members, Mask};
use super::formulas::full_signature;
use super::PicardError;
use crate::signature::Signature;

/// `n_{S,t} = -2 - t - d_S`, the order at the node on the `S` side when `t`
/// of the forgotten zeros go there.
pub fn n_st(d_s: i64, t: i64) -> i64 {
    -2 - t - d_s
}

/// One side of the restriction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RestrictionSide {
    /// A genuine zero-residue divisor on the side. `retained` lists the node
    /// first, then the markings of the side in increasing order.
    Stratum { markings: Vec<u32>, retained: Vec<i64>, signature: Signature },
    /// The side's stratum has the wrong codimension, so its pushforward is not
    /// a divisor and contributes nothing.
    Vanishes { reason: String },
    /// No differential exists on the side: the node is a lone simple pole,
    /// or the side's signature is otherwise empty.
    Empty,
}

impl RestrictionSide {
    pub fn retained(&self) -> Option<&[i64]> {
        match self {
            RestrictionSide::Stratum { retained, .. } => Some(retained),
            _ => None,
        }
    }
}

/// The restriction data for one orientation of `S`, chosen so that
/// `f_S = d_S + s^- ≤ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZrRestriction {
    pub set: Vec<u32>,
    pub f_s: i64,
    /// Poles of `d` in `S`.
    pub s_minus: i64,
    /// Total number of poles of `d`.
    pub poles: i64,
    /// `n_{S, s^- - 2}`, the node order on the `S` side.
    pub node_first: i64,
    /// `n_{S, s^- - 1}`; the node on the complement has order `-2 - n`.
    pub node_second: i64,
    /// `κ' = (n_{S,s^--2}, d(S), 1^{s^--2})`.
    pub first: RestrictionSide,
    /// `κ'' = (-2 - n_{S,s^--1}, d(S^c), 1^{p-s^--1})`.
    pub second: RestrictionSide,
}

fn side(markings: Vec<u32>, node: i64, d: &[i64], ones: i64) -> RestrictionSide {
    if node == -1 {
        return RestrictionSide::Empty;
    }
    if ones < 0 {
        return RestrictionSide::Vanishes { reason: format!("would need {ones} forgotten zeros") };
    }
    let mut retained = vec![node];
    retained.extend(markings.iter().map(|&k| d[k as usize - 1]));
    match full_signature(0, &retained) {
        Ok(signature) if signature.zero_residue_empty() => RestrictionSide::Empty,
        Ok(signature) => RestrictionSide::Stratum { markings, retained, signature },
        Err(e) => RestrictionSide::Vanishes { reason: e.to_string() },
    }
}

fn orient(d: &[i64], mask: Mask) -> ZrRestriction {
    let n = d.len() as u32;
    let comp = full_mask(n) & !mask;
    let set = members(mask);
    let d_s: i64 = set.iter().map(|&k| d[k as usize - 1]).sum();
    let s_minus = set.iter().filter(|&&k| d[k as usize - 1] < 0).count() as i64;
    let poles = d.iter().filter(|&&x| x < 0).count() as i64;
    let node_first = n_st(d_s, s_minus - 2);
    let node_second = n_st(d_s, s_minus - 1);
    let first = side(set.clone(), node_first, d, s_minus - 2);
    let second = side(members(comp), -2 - node_second, d, poles - s_minus - 1);
    ZrRestriction { set, f_s: d_s + s_minus, s_minus, poles, node_first, node_second, first, second }
}

/// Restrictions of `Z_κ` with `κ = (d, 1^{p-2})` to `δ_{0:S}`. Returns one
/// entry per orientation of `S` with `f_S ≤ 0`: two when `f_S = 0`.
pub fn zr_restriction(d: &[i64], set: &[u32]) -> Result<Vec<ZrRestriction>, PicardError> {
    let n = d.len() as u32;
    if d.contains(&-1) {
        return Err(PicardError::SignatureShape("simple poles are not allowed here".into()));
    }
    full_signature(0, d)?;
    if let Some(&k) = set.iter().find(|&&k| k == 0 || k > n) {
        return Err(PicardError::MarkingOutOfRange { marking: k, n });
    }
    let mask = super::boundary::mask_of(set);
    let size = mask.count_ones();
    if size < 2 || size + 2 > n {
        return Err(PicardError::InvalidBoundary { g: 0, n, i: 0, set: members(mask) });
    }
    let comp = full_mask(n) & !mask;
    let f: i64 = (1..=n).filter(|&k| has(mask, k)).map(|k| d[k as usize - 1]).sum::<i64>()
        + (1..=n).filter(|&k| has(mask, k) && d[k as usize - 1] < 0).count() as i64;
    Ok(match f {
        f if f < 0 => vec![orient(d, mask)],
        f if f > 0 => vec![orient(d, comp)],
        _ => vec![orient(d, mask), orient(d, comp)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_poles_on_one_side() {
        // κ = (-2,-2,1,1), S = {1,2}: f_S = -2
        let r = zr_restriction(&[-2, -2, 1, 1], &[1, 2]).unwrap();
        assert_eq!(r.len(), 1);
        let r = &r[0];
        assert_eq!(r.f_s, -2);
        // (2, -2, -2) has a zero too large for its poles
        assert_eq!(r.first, RestrictionSide::Empty);
        // all poles sit in S, so the complement has no room for forgotten zeros
        assert!(matches!(r.second, RestrictionSide::Vanishes { .. }));
        let r = &zr_restriction(&[-3, -2, -2, 2, 1, 1], &[2, 3]).unwrap()[0];
        assert_eq!(r.f_s, -2);
        assert_eq!(r.first, RestrictionSide::Empty);
        assert_eq!(r.second.retained().unwrap(), &[-3, -3, 2, 1, 1]);
    }

    #[test]
    fn balanced_split_is_empty_on_one_side() {
        // S = {1,2,4,5}: f_S = -2 + 2 = 0, and likewise for the complement
        let r = zr_restriction(&[-2, -2, -2, 1, 1, 1], &[1, 2, 4, 5]).unwrap();
        assert_eq!(r.len(), 2);
        for o in &r {
            assert_eq!(o.f_s, 0);
            assert_eq!(o.second, RestrictionSide::Empty);
            assert_eq!(o.node_second, -1);
        }
        assert_eq!(r[0].first.retained().unwrap(), &[0, -2, -2, 1, 1]);
        assert!(matches!(r[1].first, RestrictionSide::Vanishes { .. }));
    }

    #[test]
    fn pole_free_side_vanishes() {
        // S = {3,4} has no pole: s^- = 0, so κ' needs -2 forgotten zeros
        let r = zr_restriction(&[-2, -2, 1, 1], &[3, 4]).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].set, vec![1, 2]);
        let r = zr_restriction(&[-2, -2, 0, 0, 2], &[3, 4]).unwrap();
        assert_eq!(r[0].set, vec![3, 4]);
        assert!(matches!(r[0].first, RestrictionSide::Vanishes { .. }));
    }

    #[test]
    fn bookkeeping() {
        let d = [-3, -2, -2, 2, 1, 1];
        for mask in 1..(1u32 << 6) {
            let set = members(mask);
            if set.len() < 2 || set.len() > 4 {
                continue;
            }
            for r in zr_restriction(&d, &set).unwrap() {
                assert!(r.f_s <= 0);
                assert_eq!(r.node_first, -r.f_s);
                assert_eq!(r.node_second, -1 - r.f_s);
                for s in [&r.first, &r.second] {
                    if let RestrictionSide::Stratum { signature, .. } = s {
                        assert_eq!(signature.entries().iter().sum::<i64>(), -2);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(zr_restriction(&[-2, -2, 1, 1], &[1]).is_err());
        assert!(zr_restriction(&[-2, -1, -1, 1, 1], &[1, 2]).is_err());
        assert!(zr_restriction(&[-2, -2, 1, 1], &[1, 7]).is_err());
    }
}
