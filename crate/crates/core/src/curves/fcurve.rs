//! F-curves on `M̄_{0,n}` and the F-nef test.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CurveError;
use crate::picard::{full_mask, members, DivisorClass, Mask, PicardSpace};
use crate::scalar::{int, Scalar};

/// The F-curve attached to a partition of `{1..n}` into four nonempty
/// blocks. Blocks are stored sorted by their smallest marking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FCurve {
    n: u32,
    blocks: [Mask; 4],
}

impl FCurve {
    pub fn new(n: u32, blocks: [Vec<u32>; 4]) -> Result<Self, CurveError> {
        let mut masks = [0 as Mask; 4];
        let mut seen: Mask = 0;
        for (m, b) in masks.iter_mut().zip(&blocks) {
            if b.is_empty() {
                return Err(CurveError::BadPartition("empty block".into()));
            }
            for &k in b {
                if k == 0 || k > n || seen >> (k - 1) & 1 == 1 {
                    return Err(CurveError::BadPartition(format!("marking {k} repeated or out of range")));
                }
                seen |= 1 << (k - 1);
                *m |= 1 << (k - 1);
            }
        }
        if seen != full_mask(n) {
            return Err(CurveError::BadPartition("blocks do not cover every marking".into()));
        }
        masks.sort_by_key(|m| m.trailing_zeros());
        Ok(FCurve { n, blocks: masks })
    }

    pub fn markings(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> Vec<Vec<u32>> {
        self.blocks.iter().map(|&m| members(m)).collect()
    }

    /// `F · δ_{0:S}`: `1` if `S` is a union of two blocks, `-1` if `S` or
    /// its complement is a single block, `0` otherwise.
    pub fn pair_boundary(&self, mask: Mask) -> i64 {
        let comp = full_mask(self.n) & !mask;
        if self.blocks.iter().any(|&b| b == mask || b == comp) {
            return -1;
        }
        let unions = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b)));
        for (a, b) in unions {
            if self.blocks[a] | self.blocks[b] == mask {
                return 1;
            }
        }
        0
    }
}

impl fmt::Display for FCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F(")?;
        for (k, b) in self.blocks().iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            let s: Vec<String> = b.iter().map(u32::to_string).collect();
            write!(f, "{}", s.join(","))?;
        }
        write!(f, ")")
    }
}

impl Serialize for FCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let blocks: Vec<Vec<u32>> = Vec::deserialize(d)?;
        let n = blocks.iter().map(Vec::len).sum::<usize>() as u32;
        let arr: [Vec<u32>; 4] = blocks
            .try_into()
            .map_err(|_| serde::de::Error::custom("an F-curve has exactly four blocks"))?;
        FCurve::new(n, arr).map_err(serde::de::Error::custom)
    }
}

/// All F-curves of `M̄_{0,n}`, in the order of their restricted growth
/// strings.
pub fn enumerate_fcurves(n: u32) -> Vec<FCurve> {
    let mut out = Vec::new();
    if n < 4 {
        return out;
    }
    let mut labels = vec![0usize; n as usize];
    fn go(pos: usize, used: usize, labels: &mut Vec<usize>, n: u32, out: &mut Vec<FCurve>) {
        let left = n as usize - pos;
        if used + left < 4 {
            return;
        }
        if pos == n as usize {
            let mut blocks = [0 as Mask; 4];
            for (k, &l) in labels.iter().enumerate() {
                blocks[l] |= 1 << k;
            }
            out.push(FCurve { n, blocks });
            return;
        }
        for l in 0..=used.min(3) {
            labels[pos] = l;
            go(pos + 1, used.max(l + 1), labels, n, out);
        }
    }
    go(0, 0, &mut labels, n, &mut out);
    out
}

/// Pairs genus-zero classes with F-curves through the boundary-only normal
/// form. Reuse one per `n`.
pub struct FCurvePairing<T> {
    space: PicardSpace<T>,
    curves: Vec<FCurve>,
}

/// Outcome of the F-nef test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FNefReport<T> {
    pub curves: usize,
    /// Curves with negative intersection, with the intersection number.
    pub violations: Vec<(FCurve, T)>,
}

impl<T> FNefReport<T> {
    pub fn is_fnef(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<T: Scalar> FCurvePairing<T> {
    pub fn new(n: u32) -> Self {
        FCurvePairing { space: PicardSpace::new(0, n), curves: enumerate_fcurves(n) }
    }

    pub fn curves(&self) -> &[FCurve] {
        &self.curves
    }

    fn boundary_form(&self, c: &DivisorClass<T>) -> Result<DivisorClass<T>, CurveError> {
        if c.genus() != 0 {
            return Err(CurveError::NotGenusZero(c.genus()));
        }
        let nf = self.space.normal_form(c)?;
        debug_assert!(nf.is_psi_free());
        Ok(nf)
    }

    fn pair_reduced(nf: &DivisorClass<T>, f: &FCurve) -> T {
        nf.boundary()
            .iter()
            .map(|(b, v)| v.clone() * int(f.pair_boundary(b.mask())))
            .fold(T::zero(), |a, x| a + x)
    }

    pub fn pair(&self, c: &DivisorClass<T>, f: &FCurve) -> Result<T, CurveError> {
        Ok(Self::pair_reduced(&self.boundary_form(c)?, f))
    }

    /// Pairs `c` with every F-curve in parallel; the report lists
    /// violations in enumeration order.
    pub fn check(&self, c: &DivisorClass<T>) -> Result<FNefReport<T>, CurveError> {
        let nf = self.boundary_form(c)?;
        let violations = self
            .curves
            .par_iter()
            .filter_map(|f| {
                let v = Self::pair_reduced(&nf, f);
                v.is_negative().then_some((*f, v))
            })
            .collect();
        Ok(FNefReport { curves: self.curves.len(), violations })
    }
}

/// `F · c` for a genus-zero class.
pub fn pair_fcurve<T: Scalar>(c: &DivisorClass<T>, f: &FCurve) -> Result<T, CurveError> {
    if c.markings() != f.markings() {
        return Err(CurveError::Picard(crate::picard::PicardError::DimensionMismatch));
    }
    FCurvePairing::new(c.markings()).pair(c, f)
}

pub fn is_fnef<T: Scalar>(c: &DivisorClass<T>) -> Result<FNefReport<T>, CurveError> {
    FCurvePairing::new(c.markings()).check(c)
}
