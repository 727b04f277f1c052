//! Boundary divisor labels `δ_{i:S}` and their canonical representatives.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PicardError;

/// Subsets of `{1..n}` are stored as bitmasks, marking `k` at bit `k - 1`.
pub type Mask = u32;

pub const MAX_MARKINGS: u32 = 24;

pub fn full_mask(n: u32) -> Mask {
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

pub fn mask_of(set: &[u32]) -> Mask {
    set.iter().fold(0, |m, &k| m | (1 << (k - 1)))
}

pub fn members(mask: Mask) -> Vec<u32> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

pub fn has(mask: Mask, k: u32) -> bool {
    mask >> (k - 1) & 1 == 1
}

/// The divisor `δ_{i:S}`: a separating node with a genus `i` side carrying
/// exactly the markings in `S`. Always held in canonical form, the side of
/// smaller genus, ties broken towards the side containing marking 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BoundaryIndex {
    i: u32,
    mask: Mask,
}

impl BoundaryIndex {
    /// Canonical label of the divisor with a genus `i` side marked by `set`
    /// on `M̄_{g,n}`.
    pub fn new(g: u32, n: u32, i: u32, set: &[u32]) -> Result<Self, PicardError> {
        if let Some(&k) = set.iter().find(|&&k| k == 0 || k > n) {
            return Err(PicardError::MarkingOutOfRange { marking: k, n });
        }
        Self::from_mask(g, n, i, mask_of(set))
    }

    pub fn from_mask(g: u32, n: u32, i: u32, mask: Mask) -> Result<Self, PicardError> {
        if i > g || mask & !full_mask(n) != 0 {
            return Err(PicardError::InvalidBoundary { g, n, i, set: members(mask) });
        }
        let size = mask.count_ones();
        if (i == 0 && size < 2) || (i == g && size + 2 > n) {
            return Err(PicardError::InvalidBoundary { g, n, i, set: members(mask) });
        }
        let comp = full_mask(n) & !mask;
        let flip = match i.cmp(&(g - i)) {
            Ordering::Less => false,
            Ordering::Greater => true,
            Ordering::Equal => n > 0 && mask & 1 == 0,
        };
        Ok(if flip {
            BoundaryIndex { i: g - i, mask: comp }
        } else {
            BoundaryIndex { i, mask }
        })
    }

    pub fn genus(&self) -> u32 {
        self.i
    }

    pub fn mask(&self) -> Mask {
        self.mask
    }

    pub fn set(&self) -> Vec<u32> {
        members(self.mask)
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, k: u32) -> bool {
        has(self.mask, k)
    }

    /// The other description `(g - i, S^c)` of the same divisor.
    pub fn complement(&self, g: u32, n: u32) -> (u32, Mask) {
        (g - self.i, full_mask(n) & !self.mask)
    }
}

impl Ord for BoundaryIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.i
            .cmp(&other.i)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.set().cmp(&other.set()))
    }
}

impl PartialOrd for BoundaryIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.i)?;
        if self.mask == 0 {
            return write!(f, "∅");
        }
        write!(f, "{{")?;
        for (k, m) in self.set().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct RawBoundary {
    i: u32,
    #[serde(rename = "S")]
    set: Vec<u32>,
}

impl Serialize for BoundaryIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawBoundary { i: self.i, set: self.set() }.serialize(s)
    }
}

/// Deserialises without a `(g, n)` context, so the label is trusted to be
/// canonical already; [`DivisorClass`](super::DivisorClass) re-validates.
impl<'de> Deserialize<'de> for BoundaryIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawBoundary::deserialize(d)?;
        if raw.set.iter().any(|&k| k == 0 || k > MAX_MARKINGS) {
            return Err(serde::de::Error::custom("marking out of range"));
        }
        Ok(BoundaryIndex { i: raw.i, mask: mask_of(&raw.set) })
    }
}

/// All boundary divisors `δ_{i:S}` of `M̄_{g,n}` (excluding `δ_0`), in
/// canonical form and sorted by `(i, |S|, S)`.
pub fn all_boundary(g: u32, n: u32) -> Vec<BoundaryIndex> {
    let mut out = Vec::new();
    for i in 0..=g / 2 {
        for mask in 0..=full_mask(n) {
            if let Ok(b) = BoundaryIndex::from_mask(g, n, i, mask) {
                if b.i == i && b.mask == mask {
                    out.push(b);
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_representatives() {
        let b = BoundaryIndex::new(2, 3, 1, &[3]).unwrap();
        assert_eq!((b.genus(), b.set()), (1, vec![1, 2]));
        let b = BoundaryIndex::new(2, 3, 1, &[]).unwrap();
        assert_eq!((b.genus(), b.set()), (1, vec![1, 2, 3]));
        let b = BoundaryIndex::new(2, 3, 2, &[1]).unwrap();
        assert_eq!((b.genus(), b.set()), (0, vec![2, 3]));
        let b = BoundaryIndex::new(0, 5, 0, &[2, 3, 4]).unwrap();
        assert_eq!(b.set(), vec![1, 5]);
        let b = BoundaryIndex::new(3, 2, 2, &[1]).unwrap();
        assert_eq!((b.genus(), b.set()), (1, vec![2]));
    }

    #[test]
    fn invalid_labels() {
        assert!(BoundaryIndex::new(0, 4, 0, &[1]).is_err());
        assert!(BoundaryIndex::new(0, 4, 0, &[1, 2, 3]).is_err());
        assert!(BoundaryIndex::new(1, 3, 1, &[1, 2]).is_err());
        assert!(BoundaryIndex::new(1, 3, 0, &[1, 4]).is_err());
    }

    #[test]
    fn counts() {
        // genus zero: subsets containing 1 of size 2..n-2
        assert_eq!(all_boundary(0, 5).len(), 10);
        assert_eq!(all_boundary(0, 6).len(), 25);
        // genus one: every S with |S| >= 2
        assert_eq!(all_boundary(1, 3).len(), 4);
        // genus two, three markings: four with i = 0, four with i = 1
        assert_eq!(all_boundary(2, 3).len(), 8);
        assert_eq!(all_boundary(2, 0).len(), 1);
    }

    #[test]
    fn ordering_is_by_genus_size_then_lex() {
        let all = all_boundary(0, 5);
        let sets: Vec<Vec<u32>> = all.iter().map(|b| b.set()).collect();
        assert_eq!(sets[0], vec![1, 2]);
        assert_eq!(sets[3], vec![1, 5]);
        assert_eq!(sets[4], vec![1, 2, 3]);
    }

    #[test]
    fn serde_shape() {
        let b = BoundaryIndex::new(2, 3, 1, &[3]).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"i":1,"S":[1,2]}"#);
        let back: BoundaryIndex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
    }
}
