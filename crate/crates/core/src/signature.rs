//! Signatures of differentials, ramification profiles, and the predicates
//! that connect them.
//!
//! A [`Signature`] stores the orders of zeros and poles of a differential on
//! a genus `g` curve. Pole orders are kept as negative entries; the `(p_i)`
//! and `(a_i)` views are computed on demand.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("signature has no entries")]
    Empty,
    #[error("entries of a genus {genus} signature must sum to {expected}, found {found}")]
    SumMismatch { genus: u32, expected: i64, found: i64 },
    #[error("cannot parse signature entry {0:?}")]
    Parse(String),
}

/// Orders `k_1, ..., k_m` of a differential on a genus `g` curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSignature", into = "RawSignature")]
pub struct Signature {
    genus: u32,
    entries: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawSignature {
    genus: u32,
    entries: Vec<i64>,
}

impl TryFrom<RawSignature> for Signature {
    type Error = SignatureError;
    fn try_from(raw: RawSignature) -> Result<Self, Self::Error> {
        Signature::new(raw.genus, raw.entries)
    }
}

impl From<Signature> for RawSignature {
    fn from(s: Signature) -> Self {
        RawSignature { genus: s.genus, entries: s.entries }
    }
}

impl Signature {
    /// Validates the degree condition `sum k_i = 2g - 2`.
    pub fn new(genus: u32, entries: Vec<i64>) -> Result<Self, SignatureError> {
        if entries.is_empty() {
            return Err(SignatureError::Empty);
        }
        let expected = 2 * genus as i64 - 2;
        let found: i64 = entries.iter().sum();
        if found != expected {
            return Err(SignatureError::SumMismatch { genus, expected, found });
        }
        Ok(Signature { genus, entries })
    }

    /// Parses a comma separated list such as `-2,-2,4,1,1`.
    pub fn parse(genus: u32, list: &str) -> Result<Self, SignatureError> {
        Signature::new(genus, parse_int_list(list)?)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of poles of order at least two (`m`).
    pub fn nonsimple_poles(&self) -> usize {
        self.entries.iter().filter(|&&k| k <= -2).count()
    }

    /// Number of simple poles (`k`).
    pub fn simple_poles(&self) -> usize {
        self.entries.iter().filter(|&&k| k == -1).count()
    }

    pub fn poles(&self) -> usize {
        self.entries.iter().filter(|&&k| k < 0).count()
    }

    /// Orders `p_i = -k_i` of the non-simple poles, in entry order.
    pub fn pole_orders(&self) -> Vec<i64> {
        self.entries.iter().filter(|&&k| k <= -2).map(|k| -k).collect()
    }

    /// Orders of the genuine zeros (`k_i >= 1`), in entry order.
    pub fn zero_orders(&self) -> Vec<i64> {
        self.entries.iter().copied().filter(|&k| k >= 1).collect()
    }

    /// Whether every pole has zero residue automatically excluded, i.e. the
    /// signature has no simple pole.
    pub fn is_second_kind(&self) -> bool {
        self.simple_poles() == 0
    }

    /// Emptiness of the stratum of differentials with vanishing residues at
    /// every non-simple pole: empty iff there is exactly one simple pole, or
    /// `g = 0`, there are no simple poles, and some zero order is at least
    /// `sum (p_j - 1)`.
    pub fn zero_residue_empty(&self) -> bool {
        if self.simple_poles() == 1 {
            return true;
        }
        if self.genus == 0 && self.simple_poles() == 0 {
            let budget: i64 = self.pole_orders().iter().map(|p| p - 1).sum();
            return self.entries.iter().any(|&k| k >= 1 && k >= budget);
        }
        false
    }

    /// The ramification profile of the exact differentials in this stratum,
    /// viewed as branched covers of the line.
    pub fn ramification_profile(&self) -> Result<RamificationProfile, ProfileError> {
        if self.simple_poles() > 0 {
            return Err(ProfileError::SimplePolePresent);
        }
        let poles = self.pole_orders();
        if poles.is_empty() {
            return Err(ProfileError::NoPole);
        }
        let degree: i64 = poles.iter().map(|p| p - 1).sum();
        let mut parts = vec![Partition::new(poles.iter().map(|p| (p - 1) as u32).collect())];
        for a in self.zero_orders() {
            if a + 1 > degree {
                return Err(ProfileError::DegreeTooSmall { order: a, degree });
            }
            let mut part = vec![(a + 1) as u32];
            part.extend(std::iter::repeat_n(1, (degree - a - 1) as usize));
            parts.push(Partition::new(part));
        }
        RamificationProfile::new(degree as u32, parts)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} (", self.genus)?;
        for (i, k) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

pub fn parse_int_list(list: &str) -> Result<Vec<i64>, SignatureError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| SignatureError::Parse(s.to_string())))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("partition {0:?} has a zero part")]
    ZeroPart(Vec<u32>),
    #[error("partition {parts:?} does not sum to the degree {degree}")]
    PartitionSum { parts: Vec<u32>, degree: u32 },
    #[error("total ramification is odd; no cover exists")]
    Parity,
    #[error("Riemann-Hurwitz gives a non-integral genus")]
    NonIntegralGenus,
    #[error("Riemann-Hurwitz gives negative genus {0}")]
    NegativeGenus(i64),
    #[error("signature has a simple pole; exact differentials have none")]
    SimplePolePresent,
    #[error("signature has no pole of order at least two")]
    NoPole,
    #[error("zero of order {order} cannot occur on a degree {degree} cover")]
    DegreeTooSmall { order: i64, degree: i64 },
    #[error("profile has no branch points")]
    Empty,
    #[error("cannot parse profile: {0}")]
    Parse(String),
}

/// An integer partition, parts sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `sum (e - 1)`, the ramification contributed to Riemann-Hurwitz.
    pub fn ramification(&self) -> u32 {
        self.0.iter().map(|e| e - 1).sum()
    }

    /// At most one part differs from one.
    pub fn is_pure(&self) -> bool {
        self.0.iter().filter(|&&e| e != 1).count() <= 1
    }

    /// Cycle type of a transposition.
    pub fn is_simple(&self) -> bool {
        self.0.iter().filter(|&&e| e != 1).count() == 1 && self.0[0] == 2
    }

    /// Pads with ones up to `degree`.
    pub fn padded(&self, degree: u32) -> Partition {
        let mut parts = self.0.clone();
        let total = self.total();
        if total < degree {
            parts.extend(std::iter::repeat_n(1, (degree - total) as usize));
        }
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// A multiset of partitions of `degree`, one per branch point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RamificationProfile {
    degree: u32,
    parts: Vec<Partition>,
}

impl RamificationProfile {
    /// Checks that every partition sums to the degree and that the total
    /// ramification is even.
    pub fn new(degree: u32, parts: Vec<Partition>) -> Result<Self, ProfileError> {
        if parts.is_empty() {
            return Err(ProfileError::Empty);
        }
        for p in &parts {
            if p.parts().contains(&0) {
                return Err(ProfileError::ZeroPart(p.parts().to_vec()));
            }
            if p.total() != degree {
                return Err(ProfileError::PartitionSum { parts: p.parts().to_vec(), degree });
            }
        }
        let total: u32 = parts.iter().map(Partition::ramification).sum();
        if !total.is_multiple_of(2) {
            return Err(ProfileError::Parity);
        }
        Ok(RamificationProfile { degree, parts })
    }

    /// Parses `"[2,2,1],[3,1,1]"`; the degree is read off the partitions,
    /// and short partitions are padded with ones.
    pub fn parse(text: &str) -> Result<Self, ProfileError> {
        let raw = parse_partition_list(text)?;
        let degree = raw.iter().map(Partition::total).max().ok_or(ProfileError::Empty)?;
        RamificationProfile::new(degree, raw.iter().map(|p| p.padded(degree)).collect())
    }

    /// Like [`parse`](Self::parse) but with an explicit degree.
    pub fn parse_with_degree(text: &str, degree: u32) -> Result<Self, ProfileError> {
        let raw = parse_partition_list(text)?;
        RamificationProfile::new(degree, raw.iter().map(|p| p.padded(degree)).collect())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn branch_points(&self) -> usize {
        self.parts.len()
    }

    /// Genus of a connected cover with this branching, from Riemann-Hurwitz.
    pub fn genus(&self) -> Result<u32, ProfileError> {
        let total: i64 = self.parts.iter().map(|p| p.ramification() as i64).sum();
        genus_from_ramification(self.degree as i64, total)
    }

    pub fn non_pure_count(&self) -> usize {
        self.parts.iter().filter(|p| !p.is_pure()).count()
    }

    pub fn simple_count(&self) -> usize {
        self.parts.iter().filter(|p| p.is_simple()).count()
    }

    /// Partitions in a canonical (sorted) order.
    pub fn sorted(&self) -> RamificationProfile {
        let mut parts = self.parts.clone();
        parts.sort();
        RamificationProfile { degree: self.degree, parts }
    }

    /// Which irreducibility criterion, if any, this profile satisfies for
    /// covers of genus `genus`.
    pub fn theorem_hypothesis(&self, genus: u32) -> HypothesisVerdict {
        if self.non_pure_count() > 1 {
            return HypothesisVerdict::NotCovered;
        }
        let simple = self.simple_count() as i64;
        let d = self.degree as i64;
        if simple >= 3 * genus as i64 + d - 1 {
            HypothesisVerdict::GeneralGenusApplies
        } else if genus == 0 && simple >= d - 3 {
            HypothesisVerdict::GenusZeroApplies
        } else {
            HypothesisVerdict::NotCovered
        }
    }
}

impl fmt::Display for RamificationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for RamificationProfile {
    type Err = ProfileError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RamificationProfile::parse(s)
    }
}

/// `2 - 2g = 2d - total`, solved for a nonnegative integer `g`.
pub fn genus_from_ramification(degree: i64, total: i64) -> Result<u32, ProfileError> {
    let twice = total - 2 * degree + 2;
    if twice % 2 != 0 {
        return Err(ProfileError::NonIntegralGenus);
    }
    let g = twice / 2;
    if g < 0 {
        return Err(ProfileError::NegativeGenus(g));
    }
    Ok(g as u32)
}

fn parse_partition_list(text: &str) -> Result<Vec<Partition>, ProfileError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let Some(body) = rest.strip_prefix('[') else {
            return Err(ProfileError::Parse(format!("expected '[' at {rest:?}")));
        };
        let close = body.find(']').ok_or_else(|| ProfileError::Parse("unclosed '['".into()))?;
        let parts = body[..close]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| ProfileError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if parts.is_empty() {
            return Err(ProfileError::Parse("empty partition".into()));
        }
        out.push(Partition::new(parts));
        rest = &body[close + 1..];
    }
    if out.is_empty() {
        return Err(ProfileError::Empty);
    }
    Ok(out)
}

/// Outcome of [`RamificationProfile::theorem_hypothesis`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HypothesisVerdict {
    /// At most one non-pure branch point and at least `3g + d - 1` simple ones.
    GeneralGenusApplies,
    /// Genus zero, at most one non-pure branch point and at least `d - 3`
    /// simple ones.
    GenusZeroApplies,
    NotCovered,
}
