use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::HurwitzError;
use crate::signature::Partition;

/// A permutation of `1..=d`, stored as images of `0..d`.
///
/// Products compose left to right: in `a.then(b)`, and in the product of
/// a tuple, the leftmost factor acts first. Under this convention
/// `(12)(13) = (123)`, sending `1 ↦ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm((0..d as u8).collect())
    }

    /// From 0-based images; panics unless `images` is a permutation.
    pub fn from_images(images: Vec<u8>) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!(!std::mem::replace(&mut seen[x as usize], true), "not a permutation");
        }
        Perm(images)
    }

    /// From 1-based cycles on `1..=d`.
    pub fn from_cycles(d: usize, cycles: &[Vec<usize>]) -> Result<Self, HurwitzError> {
        let mut img: Vec<u8> = (0..d as u8).collect();
        let mut used = vec![false; d];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x == 0 || x > d || std::mem::replace(&mut used[x - 1], true) {
                    return Err(HurwitzError::BadPermutation(format!("letter {x} in {cycles:?} on 1..={d}")));
                }
                img[x - 1] = (c[(k + 1) % c.len()] - 1) as u8;
            }
        }
        Ok(Perm(img))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// Image of the 0-based letter `x`.
    #[inline]
    pub fn apply(&self, x: u8) -> u8 {
        self.0[x as usize]
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    /// `c⁻¹ self c`: the permutation `self` with letters renamed by `c`.
    pub fn conjugate(&self, c: &Perm) -> Perm {
        c.inverse().then(self).then(c)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// 1-based cycles of length at least two, each starting at its least letter.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start + 1];
            seen[start] = true;
            let mut y = self.0[start] as usize;
            while y != start {
                c.push(y + 1);
                seen[y] = true;
                y = self.0[y] as usize;
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Partition {
        let mut seen = vec![false; self.0.len()];
        let mut parts = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut y = start;
            while !seen[y] {
                seen[y] = true;
                y = self.0[y] as usize;
                len += 1;
            }
            parts.push(len);
        }
        Partition::new(parts)
    }

    /// Parses cycle notation such as `(12)(34)` or `(1,2)(3,4)` on `1..=d`.
    /// Without commas each digit is a letter.
    pub fn parse(text: &str, d: usize) -> Result<Perm, HurwitzError> {
        let text = text.trim();
        if text.is_empty() || text == "()" || text == "e" {
            return Ok(Perm::identity(d));
        }
        let bad = || HurwitzError::BadPermutation(text.to_string());
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let inner = &body[..close];
            let letters: Vec<usize> = if inner.contains(',') || inner.contains(' ') {
                inner
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?
            } else {
                inner.chars().map(|c| c.to_digit(10).map(|x| x as usize).ok_or_else(bad)).collect::<Result<_, _>>()?
            };
            cycles.push(letters);
            rest = body[close + 1..].trim_start();
        }
        Perm::from_cycles(d, &cycles)
    }

    /// Least `d` such that the cycles of `text` live on `1..=d`.
    pub fn support_size(text: &str) -> usize {
        let digits_only = !text.contains(',') && !text.contains(' ');
        if digits_only {
            text.chars().filter_map(|c| c.to_digit(10)).max().unwrap_or(0) as usize
        } else {
            text.split(|c: char| !c.is_ascii_digit()).filter_map(|s| s.parse().ok()).max().unwrap_or(0)
        }
    }

    /// All permutations of `1..=d` with the given cycle type, in lex order of
    /// images.
    pub fn with_cycle_type(d: usize, ty: &Partition) -> Vec<Perm> {
        use itertools::Itertools;
        let target = ty.padded(d as u32);
        (0..d as u8)
            .permutations(d)
            .map(Perm)
            .filter(|p| p.cycle_type() == target)
            .collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        let wide = self.0.len() > 9;
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(if wide { "," } else { "" }))?;
        }
        Ok(())
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}:{}", self.0.len(), self))
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `"d:(cycles)"`.
impl FromStr for Perm {
    type Err = HurwitzError;
    fn from_str(s: &str) -> Result<Self, HurwitzError> {
        let (d, cycles) = s.split_once(':').ok_or_else(|| HurwitzError::BadPermutation(s.into()))?;
        let d = d.trim().parse().map_err(|_| HurwitzError::BadPermutation(s.into()))?;
        Perm::parse(cycles, d)
    }
}
