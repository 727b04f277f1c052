//! Divisor classes as coefficient vectors on the standard generators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::boundary::{all_boundary, BoundaryIndex, Mask};
use super::PicardError;
use crate::scalar::Scalar;

/// One of the generators `λ`, `ψ_i`, `δ_0`, `δ_{i:S}` of the Picard group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    Lambda,
    Psi(u32),
    Delta0,
    Boundary(BoundaryIndex),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Lambda => write!(f, "λ"),
            Generator::Psi(i) => write!(f, "ψ{i}"),
            Generator::Delta0 => write!(f, "δ0"),
            Generator::Boundary(b) => write!(f, "δ{{{b}}}"),
        }
    }
}

/// The generators of `Pic(M̄_{g,n}) ⊗ Q` in the fixed coordinate order:
/// `λ`, `ψ_1..ψ_n`, `δ_0`, then boundary divisors by `(i, |S|, S)`.
/// In genus zero `λ` and `δ_0` vanish and are omitted.
pub fn generators(g: u32, n: u32) -> Vec<Generator> {
    let mut out = Vec::new();
    if g > 0 {
        out.push(Generator::Lambda);
    }
    out.extend((1..=n).map(Generator::Psi));
    if g > 0 {
        out.push(Generator::Delta0);
    }
    out.extend(all_boundary(g, n).into_iter().map(Generator::Boundary));
    out
}

/// A `Q`-divisor class on `M̄_{g,n}` written in the standard generators.
///
/// Coefficients are stored sparsely; absent keys are zero. Two classes are
/// equal as values only if they agree coefficient-wise; use
/// [`PicardSpace::equals_mod_relations`](super::PicardSpace::equals_mod_relations)
/// for equality in the Picard group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct DivisorClass<T> {
    g: u32,
    n: u32,
    lambda: T,
    psi: Vec<T>,
    delta0: T,
    boundary: BTreeMap<BoundaryIndex, T>,
}

impl<T: Scalar> DivisorClass<T> {
    pub fn zero(g: u32, n: u32) -> Self {
        DivisorClass {
            g,
            n,
            lambda: T::zero(),
            psi: vec![T::zero(); n as usize],
            delta0: T::zero(),
            boundary: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn markings(&self) -> u32 {
        self.n
    }

    pub fn lambda(&self) -> &T {
        &self.lambda
    }

    pub fn delta0(&self) -> &T {
        &self.delta0
    }

    /// Coefficient of `ψ_i`, markings numbered from 1.
    pub fn psi(&self, i: u32) -> T {
        self.psi[(i - 1) as usize].clone()
    }

    pub fn boundary(&self) -> &BTreeMap<BoundaryIndex, T> {
        &self.boundary
    }

    pub fn boundary_coeff(&self, b: &BoundaryIndex) -> T {
        self.boundary.get(b).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficient of `δ_{i:S}` for any (not necessarily canonical) label.
    pub fn delta(&self, i: u32, set: &[u32]) -> Result<T, PicardError> {
        let b = BoundaryIndex::new(self.g, self.n, i, set)?;
        Ok(self.boundary_coeff(&b))
    }

    pub fn coeff(&self, gen: &Generator) -> T {
        match gen {
            Generator::Lambda => self.lambda.clone(),
            Generator::Psi(i) => self.psi(*i),
            Generator::Delta0 => self.delta0.clone(),
            Generator::Boundary(b) => self.boundary_coeff(b),
        }
    }

    pub fn add_lambda(&mut self, c: T) {
        self.lambda = self.lambda.clone() + c;
    }

    pub fn add_delta0(&mut self, c: T) {
        self.delta0 = self.delta0.clone() + c;
    }

    pub fn add_psi(&mut self, i: u32, c: T) {
        let slot = &mut self.psi[(i - 1) as usize];
        *slot = slot.clone() + c;
    }

    pub fn add_boundary(&mut self, b: BoundaryIndex, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.boundary.entry(b).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.boundary.remove(&b);
        }
    }

    /// Adds `c · δ_{i:S}` for any label.
    pub fn add_delta(&mut self, i: u32, set: &[u32], c: T) -> Result<(), PicardError> {
        let b = BoundaryIndex::new(self.g, self.n, i, set)?;
        self.add_boundary(b, c);
        Ok(())
    }

    /// Adds `c · δ_{i:S}` for a label given by a bitmask, canonicalising it.
    pub fn add_delta_mask(&mut self, i: u32, mask: Mask, c: T) -> Result<(), PicardError> {
        let b = BoundaryIndex::from_mask(self.g, self.n, i, mask)?;
        self.add_boundary(b, c);
        Ok(())
    }

    pub fn add_generator(&mut self, gen: &Generator, c: T) {
        match gen {
            Generator::Lambda => self.add_lambda(c),
            Generator::Psi(i) => self.add_psi(*i, c),
            Generator::Delta0 => self.add_delta0(c),
            Generator::Boundary(b) => self.add_boundary(*b, c),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.g, self.n);
        out.lambda = self.lambda.clone() * c.clone();
        out.delta0 = self.delta0.clone() * c.clone();
        for (o, p) in out.psi.iter_mut().zip(&self.psi) {
            *o = p.clone() * c.clone();
        }
        for (b, v) in &self.boundary {
            out.add_boundary(*b, v.clone() * c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.is_zero()
            && self.delta0.is_zero()
            && self.psi.iter().all(|x| x.is_zero())
            && self.boundary.is_empty()
    }

    /// Every `ψ` coefficient vanishes.
    pub fn is_psi_free(&self) -> bool {
        self.psi.iter().all(|x| x.is_zero())
    }

    /// Coefficients in the order of [`generators`].
    pub fn to_vec(&self) -> Vec<T> {
        generators(self.g, self.n).iter().map(|gen| self.coeff(gen)).collect()
    }

    pub fn from_vec(g: u32, n: u32, v: &[T]) -> Self {
        let gens = generators(g, n);
        assert_eq!(gens.len(), v.len(), "coordinate vector has the wrong length");
        let mut out = Self::zero(g, n);
        for (gen, c) in gens.iter().zip(v) {
            out.add_generator(gen, c.clone());
        }
        out
    }

    /// Nonzero coefficients in generator order.
    pub fn terms(&self) -> Vec<(Generator, T)> {
        let mut out = Vec::new();
        if !self.lambda.is_zero() {
            out.push((Generator::Lambda, self.lambda.clone()));
        }
        for (i, c) in self.psi.iter().enumerate() {
            if !c.is_zero() {
                out.push((Generator::Psi(i as u32 + 1), c.clone()));
            }
        }
        if !self.delta0.is_zero() {
            out.push((Generator::Delta0, self.delta0.clone()));
        }
        for (b, c) in &self.boundary {
            out.push((Generator::Boundary(*b), c.clone()));
        }
        out
    }

    /// Checks that the stored labels are canonical for `(g, n)` and that
    /// `λ` and `δ_0` vanish in genus zero. Used after deserialisation.
    pub fn validate(&self) -> Result<(), PicardError> {
        if self.psi.len() != self.n as usize {
            return Err(PicardError::DimensionMismatch);
        }
        if self.g == 0 && !(self.lambda.is_zero() && self.delta0.is_zero()) {
            return Err(PicardError::GenusZeroLambda);
        }
        for b in self.boundary.keys() {
            let c = BoundaryIndex::from_mask(self.g, self.n, b.genus(), b.mask())?;
            if c != *b {
                return Err(PicardError::InvalidBoundary {
                    g: self.g,
                    n: self.n,
                    i: b.genus(),
                    set: b.set(),
                });
            }
        }
        Ok(())
    }

    fn same_space(&self, other: &Self) -> Result<(), PicardError> {
        if self.g != other.g || self.n != other.n {
            return Err(PicardError::DimensionMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PicardError> {
        self.same_space(other)?;
        let mut out = self.clone();
        out.lambda = out.lambda + other.lambda.clone();
        out.delta0 = out.delta0 + other.delta0.clone();
        for (o, p) in out.psi.iter_mut().zip(&other.psi) {
            *o = o.clone() + p.clone();
        }
        for (b, v) in &other.boundary {
            out.add_boundary(*b, v.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PicardError> {
        self.try_add(&-other.clone())
    }
}

impl<T: Scalar> Add for DivisorClass<T> {
    type Output = DivisorClass<T>;
    /// Panics if the classes live on different spaces; see [`DivisorClass::try_add`].
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("classes on different moduli spaces")
    }
}

impl<T: Scalar> Sub for DivisorClass<T> {
    type Output = DivisorClass<T>;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("classes on different moduli spaces")
    }
}

impl<T: Scalar> Neg for DivisorClass<T> {
    type Output = DivisorClass<T>;
    fn neg(self) -> Self {
        self.scale(&-T::one())
    }
}

fn write_coeff<T: Scalar + fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &T,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if abs != T::one() {
        write!(f, "{abs}")?;
        if format!("{abs}").contains('/') {
            write!(f, "·")?;
        }
    }
    Ok(())
}

impl<T: Scalar + fmt::Display> fmt::Display for DivisorClass<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (gen, c)) in terms.iter().enumerate() {
            write_coeff(f, k == 0, c)?;
            write!(f, "{gen}")?;
        }
        Ok(())
    }
}

impl<T: Scalar + fmt::Display> DivisorClass<T> {
    pub fn to_latex(&self) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (gen, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            if abs != T::one() {
                let s = format!("{abs}");
                match s.split_once('/') {
                    Some((a, b)) => out.push_str(&format!("\\frac{{{a}}}{{{b}}}")),
                    None => out.push_str(&s),
                }
            }
            out.push_str(&match gen {
                Generator::Lambda => "\\lambda".to_string(),
                Generator::Psi(i) => format!("\\psi_{{{i}}}"),
                Generator::Delta0 => "\\delta_0".to_string(),
                Generator::Boundary(b) => {
                    let set = if b.is_empty() {
                        "\\emptyset".to_string()
                    } else {
                        let items: Vec<String> = b.set().iter().map(u32::to_string).collect();
                        format!("\\{{{}\\}}", items.join(","))
                    };
                    format!("\\delta_{{{}:{}}}", b.genus(), set)
                }
            });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, Class};

    #[test]
    fn generator_counts() {
        assert_eq!(generators(0, 5).len(), 15);
        assert_eq!(generators(0, 6).len(), 31);
        assert_eq!(generators(2, 3).len(), 1 + 3 + 1 + 8);
    }

    #[test]
    fn vector_round_trip() {
        let mut c = Class::zero(1, 3);
        c.add_lambda(q(2));
        c.add_psi(2, q(-1));
        c.add_delta(0, &[1, 3], q(5)).unwrap();
        let v = c.to_vec();
        assert_eq!(Class::from_vec(1, 3, &v), c);
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let mut a = Class::zero(0, 4);
        a.add_delta(0, &[1, 2], q(3)).unwrap();
        let b = a.clone();
        assert!((a.clone() - b).is_zero());
        assert_eq!((a.clone() + a.clone()).delta(0, &[3, 4]).unwrap(), q(6));
        assert!(a.try_add(&Class::zero(0, 5)).is_err());
    }

    #[test]
    fn display_forms() {
        let mut c = Class::zero(2, 3);
        c.add_lambda(q(-1));
        c.add_psi(3, q(10));
        c.add_delta(1, &[], q(-1)).unwrap();
        assert_eq!(c.to_string(), "-λ + 10ψ3 - δ{1:{1,2,3}}");
        assert_eq!(c.to_latex(), "-\\lambda + 10\\psi_{3} - \\delta_{1:\\{1,2,3\\}}");
        assert_eq!(Class::zero(0, 3).to_string(), "0");
    }

    #[test]
    fn validate_rejects_noncanonical() {
        let mut c = Class::zero(0, 4);
        let raw: BoundaryIndex = serde_json::from_str(r#"{"i":0,"S":[3,4]}"#).unwrap();
        c.boundary.insert(raw, q(1));
        assert!(c.validate().is_err());
        let mut c = Class::zero(0, 4);
        c.lambda = q(1);
        assert_eq!(c.validate(), Err(PicardError::GenusZeroLambda));
        assert!(Class::zero(2, 3).validate().is_ok());
    }
}

