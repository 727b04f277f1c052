//! Tautological relations in low genus and the resulting normal form.

use std::collections::HashMap;

use super::boundary::{all_boundary, BoundaryIndex};
use super::class::{generators, DivisorClass, Generator};
use super::keel::{basis_graphs, keel_graph_class};
use super::PicardError;
use crate::linalg::Echelon;
use crate::scalar::{int, Scalar};

/// `Pic(M̄_{g,n}) ⊗ Q` presented as generators modulo relations.
///
/// Building one reduces the relation matrix once; reuse it when many
/// classes on the same space are compared.
#[derive(Clone, Debug)]
pub struct PicardSpace<T> {
    g: u32,
    n: u32,
    gens: Vec<Generator>,
    index: HashMap<Generator, usize>,
    echelon: Echelon<T>,
}

impl<T: Scalar> PicardSpace<T> {
    pub fn new(g: u32, n: u32) -> Self {
        let gens = generators(g, n);
        let index = gens.iter().enumerate().map(|(k, gen)| (*gen, k)).collect();
        let rows = relation_classes::<T>(g, n).iter().map(DivisorClass::to_vec).collect();
        let echelon = Echelon::new(rows, gens.len());
        PicardSpace { g, n, gens, index, echelon }
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn markings(&self) -> u32 {
        self.n
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn column(&self, gen: &Generator) -> Option<usize> {
        self.index.get(gen).copied()
    }

    /// Rank of the relation space.
    pub fn relation_rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Dimension of the quotient, i.e. of `Pic(M̄_{g,n}) ⊗ Q`.
    pub fn dimension(&self) -> usize {
        self.gens.len() - self.echelon.rank()
    }

    fn check(&self, c: &DivisorClass<T>) -> Result<(), PicardError> {
        if c.genus() != self.g || c.markings() != self.n {
            return Err(PicardError::DimensionMismatch);
        }
        Ok(())
    }

    /// The unique representative of `c` modulo relations with zero
    /// coefficient on every pivot generator. Pivots are taken in generator
    /// order, so `ψ` classes are eliminated before boundary classes; in genus
    /// zero the result is boundary-only.
    pub fn normal_form(&self, c: &DivisorClass<T>) -> Result<DivisorClass<T>, PicardError> {
        self.check(c)?;
        let mut v = c.to_vec();
        self.echelon.reduce(&mut v);
        Ok(DivisorClass::from_vec(self.g, self.n, &v))
    }

    pub fn is_trivial(&self, c: &DivisorClass<T>) -> Result<bool, PicardError> {
        self.check(c)?;
        Ok(self.echelon.contains(&c.to_vec()))
    }

    pub fn equals_mod_relations(
        &self,
        a: &DivisorClass<T>,
        b: &DivisorClass<T>,
    ) -> Result<bool, PicardError> {
        self.check(a)?;
        self.check(b)?;
        self.is_trivial(&a.try_sub(b)?)
    }
}

/// Normal form on a freshly built [`PicardSpace`].
pub fn normal_form<T: Scalar>(c: &DivisorClass<T>) -> DivisorClass<T> {
    PicardSpace::new(c.genus(), c.markings())
        .normal_form(c)
        .expect("space built from the class itself")
}

pub fn equals_mod_relations<T: Scalar>(
    a: &DivisorClass<T>,
    b: &DivisorClass<T>,
) -> Result<bool, PicardError> {
    if a.genus() != b.genus() || a.markings() != b.markings() {
        return Err(PicardError::DimensionMismatch);
    }
    PicardSpace::new(a.genus(), a.markings()).equals_mod_relations(a, b)
}

/// Spanning set of the relations among the standard generators:
/// Keel's relations in genus 0, `12λ = δ_0` and `ψ_i = λ + Σ_{i ∈ S} δ_{0:S}`
/// in genus 1, the pulled back `10λ = δ_0 + 2δ_1` in genus 2, none beyond.
pub fn relation_classes<T: Scalar>(g: u32, n: u32) -> Vec<DivisorClass<T>> {
    match g {
        0 => basis_graphs::<T>(n).iter().map(keel_graph_class).collect(),
        1 => {
            let mut out = Vec::new();
            let mut r = DivisorClass::zero(1, n);
            r.add_lambda(int(12));
            r.add_delta0(int(-1));
            out.push(r);
            let bnd = all_boundary(1, n);
            for i in 1..=n {
                let mut r = DivisorClass::zero(1, n);
                r.add_psi(i, T::one());
                r.add_lambda(-T::one());
                for b in bnd.iter().filter(|b| b.contains(i)) {
                    r.add_boundary(*b, -T::one());
                }
                out.push(r);
            }
            out
        }
        2 => {
            let mut r = DivisorClass::zero(2, n);
            r.add_lambda(int(10));
            r.add_delta0(int(-1));
            for b in all_boundary(2, n).into_iter().filter(|b: &BoundaryIndex| b.genus() == 1) {
                r.add_boundary(b, int(-2));
            }
            vec![r]
        }
        _ => Vec::new(),
    }
}
