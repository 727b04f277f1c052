//! Classes `Z^n_κ` of zero-residue strata pushed forward to `M̄_{g,n}`.
//!
//! Inputs are the retained orders `d = (d_1, ..., d_n)`; the forgotten
//! markings are simple zeros appended to complete the signature.

use super::boundary::{all_boundary, full_mask, has, Mask};
use super::class::DivisorClass;
use super::keel::{keel_graph_class, EdgeLabeledGraph};
use super::PicardError;
use crate::scalar::{binom2, half, int, Scalar};
use crate::signature::Signature;

/// The two families of retained vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZrShape {
    /// No simple poles, `Σd = g - m`, forgets `g + m - 2` simple zeros.
    SecondKind,
    /// At least two simple poles, `Σd = g - m - 1`, forgets `g + m - 1`.
    SimplePoles,
}

impl ZrShape {
    pub fn of(d: &[i64]) -> Self {
        if d.contains(&-1) {
            ZrShape::SimplePoles
        } else {
            ZrShape::SecondKind
        }
    }
}

fn shape_err(msg: impl Into<String>) -> PicardError {
    PicardError::SignatureShape(msg.into())
}

fn nonsimple(d: &[i64]) -> i64 {
    d.iter().filter(|&&x| x <= -2).count() as i64
}

/// Number of simple zeros forgotten by the pushforward.
fn forgotten(g: u32, d: &[i64], shape: ZrShape) -> i64 {
    let m = nonsimple(d);
    match shape {
        ZrShape::SecondKind => g as i64 + m - 2,
        ZrShape::SimplePoles => g as i64 + m - 1,
    }
}

/// The full signature `(d, 1^r)` behind a retained vector, after checking
/// that `d` has one of the two admissible shapes.
pub fn full_signature(g: u32, d: &[i64]) -> Result<Signature, PicardError> {
    let shape = ZrShape::of(d);
    let n = d.len() as u32;
    if d.is_empty() {
        return Err(shape_err("no retained markings"));
    }
    if g == 0 && n < 3 {
        return Err(PicardError::TooFewMarkings { needed: 3, n });
    }
    let m = nonsimple(d);
    let k = d.iter().filter(|&&x| x == -1).count();
    let sum: i64 = d.iter().sum();
    match shape {
        ZrShape::SecondKind => {
            if m == 0 {
                return Err(shape_err("no pole of order at least two"));
            }
            if sum != g as i64 - m {
                return Err(shape_err(format!("retained orders sum to {sum}, expected g - m = {}", g as i64 - m)));
            }
        }
        ZrShape::SimplePoles => {
            if k < 2 {
                return Err(shape_err("a single simple pole"));
            }
            if sum != g as i64 - m - 1 {
                return Err(shape_err(format!(
                    "retained orders sum to {sum}, expected g - m - 1 = {}",
                    g as i64 - m - 1
                )));
            }
        }
    }
    let r = forgotten(g, d, shape);
    if r < 0 {
        return Err(shape_err(format!("would forget {r} points")));
    }
    let mut entries = d.to_vec();
    entries.extend(std::iter::repeat_n(1, r as usize));
    Signature::new(g, entries).map_err(|e| shape_err(e.to_string()))
}

fn check(g: u32, d: &[i64], want: ZrShape) -> Result<(), PicardError> {
    if ZrShape::of(d) != want {
        return Err(shape_err(match want {
            ZrShape::SecondKind => "simple poles are not allowed here",
            ZrShape::SimplePoles => "need at least two simple poles",
        }));
    }
    if full_signature(g, d)?.zero_residue_empty() {
        return Err(PicardError::EmptyStratum);
    }
    Ok(())
}

fn sum_over(d: &[i64], mask: Mask, f: impl Fn(i64) -> i64) -> i64 {
    d.iter()
        .enumerate()
        .filter(|(j, _)| has(mask, *j as u32 + 1))
        .map(|(_, &x)| f(x))
        .sum()
}

/// `d_S + |S^-|`, poles of any order counted.
fn shifted_sum(d: &[i64], mask: Mask) -> i64 {
    sum_over(d, mask, |x| if x < 0 { x + 1 } else { x })
}

/// `d_S + |S^ns|`, only poles of order at least two counted.
fn ns_shifted_sum(d: &[i64], mask: Mask) -> i64 {
    sum_over(d, mask, |x| if x <= -2 { x + 1 } else { x })
}

fn has_simple(d: &[i64], mask: Mask) -> bool {
    sum_over(d, mask, |x| (x == -1) as i64) > 0
}

fn psi_binom(d: &[i64]) -> Vec<i64> {
    d.iter().map(|&x| binom2(x + 1)).collect()
}

fn coeff_i(d: &[i64], i: u32, mask: Mask) -> i64 {
    binom2((shifted_sum(d, mask) - i as i64).abs() + 1)
}

fn coeff_ii(g: u32, d: &[i64], i: u32, mask: Mask) -> i64 {
    let comp = full_mask(d.len() as u32) & !mask;
    if !has_simple(d, mask) {
        binom2((ns_shifted_sum(d, mask) - i as i64).abs() + 1)
    } else if !has_simple(d, comp) {
        binom2((ns_shifted_sum(d, comp) - (g - i) as i64).abs() + 1)
    } else {
        binom2(ns_shifted_sum(d, mask) - i as i64 + 1)
    }
}

/// `-λ + Σ binom(d_j+1, 2) ψ_j - Σ c(i, S) δ_{i:S}` evaluated literally on
/// every boundary divisor, with `λ` dropped in genus zero.
fn raw_class<T: Scalar>(g: u32, d: &[i64], coeff: impl Fn(u32, Mask) -> i64) -> DivisorClass<T> {
    let n = d.len() as u32;
    let mut c = DivisorClass::zero(g, n);
    if g > 0 {
        c.add_lambda(-T::one());
    }
    for (j, b) in psi_binom(d).into_iter().enumerate() {
        c.add_psi(j as u32 + 1, int(b));
    }
    for b in all_boundary(g, n) {
        c.add_boundary(b, int(-coeff(b.genus(), b.mask())));
    }
    c
}

/// The class for retained orders without simple poles, in the displayed form
/// for each genus: the general expression for `g ≥ 2`, `ψ` eliminated for
/// `g = 1`, and the halved absolute values `f(S) = ½|d_S + |S^-||` for `g = 0`.
pub fn zr_div_i<T: Scalar>(g: u32, d: &[i64]) -> Result<DivisorClass<T>, PicardError> {
    check(g, d, ZrShape::SecondKind)?;
    let n = d.len() as u32;
    Ok(match g {
        0 => {
            let mut c = DivisorClass::zero(0, n);
            for (j, &x) in d.iter().enumerate() {
                let f = if x < 0 { x + 1 } else { x };
                c.add_psi(j as u32 + 1, half(f.abs()));
            }
            for b in all_boundary(0, n) {
                c.add_boundary(b, -half::<T>(shifted_sum(d, b.mask()).abs()));
            }
            c
        }
        1 => {
            let bs = psi_binom(d);
            let mut c = DivisorClass::zero(1, n);
            c.add_lambda(int(bs.iter().sum::<i64>() - 1));
            for b in all_boundary(1, n) {
                let inner: i64 = sum_over(d, b.mask(), |x| binom2(x + 1));
                c.add_boundary(b, int(inner - binom2(shifted_sum(d, b.mask()).abs() + 1)));
            }
            c
        }
        _ => raw_class(g, d, |i, mask| coeff_i(d, i, mask)),
    })
}

/// The class without simple poles in the general binomial form, valid in
/// every genus; in genus 0 and 1 it agrees with [`zr_div_i`] modulo relations.
pub fn zr_div_i_raw<T: Scalar>(g: u32, d: &[i64]) -> Result<DivisorClass<T>, PicardError> {
    check(g, d, ZrShape::SecondKind)?;
    Ok(raw_class(g, d, |i, mask| coeff_i(d, i, mask)))
}

/// The class for retained orders with `k ≥ 2` simple poles. In genus 0 the
/// simplified form `Σ_{d_j ≤ -2} |d_j+1| ψ_j - Σ_T |d_T + |T^ns|| δ_{0:T}`
/// is returned, summing over the side `T` free of simple poles with
/// `d_T + |T^ns| < 0`.
pub fn zr_div_ii<T: Scalar>(g: u32, d: &[i64]) -> Result<DivisorClass<T>, PicardError> {
    check(g, d, ZrShape::SimplePoles)?;
    let n = d.len() as u32;
    Ok(match g {
        0 => {
            let mut c = DivisorClass::zero(0, n);
            for (j, &x) in d.iter().enumerate() {
                if x <= -2 {
                    c.add_psi(j as u32 + 1, int((x + 1).abs()));
                }
            }
            for b in all_boundary(0, n) {
                let comp = full_mask(n) & !b.mask();
                let side = [b.mask(), comp].into_iter().find(|&t| !has_simple(d, t));
                if let Some(t) = side {
                    let v = ns_shifted_sum(d, t);
                    if v < 0 {
                        c.add_boundary(b, int(v));
                    }
                }
            }
            c
        }
        1 => {
            let bs = psi_binom(d);
            let mut c = DivisorClass::zero(1, n);
            c.add_lambda(int(bs.iter().sum::<i64>() - 1));
            for b in all_boundary(1, n) {
                let mask = b.mask();
                let comp = full_mask(n) & !mask;
                let x = ns_shifted_sum(d, mask);
                let top = if !has_simple(d, mask) {
                    binom2(x.abs() + 1)
                } else if !has_simple(d, comp) {
                    binom2((x + 1).abs() + 1)
                } else {
                    binom2(x + 1)
                };
                let inner: i64 = sum_over(d, mask, |x| binom2(x + 1));
                c.add_boundary(b, int(inner - top));
            }
            c
        }
        _ => raw_class(g, d, |i, mask| coeff_ii(g, d, i, mask)),
    })
}

/// The class with simple poles in the general binomial form, valid in every
/// genus; in genus 0 and 1 it agrees with [`zr_div_ii`] modulo relations.
pub fn zr_div_ii_raw<T: Scalar>(g: u32, d: &[i64]) -> Result<DivisorClass<T>, PicardError> {
    check(g, d, ZrShape::SimplePoles)?;
    Ok(raw_class(g, d, |i, mask| coeff_ii(g, d, i, mask)))
}

/// Dispatches on the presence of simple poles.
pub fn zr_class<T: Scalar>(g: u32, d: &[i64]) -> Result<DivisorClass<T>, PicardError> {
    match ZrShape::of(d) {
        ZrShape::SecondKind => zr_div_i(g, d),
        ZrShape::SimplePoles => zr_div_ii(g, d),
    }
}

/// The class `Z^n_κ` on `M̄_{g,n}` for a full signature whose trailing
/// entries beyond the first `n` are the forgotten simple zeros.
pub fn class_for_signature<T: Scalar>(sig: &Signature, n: usize) -> Result<DivisorClass<T>, PicardError> {
    let entries = sig.entries();
    if n == 0 || n > entries.len() {
        return Err(shape_err(format!("cannot retain {n} of {} entries", entries.len())));
    }
    let (d, rest) = entries.split_at(n);
    if rest.iter().any(|&x| x != 1) {
        return Err(shape_err("forgotten entries must all be simple zeros"));
    }
    let expected = forgotten(sig.genus(), d, ZrShape::of(d));
    if rest.len() as i64 != expected {
        return Err(shape_err(format!("expected {expected} forgotten simple zeros, found {}", rest.len())));
    }
    zr_class(sig.genus(), d)
}

/// `Σ ½|f_i| ψ_i - Σ_{1 ∈ S} ½|f_S| δ_{0:S}` on `M̄_{0,n}`, for integers
/// summing to zero.
pub fn dcor_class<T: Scalar>(f: &[i64]) -> Result<DivisorClass<T>, PicardError> {
    let n = f.len() as u32;
    if n < 3 {
        return Err(PicardError::TooFewMarkings { needed: 3, n });
    }
    let sum: i64 = f.iter().sum();
    if sum != 0 {
        return Err(PicardError::SumNonzero(sum));
    }
    let mut c = DivisorClass::zero(0, n);
    for (j, &x) in f.iter().enumerate() {
        c.add_psi(j as u32 + 1, half(x.abs()));
    }
    for b in all_boundary(0, n) {
        c.add_boundary(b, -half::<T>(sum_over(f, b.mask(), |x| x).abs()));
    }
    Ok(c)
}

/// A boundary-only representative `W` of twice a genus-zero class without
/// simple poles, with every coefficient nonnegative.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryWitness<T> {
    /// `f_i = d_i + 1` at poles and `d_i` elsewhere; sums to zero.
    pub f: Vec<i64>,
    /// `N = Σ_{f_i > 0} f_i`.
    pub total: i64,
    /// `W = 2Z - D(Γ_1) - D(Γ_2)/N`.
    pub class: DivisorClass<T>,
}

/// Writes `2Z` as a nonnegative combination of boundary divisors by
/// subtracting the trivial classes of `Γ_1: e(i~j) = -f_i f_j` and
/// `Γ_2: e(i~j) = max(-f_i f_j, 0)`.
pub fn boundary_effective_witness<T: Scalar>(d: &[i64]) -> Result<BoundaryWitness<T>, PicardError> {
    check(0, d, ZrShape::SecondKind)?;
    let n = d.len() as u32;
    let f: Vec<i64> = d.iter().map(|&x| if x < 0 { x + 1 } else { x }).collect();
    let total: i64 = f.iter().filter(|&&x| x > 0).sum();
    let fi = |i: u32| f[i as usize - 1];
    let g1 = EdgeLabeledGraph::from_fn(n, |i, j| int::<T>(-fi(i) * fi(j)));
    let g2 = EdgeLabeledGraph::from_fn(n, |i, j| int::<T>((-fi(i) * fi(j)).max(0)));
    let z = zr_div_i_raw::<T>(0, d)?;
    let w = z.scale(&int(2)) - keel_graph_class(&g1) - keel_graph_class(&g2).scale(&(T::one() / int(total)));
    Ok(BoundaryWitness { f, total, class: w })
}
