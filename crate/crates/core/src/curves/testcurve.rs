//! Test curves on `M̄_{0,n}` used to separate zero-residue classes.

use super::CurveError;
use crate::picard::{full_mask, mask_of, DivisorClass};
use crate::scalar::{int, Scalar};

fn genus_zero<T: Scalar>(c: &DivisorClass<T>) -> Result<u32, CurveError> {
    if c.genus() != 0 {
        return Err(CurveError::NotGenusZero(c.genus()));
    }
    Ok(c.markings())
}

fn check_marking(k: u32, n: u32) -> Result<(), CurveError> {
    if k == 0 || k > n {
        return Err(CurveError::Picard(crate::picard::PicardError::MarkingOutOfRange { marking: k, n }));
    }
    Ok(())
}

/// Coefficient of `δ_{0:S}` for `S` given as a mask, either orientation.
fn delta_coeff<T: Scalar>(c: &DivisorClass<T>, mask: u32) -> T {
    let n = c.markings();
    let comp = full_mask(n) & !mask;
    c.boundary()
        .iter()
        .find(|(b, _)| b.mask() == mask || b.mask() == comp)
        .map(|(_, v)| v.clone())
        .unwrap_or_else(T::zero)
}

/// The curve `B_i` swept out by marking `i` moving on a fixed general
/// `(n-1)`-pointed line: `B_i·ψ_i = n-3`, `B_i·ψ_j = 1`, `B_i·δ_{0:{i,j}} = 1`,
/// all other boundary divisors zero. A genuine curve, so the pairing is
/// well defined on classes.
pub fn pair_test_curve_last_point<T: Scalar>(c: &DivisorClass<T>, i: u32) -> Result<T, CurveError> {
    let n = genus_zero(c)?;
    check_marking(i, n)?;
    let mut v = T::zero();
    for j in 1..=n {
        let w = if j == i { int(n as i64 - 3) } else { T::one() };
        v = v + c.psi(j) * w;
        if j != i {
            v = v + delta_coeff(c, mask_of(&[i, j]));
        }
    }
    Ok(v)
}

fn tail_pairing<T: Scalar>(c: &DivisorClass<T>, p: u32, q: u32, self_int: i64) -> Result<T, CurveError> {
    let n = genus_zero(c)?;
    check_marking(p, n)?;
    check_marking(q, n)?;
    if p == q {
        return Err(CurveError::BadPartition("tail needs two distinct markings".into()));
    }
    if n < 5 {
        return Err(crate::picard::PicardError::TooFewMarkings { needed: 5, n }.into());
    }
    let mut v = delta_coeff(c, mask_of(&[p, q])) * int(self_int);
    for j in (1..=n).filter(|&j| j != p && j != q) {
        v = v + c.psi(j) + delta_coeff(c, mask_of(&[p, q, j]));
    }
    Ok(v)
}

/// The tail curve `B_{p,q}` with the intersection numbers as stated:
/// `ψ_j ↦ 1` off `{p, q}`, `ψ_p, ψ_q ↦ 0`, `δ_{0:{p,q}} ↦ n-4`,
/// `δ_{0:{p,q,j}} ↦ 1`. These numbers do not annihilate the Keel relations,
/// so the value depends on the representative; it is applied to the
/// coefficients of `c` as given.
pub fn pair_test_curve_tail<T: Scalar>(c: &DivisorClass<T>, p: u32, q: u32) -> Result<T, CurveError> {
    let n = c.markings() as i64;
    tail_pairing(c, p, q, n - 4)
}

/// The actual intersection with the tail curve, where the moving node
/// gives `B_{p,q}·δ_{0:{p,q}} = 4-n`. Well defined on classes.
pub fn tail_curve_intersection<T: Scalar>(c: &DivisorClass<T>, p: u32, q: u32) -> Result<T, CurveError> {
    let n = c.markings() as i64;
    tail_pairing(c, p, q, 4 - n)
}

/// The retained vector `d^i` obtained from `(-p_1, ..., -p_s, a_1, ..., a_m)`
/// by lowering the order of the `i`-th pole by one (1-based), which turns a
/// double pole into a marked point of order zero.
pub fn lowered_pole(p: &[i64], a: &[i64], i: usize) -> Vec<i64> {
    let mut d: Vec<i64> = p.iter().map(|x| -x).chain(a.iter().copied()).collect();
    d[i - 1] = if p[i - 1] == 2 { 0 } else { -p[i - 1] + 1 };
    d
}
