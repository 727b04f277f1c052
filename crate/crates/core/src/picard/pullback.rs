//! Pullback along the map `π_h: M̄_{g,n} → M̄_{g+h,n}` that glues a fixed
//! general genus `h` curve at the first marking.

use super::boundary::{full_mask, has, BoundaryIndex};
use super::class::DivisorClass;
use super::PicardError;
use crate::scalar::Scalar;

/// `π_h^*` on divisor classes: `λ ↦ λ`, `δ_0 ↦ δ_0`, `ψ_1 ↦ 0`, `ψ_i ↦ ψ_i`,
/// and `δ_{i:S}` written with `1 ∈ S` goes to `0` for `i < h`, to `-ψ_1` for
/// `(i, S) = (h, {1})`, and to `δ_{i-h:S}` otherwise. `λ` and `δ_0` are
/// dropped when the target has genus zero.
pub fn pullback_glue<T: Scalar>(c: &DivisorClass<T>, h: u32) -> Result<DivisorClass<T>, PicardError> {
    let big = c.genus();
    let n = c.markings();
    if h == 0 || h > big || n == 0 {
        return Err(PicardError::DimensionMismatch);
    }
    let g = big - h;
    if g == 0 && n < 3 {
        return Err(PicardError::TooFewMarkings { needed: 3, n });
    }
    let mut out = DivisorClass::zero(g, n);
    if g > 0 {
        out.add_lambda(c.lambda().clone());
        out.add_delta0(c.delta0().clone());
    }
    for i in 2..=n {
        out.add_psi(i, c.psi(i));
    }
    for (b, v) in c.boundary() {
        let (i, mask) = if b.contains(1) {
            (b.genus(), b.mask())
        } else {
            (big - b.genus(), full_mask(n) & !b.mask())
        };
        if i < h {
            continue;
        }
        if i == h && mask == 1 {
            out.add_psi(1, -v.clone());
            continue;
        }
        debug_assert!(has(mask, 1));
        out.add_boundary(BoundaryIndex::from_mask(g, n, i - h, mask)?, v.clone());
    }
    Ok(out)
}

/// For a retained vector whose first entry is a pole of order `h ≥ 2`, the
/// genus `g + h` vector `(1, d_2, ..., d_n)` whose class pulls back to it.
pub fn induction_source(g: u32, d: &[i64]) -> Option<(u32, u32, Vec<i64>)> {
    let first = *d.first()?;
    if first > -2 {
        return None;
    }
    let h = (-first) as u32;
    let mut src = d.to_vec();
    src[0] = 1;
    Some((h, g + h, src))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::formulas::{zr_div_i, zr_div_i_raw, zr_div_ii, zr_div_ii_raw};
    use crate::picard::relations::equals_mod_relations;
    use crate::{q, Class};

    #[test]
    fn table() {
        let h = 2;
        let mut c = Class::zero(3, 3);
        c.add_lambda(q(1));
        assert_eq!(pullback_glue(&c, h).unwrap().lambda(), &q(1));

        let mut c = Class::zero(3, 3);
        c.add_delta(h, &[1], q(1)).unwrap();
        let p = pullback_glue(&c, h).unwrap();
        let mut e = Class::zero(1, 3);
        e.add_psi(1, q(-1));
        assert_eq!(p, e);

        let mut c = Class::zero(3, 3);
        c.add_psi(2, q(1));
        c.add_psi(1, q(5));
        let p = pullback_glue(&c, h).unwrap();
        let mut e = Class::zero(1, 3);
        e.add_psi(2, q(1));
        assert_eq!(p, e);

        let mut c = Class::zero(3, 3);
        c.add_delta(1, &[1, 2], q(1)).unwrap();
        assert!(pullback_glue(&c, h).unwrap().is_zero());
        let mut c = Class::zero(3, 3);
        c.add_delta(2, &[1, 2], q(1)).unwrap();
        let mut e = Class::zero(1, 3);
        e.add_delta(0, &[1, 2], q(1)).unwrap();
        assert_eq!(pullback_glue(&c, h).unwrap(), e);
    }

    fn check(g: u32, d: &[i64], ii: bool) {
        let (h, big, src) = induction_source(g, d).unwrap();
        let (direct, from): (Class, Class) = if ii {
            (zr_div_ii_raw(g, d).unwrap(), zr_div_ii(big, &src).unwrap())
        } else {
            (zr_div_i_raw(g, d).unwrap(), zr_div_i(big, &src).unwrap())
        };
        let pulled = pullback_glue(&from, h).unwrap();
        assert_eq!(pulled, direct, "{g} {d:?}");
        let displayed: Class = if ii { zr_div_ii(g, d).unwrap() } else { zr_div_i(g, d).unwrap() };
        assert!(equals_mod_relations(&pulled, &displayed).unwrap());
    }

    #[test]
    fn induction_step() {
        check(2, &[-2, -2, 4], false);
        check(1, &[-2, -2, 3], false);
        check(0, &[-2, -2, 1, 1], false);
        check(0, &[-3, -2, 1, 1, 1], false);
        check(2, &[-3, -2, 1, 4], false);
        check(0, &[-2, -1, -1, 1, 1], true);
        check(1, &[-2, -1, -1, 3], true);
        check(2, &[-3, -1, -1, 2, 3], true);
    }
}
