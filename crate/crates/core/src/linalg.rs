//! Dense row reduction over a [`Scalar`] field.
//!
//! Matrices here are small (a few hundred columns at most) and the entries
//! are exact rationals, so a plain Gauss-Jordan pass is all we need.

use crate::scalar::Scalar;

/// A matrix in reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon<T> {
    pub cols: usize,
    /// Nonzero rows only, pivot entry normalised to one.
    pub rows: Vec<Vec<T>>,
    /// `pivots[k]` is the pivot column of `rows[k]`, strictly increasing.
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Echelon<T> {
    /// Gauss-Jordan elimination, pivoting on columns in index order.
    pub fn new(mut rows: Vec<Vec<T>>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged matrix");
        }
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..cols {
            if top == rows.len() {
                break;
            }
            let Some(found) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(top, found);
            let inv = T::one() / rows[top][col].clone();
            for x in rows[top].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            let pivot_row = rows[top].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == top || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = x.clone() - factor.clone() * p.clone();
                    }
                }
            }
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        Echelon { cols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` modulo the row space: the result vanishes on every pivot
    /// column and is the unique such representative of `v + rowspace`.
    pub fn reduce(&self, v: &mut [T]) {
        assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - factor.clone() * r.clone();
                }
            }
        }
    }

    pub fn contains(&self, v: &[T]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// A basis of the right kernel `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![T::zero(); self.cols];
            x[free] = T::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                x[p] = -row[free].clone();
            }
            basis.push(x);
        }
        basis
    }
}

pub fn rank<T: Scalar>(rows: Vec<Vec<T>>, cols: usize) -> usize {
    Echelon::new(rows, cols).rank()
}
