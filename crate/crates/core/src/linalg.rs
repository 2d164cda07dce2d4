//! Exact Gaussian elimination over a [`Scalar`] field.

use crate::field::Scalar;

/// Row-reduces `rows` in place to reduced row echelon form, drops zero rows
/// and returns the pivot column of each remaining row.
pub fn rref<F: Scalar>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = F::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i][col..ncols].iter_mut().zip(&pivot_row[col..ncols]) {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for the `m × ncols` matrix `A`.
pub fn nullspace<F: Scalar>(matrix: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut a = matrix.to_vec();
    let pivots = rref(&mut a, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&free| !is_pivot[free])
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (row, &p) in a.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// A subspace of `F^ncols` held in reduced row echelon form; two subspaces
/// are equal iff their `Echelon`s are.
#[derive(Debug, Clone, PartialEq)]
pub struct Echelon<F> {
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
    ncols: usize,
}

impl<F: Scalar> Echelon<F> {
    pub fn new(mut rows: Vec<Vec<F>>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        let pivots = rref(&mut rows, ncols);
        Echelon { rows, pivots, ncols }
    }

    pub fn zero(ncols: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
            ncols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivot rows; zero iff `v` is in
    /// the span. Entries at pivot columns are always zero.
    pub fn residual(&self, v: &[F]) -> Vec<F> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = out[p].clone();
                for (x, r) in out.iter_mut().zip(row) {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.residual(v).iter().all(|x| x.is_zero())
    }

    /// Columns without a pivot; the residual lives on these.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }
}
