//! Exact Gaussian elimination over [`FieldElem`] scalars.
//!
//! Rows are dense but elimination skips zero entries, which keeps the
//! sparse 0/1 symmetrization matrices cheap.

use crate::error::{Error, Result};
use crate::scalar::FieldElem;

/// Reduced row-echelon form of a matrix with `cols` columns.
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

/// Row-reduces in place. Pivots are chosen left to right; within a column the
/// first invertible entry wins. A column holding only nonzero non-units fails
/// with [`Error::ZeroDivisor`].
pub fn rref<F: FieldElem>(mut rows: Vec<Vec<F>>, cols: usize) -> Result<Echelon<F>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let mut found = None;
        let mut saw_nonzero = false;
        for (k, row) in rows.iter().enumerate().skip(r) {
            if row[c].is_zero() {
                continue;
            }
            saw_nonzero = true;
            if let Some(inv) = row[c].try_inv() {
                found = Some((k, inv));
                break;
            }
        }
        let Some((k, inv)) = found else {
            if saw_nonzero {
                return Err(Error::ZeroDivisor);
            }
            continue;
        };
        rows.swap(r, k);
        let pivot_row: Vec<F> = rows[r]
            .iter()
            .map(|x| if x.is_zero() { x.clone() } else { x.mul(&inv) })
            .collect();
        rows[r] = pivot_row;
        for k in 0..rows.len() {
            if k == r || rows[k][c].is_zero() {
                continue;
            }
            let factor = rows[k][c].clone();
            for j in c..cols {
                if rows[r][j].is_zero() {
                    continue;
                }
                let delta = factor.mul(&rows[r][j]);
                rows[k][j] = rows[k][j].sub(&delta);
            }
        }
        pivots.push(c);
        r += 1;
    }
    // rows below the last pivot are zero
    rows.truncate(pivots.len());
    Ok(Echelon { rows, pivots, cols })
}

pub fn rank<F: FieldElem>(rows: Vec<Vec<F>>, cols: usize) -> Result<usize> {
    Ok(rref(rows, cols)?.pivots.len())
}

impl<F: FieldElem> Echelon<F> {
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Kernel basis: one vector per free column `f`, with a one at `f` and
    /// minus the pivot-row entries at the pivot columns. `like` supplies the
    /// ring for the constants.
    pub fn nullspace(&self, like: &F) -> Vec<Vec<F>> {
        let zero = like.zero_like();
        let one = like.one_like();
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![zero.clone(); self.cols];
                v[f] = one.clone();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        v[p] = row[f].neg();
                    }
                }
                v
            })
            .collect()
    }
}

/// Kernel of the linear map given by `rows` (each row a functional).
pub fn nullspace<F: FieldElem>(rows: Vec<Vec<F>>, cols: usize, like: &F) -> Result<Vec<Vec<F>>> {
    Ok(rref(rows, cols)?.nullspace(like))
}

/// Solves `A x = b` for one particular solution, or `None` if inconsistent.
pub fn solve_particular<F: FieldElem>(a: &[Vec<F>], b: &[F], like: &F) -> Result<Option<Vec<F>>> {
    let cols = a.first().map_or(0, |r| r.len());
    let augmented: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let ech = rref(augmented, cols + 1)?;
    if ech.pivots.contains(&cols) {
        return Ok(None);
    }
    let mut x = vec![like.zero_like(); cols];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = row[cols].clone();
    }
    Ok(Some(x))
}
