//! Exact dense Gaussian elimination.

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Row echelon data of an augmented matrix `[A | b]`.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Reduced rows of `[A | b]`, one per pivot, in pivot order.
    pub rows: Vec<Vec<Scalar>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    /// Some zero row of `A` carries a nonzero right-hand side.
    pub inconsistent: bool,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row echelon form of `[matrix | rhs]`, pivoting in column order.
pub fn rref(matrix: &[Vec<Scalar>], rhs: &[Scalar]) -> Echelon {
    let ncols = matrix.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Scalar>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = Scalar::one() / &rows[next][col];
        for v in rows[next].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    let inconsistent = rows[next..].iter().any(|r| !r[ncols].is_zero());
    rows.truncate(next);
    Echelon {
        rows,
        pivots,
        inconsistent,
    }
}

pub fn rank(matrix: &[Vec<Scalar>]) -> usize {
    let zeros = vec![Scalar::zero(); matrix.len()];
    rref(matrix, &zeros).rank()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    Unique(Vec<Scalar>),
    /// Consistent with a solution space of positive dimension.
    Underdetermined { rank: usize },
}

pub fn solve(matrix: &[Vec<Scalar>], rhs: &[Scalar], ncols: usize) -> Solution {
    if matrix.is_empty() {
        return if ncols == 0 {
            Solution::Unique(Vec::new())
        } else {
            Solution::Underdetermined { rank: 0 }
        };
    }
    let e = rref(matrix, rhs);
    if e.inconsistent {
        return Solution::Inconsistent;
    }
    if e.rank() < ncols {
        return Solution::Underdetermined { rank: e.rank() };
    }
    let mut x = vec![Scalar::zero(); ncols];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[ncols].clone();
    }
    Solution::Unique(x)
}
