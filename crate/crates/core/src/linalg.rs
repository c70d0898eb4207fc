//! Fraction-free (Bareiss) Gaussian elimination over the integers.

use crate::exactmath::{exact_div, ExactInt, ExactRational};
use num_traits::{One, Zero};

/// Row echelon form produced by [`bareiss`]. Row `i < rank` has its pivot in
/// column `pivots[i]`; rows `rank..` are zero.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<ExactInt>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Fraction-free elimination. Pivot choice: leftmost column with a nonzero
/// entry at or below the current row, smallest such row index.
pub fn bareiss(mut rows: Vec<Vec<ExactInt>>) -> Echelon {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut prev = ExactInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() {
                    v
                } else {
                    exact_div(&v, &prev).expect("Bareiss division is exact")
                };
            }
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows, pivots }
}

/// Solves `a x = b` exactly. Returns one solution (free variables set to
/// zero), or `None` when the system is inconsistent.
pub fn solve(a: &[Vec<ExactInt>], b: &[ExactInt]) -> Option<Vec<ExactRational>> {
    assert_eq!(a.len(), b.len());
    let nvars = a.first().map_or(0, |r| r.len());
    let aug: Vec<Vec<ExactInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let ech = bareiss(aug);
    if ech.pivots.last() == Some(&nvars) {
        return None;
    }
    let mut x = vec![ExactRational::zero(); nvars];
    for (i, &c) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[i];
        let mut acc = ExactRational::from_integer(row[nvars].clone());
        for j in c + 1..nvars {
            if !row[j].is_zero() {
                acc -= &x[j] * ExactRational::from_integer(row[j].clone());
            }
        }
        x[c] = acc / ExactRational::from_integer(row[c].clone());
    }
    Some(x)
}
