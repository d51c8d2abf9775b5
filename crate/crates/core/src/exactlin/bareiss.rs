//! Fraction-free rank.

use super::sparse::SMat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Rank over Q by Bareiss elimination on an integer scaling of the matrix.
pub fn rank(m: &SMat) -> usize {
    // Work with whichever orientation has fewer rows; drop empty lines first.
    let t;
    let m = if m.nrows > m.ncols {
        t = m.transpose();
        &t
    } else {
        m
    };
    let live_cols: Vec<usize> = (0..m.ncols).filter(|&j| !m.cols[j].is_empty()).collect();
    if live_cols.is_empty() {
        return 0;
    }
    let mut live_rows = vec![false; m.nrows];
    for &j in &live_cols {
        for (i, _) in &m.cols[j] {
            live_rows[*i] = true;
        }
    }
    let row_ids: Vec<usize> = (0..m.nrows).filter(|&i| live_rows[i]).collect();
    let mut row_pos = vec![usize::MAX; m.nrows];
    for (k, &i) in row_ids.iter().enumerate() {
        row_pos[i] = k;
    }
    let nr = row_ids.len();
    let nc = live_cols.len();
    let mut a = vec![vec![BigInt::zero(); nc]; nr];
    // Scale each column by the lcm of its denominators.
    for (jj, &j) in live_cols.iter().enumerate() {
        let l = m.cols[j].iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
        for (i, x) in &m.cols[j] {
            a[row_pos[*i]][jj] = x.numer() * (&l / x.denom());
        }
    }
    bareiss_rank(&mut a)
}

pub(crate) fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let nr = a.len();
    if nr == 0 {
        return 0;
    }
    let nc = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let f = row[c].clone();
            if f.is_zero() {
                for j in c + 1..nc {
                    if !row[j].is_zero() {
                        row[j] = (&piv * &row[j]) / &prev;
                    }
                }
            } else {
                for j in c + 1..nc {
                    let v = &piv * &row[j] - &f * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
        }
        prev = piv;
        r += 1;
    }
    r
}
