use super::rat::Rat;
use super::sparse::{sv_axpy, sv_get, sv_scale, SMat, SVec};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Incrementally maintained reduced row echelon basis of a subspace of Q^dim.
///
/// Every stored vector has a leading 1 at its pivot and zeros at all other pivots,
/// so coordinates of a vector in the span are read off at the pivot positions.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pub dim: usize,
    rows: Vec<SVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let mut v = v.clone();
        // Pivot rows vanish at other pivots, so one left-to-right pass suffices.
        let mut k = 0;
        while k < v.len() {
            let (idx, _) = v[k];
            if let Some(&r) = self.pivot_row.get(&idx) {
                let c = -v[k].1.clone();
                v = sv_axpy(&v, &c, &self.rows[r]);
                // entries before position k are untouched; continue at the same slot
                k = v.partition_point(|e| e.0 < idx);
            } else {
                k += 1;
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let w = self.reduce(v);
        if w.is_empty() {
            return false;
        }
        let (p, lead) = w[0].clone();
        let w = sv_scale(&w, &(Rat::one() / lead));
        for row in self.rows.iter_mut() {
            let c = sv_get(row, p);
            if !c.is_zero() {
                *row = sv_axpy(row, &-c, &w);
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(w);
        true
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Basis vectors sorted by pivot.
    pub fn basis(&self) -> Vec<SVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        order.into_iter().map(|r| self.rows[r].clone()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Coordinates that are not pivots; a basis of the quotient Q^dim / span.
    pub fn free_indices(&self) -> Vec<usize> {
        (0..self.dim).filter(|i| !self.pivot_row.contains_key(i)).collect()
    }

    /// Coordinates of `v` (assumed to lie in the span) w.r.t. `basis()`.
    pub fn coords(&self, v: &SVec) -> SVec {
        let piv = self.pivots();
        let mut out = Vec::new();
        for (k, p) in piv.iter().enumerate() {
            let c = sv_get(v, *p);
            if !c.is_zero() {
                out.push((k, c));
            }
        }
        out
    }
}

pub fn span_of(dim: usize, vecs: &[SVec]) -> Echelon {
    let mut e = Echelon::new(dim);
    for v in vecs {
        e.insert(v);
    }
    e
}

/// Basis of `{x : m x = 0}`.
pub fn kernel(m: &SMat) -> Vec<SVec> {
    let rows = m.transpose();
    let e = span_of(m.ncols, &rows.cols);
    let basis = e.basis();
    let pivots = e.pivots();
    let mut out = Vec::new();
    for f in e.free_indices() {
        let mut v: SVec = vec![(f, Rat::one())];
        for (row, p) in basis.iter().zip(&pivots) {
            let c = sv_get(row, f);
            if !c.is_zero() {
                v.push((*p, -c));
            }
        }
        v.sort_by_key(|e| e.0);
        out.push(v);
    }
    out
}

/// Basis of the column space.
pub fn image(m: &SMat) -> Vec<SVec> {
    span_of(m.nrows, &m.cols).basis()
}

/// Rank by rational elimination; used as an independent check on Bareiss.
pub fn rank_by_echelon(m: &SMat) -> usize {
    span_of(m.nrows, &m.cols).rank()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(m: &SMat) -> Option<SMat> {
    if m.nrows != m.ncols {
        return None;
    }
    let n = m.nrows;
    // Row-reduce [m^T | I] on columns of the transpose: solve m x = e_i for each i.
    let mut dense = m.to_dense();
    let mut inv: Vec<Vec<Rat>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !dense[r][c].is_zero())?;
        dense.swap(c, p);
        inv.swap(c, p);
        let piv = Rat::one() / dense[c][c].clone();
        for j in 0..n {
            dense[c][j] = &dense[c][j] * &piv;
            inv[c][j] = &inv[c][j] * &piv;
        }
        for r in 0..n {
            if r != c && !dense[r][c].is_zero() {
                let f = dense[r][c].clone();
                for j in 0..n {
                    let a = &dense[c][j] * &f;
                    dense[r][j] -= a;
                    let b = &inv[c][j] * &f;
                    inv[r][j] -= b;
                }
            }
        }
    }
    Some(SMat::from_dense(&inv))
}
