use super::rat::Rat;
use num_traits::{One, Zero};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SVec = Vec<(usize, Rat)>;

pub fn sv_unit(i: usize) -> SVec {
    vec![(i, Rat::one())]
}

pub fn sv_get(v: &SVec, i: usize) -> Rat {
    match v.binary_search_by_key(&i, |e| e.0) {
        Ok(k) => v[k].1.clone(),
        Err(_) => Rat::zero(),
    }
}

pub fn sv_scale(v: &SVec, c: &Rat) -> SVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// `a + c * b`
pub fn sv_axpy(a: &SVec, c: &Rat, b: &SVec) -> SVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, &b[j].1 * c));
            j += 1;
        } else {
            let s = &a[i].1 + &b[j].1 * c;
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sv_add(a: &SVec, b: &SVec) -> SVec {
    sv_axpy(a, &Rat::one(), b)
}

pub fn sv_sub(a: &SVec, b: &SVec) -> SVec {
    sv_axpy(a, &-Rat::one(), b)
}

pub fn sv_dot(a: &SVec, b: &SVec) -> Rat {
    let (mut i, mut j) = (0, 0);
    let mut s = Rat::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

/// Accumulates unsorted contributions into a sparse vector.
#[derive(Default, Clone, Debug)]
pub struct SvAcc {
    map: std::collections::BTreeMap<usize, Rat>,
}

impl SvAcc {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn add(&mut self, i: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.map.entry(i).or_insert_with(Rat::zero);
        *e += c;
    }
    pub fn add_vec(&mut self, v: &SVec, c: &Rat) {
        for (i, x) in v {
            self.add(*i, x * c);
        }
    }
    pub fn finish(self) -> SVec {
        self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

pub fn sv_from_pairs(pairs: impl IntoIterator<Item = (usize, Rat)>) -> SVec {
    let mut acc = SvAcc::new();
    for (i, c) in pairs {
        acc.add(i, c);
    }
    acc.finish()
}

/// Column-major sparse matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SMat {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<SVec>,
}

impl SMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SMat { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SMat { nrows: n, ncols: n, cols: (0..n).map(sv_unit).collect() }
    }

    pub fn from_cols(nrows: usize, cols: Vec<SVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.iter().all(|(i, _)| *i < nrows)));
        SMat { nrows, ncols: cols.len(), cols }
    }

    pub fn from_dense(rows: &[Vec<Rat>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut cols = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    cols[j].push((i, x.clone()));
                }
            }
        }
        SMat { nrows, ncols, cols }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r: Vec<Vec<Rat>> =
            rows.iter().map(|row| row.iter().map(|&x| super::rat::rat(x)).collect()).collect();
        let mut m = Self::from_dense(&r);
        if rows.is_empty() {
            m.ncols = 0;
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        sv_get(&self.cols[c], r)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut acc = SvAcc::new();
        for (j, x) in v {
            acc.add_vec(&self.cols[*j], x);
        }
        acc.finish()
    }

    /// `self * other`
    pub fn mul(&self, other: &SMat) -> SMat {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        SMat { nrows: self.nrows, ncols: other.ncols, cols }
    }

    pub fn transpose(&self) -> SMat {
        let mut cols: Vec<SVec> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c {
                cols[*i].push((j, x.clone()));
            }
        }
        SMat { nrows: self.ncols, ncols: self.nrows, cols }
    }

    pub fn add(&self, other: &SMat) -> SMat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| sv_add(a, b)).collect();
        SMat { nrows: self.nrows, ncols: self.ncols, cols }
    }

    pub fn sub(&self, other: &SMat) -> SMat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| sv_sub(a, b)).collect();
        SMat { nrows: self.nrows, ncols: self.ncols, cols }
    }

    pub fn scale(&self, c: &Rat) -> SMat {
        let cols = self.cols.iter().map(|v| sv_scale(v, c)).collect();
        SMat { nrows: self.nrows, ncols: self.ncols, cols }
    }

    /// Kronecker product; index `(i, k)` flattens to `i * other.nrows + k`.
    pub fn kron(&self, other: &SMat) -> SMat {
        let nrows = self.nrows * other.nrows;
        let ncols = self.ncols * other.ncols;
        let mut cols = Vec::with_capacity(ncols);
        for a in &self.cols {
            for b in &other.cols {
                let mut c = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (k, y) in b {
                        c.push((i * other.nrows + k, x * y));
                    }
                }
                cols.push(c);
            }
        }
        SMat { nrows, ncols, cols }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &SMat) -> SMat {
        let mut cols = self.cols.clone();
        for c in &other.cols {
            cols.push(c.iter().map(|(i, x)| (i + self.nrows, x.clone())).collect());
        }
        SMat { nrows: self.nrows + other.nrows, ncols: self.ncols + other.ncols, cols }
    }

    /// Keeps the listed rows, renumbered in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> SMat {
        let mut pos = vec![usize::MAX; self.nrows];
        for (k, &r) in rows.iter().enumerate() {
            pos[r] = k;
        }
        let cols = self
            .cols
            .iter()
            .map(|c| {
                let mut v: SVec = c
                    .iter()
                    .filter(|(i, _)| pos[*i] != usize::MAX)
                    .map(|(i, x)| (pos[*i], x.clone()))
                    .collect();
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        SMat { nrows: rows.len(), ncols: self.ncols, cols }
    }

    pub fn select_cols(&self, cols: &[usize]) -> SMat {
        SMat { nrows: self.nrows, ncols: cols.len(), cols: cols.iter().map(|&j| self.cols[j].clone()).collect() }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut d = vec![vec![Rat::zero(); self.ncols]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c {
                d[*i][j] = x.clone();
            }
        }
        d
    }

    pub fn rank(&self) -> usize {
        super::bareiss::rank(self)
    }
}
