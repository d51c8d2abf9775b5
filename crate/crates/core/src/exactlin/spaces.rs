use super::echelon::Echelon;
use super::rat::{rat, Rat};
use super::sparse::{SMat, SVec, SvAcc};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinError {
    #[error("malformed action: {0}")]
    MalformedAction(String),
    #[error("not a complex: d∘d ≠ 0 out of degree {0}")]
    NotAComplex(i64),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// A finite-dimensional graded vector space with a named basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasedSpace {
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
}

impl BasedSpace {
    pub fn new(labels: Vec<String>, degrees: Vec<i64>) -> Result<Self, LinError> {
        if labels.len() != degrees.len() {
            return Err(LinError::InvalidSpace("labels and degrees differ in length".into()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(LinError::InvalidSpace(format!("duplicate label {l}")));
            }
        }
        Ok(BasedSpace { labels, degrees })
    }

    /// `dim` basis vectors `prefix0, prefix1, ...` all in degree `deg`.
    pub fn uniform(prefix: &str, dim: usize, deg: i64) -> Self {
        BasedSpace { labels: (0..dim).map(|i| format!("{prefix}{i}")).collect(), degrees: vec![deg; dim] }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A linear map between based spaces; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMap {
    pub source: BasedSpace,
    pub target: BasedSpace,
    pub matrix: SMat,
}

impl SparseMap {
    pub fn new(source: BasedSpace, target: BasedSpace, matrix: SMat) -> Result<Self, LinError> {
        if matrix.nrows != target.dim() || matrix.ncols != source.dim() {
            return Err(LinError::Dimension(format!(
                "{}x{} matrix for map {} -> {}",
                matrix.nrows,
                matrix.ncols,
                source.dim(),
                target.dim()
            )));
        }
        Ok(SparseMap { source, target, matrix })
    }

    pub fn zero(source: BasedSpace, target: BasedSpace) -> Self {
        let m = SMat::zeros(target.dim(), source.dim());
        SparseMap { source, target, matrix: m }
    }

    pub fn entry(&self, target_label: &str, source_label: &str) -> Option<Rat> {
        let t = self.target.index_of(target_label)?;
        let s = self.source.index_of(source_label)?;
        Some(self.matrix.get(t, s))
    }

    pub fn compose(&self, first: &SparseMap) -> Result<SparseMap, LinError> {
        if first.target != self.source {
            return Err(LinError::Dimension("composable maps must share a space".into()));
        }
        Ok(SparseMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }
}

/// A signed permutation of basis indices: `e_i ↦ sign[i] · e_{image[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPerm {
    pub image: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { image: (0..n).collect(), sign: vec![1; n] }
    }

    pub fn from_perm(image: Vec<usize>) -> Self {
        let n = image.len();
        SignedPerm { image, sign: vec![1; n] }
    }

    /// `self ∘ other`
    pub fn then_after(&self, other: &SignedPerm) -> SignedPerm {
        let image = other.image.iter().map(|&j| self.image[j]).collect();
        let sign = (0..other.image.len()).map(|i| other.sign[i] * self.sign[other.image[i]]).collect();
        SignedPerm { image, sign }
    }

    pub fn is_bijection(&self) -> bool {
        let n = self.image.len();
        let mut seen = vec![false; n];
        for &j in &self.image {
            if j >= n || seen[j] {
                return false;
            }
            seen[j] = true;
        }
        self.sign.len() == n && self.sign.iter().all(|s| *s == 1 || *s == -1)
    }

    pub fn to_matrix(&self) -> SMat {
        let n = self.image.len();
        let cols = (0..n).map(|i| vec![(self.image[i], rat(self.sign[i] as i64))]).collect();
        SMat::from_cols(n, cols)
    }
}

/// A finite group given by the explicit list of its elements as signed permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAction {
    pub elements: Vec<SignedPerm>,
}

impl GroupAction {
    pub fn trivial(n: usize) -> Self {
        GroupAction { elements: vec![SignedPerm::identity(n)] }
    }

    /// Closes a generating set under composition.
    pub fn generated_by(n: usize, gens: &[SignedPerm]) -> Result<Self, LinError> {
        for g in gens {
            if g.image.len() != n || !g.is_bijection() {
                return Err(LinError::MalformedAction("generator is not an invertible signed permutation".into()));
            }
        }
        let mut elements = vec![SignedPerm::identity(n)];
        let mut seen: HashSet<SignedPerm> = elements.iter().cloned().collect();
        let mut k = 0;
        while k < elements.len() {
            for g in gens {
                let h = g.then_after(&elements[k]);
                if seen.insert(h.clone()) {
                    elements.push(h);
                }
            }
            k += 1;
        }
        Ok(GroupAction { elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn validate(&self, space: &BasedSpace) -> Result<(), LinError> {
        let n = space.dim();
        if self.elements.is_empty() {
            return Err(LinError::MalformedAction("empty group".into()));
        }
        let set: HashSet<&SignedPerm> = self.elements.iter().collect();
        if set.len() != self.elements.len() {
            return Err(LinError::MalformedAction("repeated element".into()));
        }
        for g in &self.elements {
            if g.image.len() != n || !g.is_bijection() {
                return Err(LinError::MalformedAction("element table is not an invertible signed permutation".into()));
            }
            for i in 0..n {
                if space.degrees[i] != space.degrees[g.image[i]] {
                    return Err(LinError::MalformedAction("action does not preserve the grading".into()));
                }
            }
        }
        if !set.contains(&SignedPerm::identity(n)) {
            return Err(LinError::MalformedAction("identity missing".into()));
        }
        for a in &self.elements {
            for b in &self.elements {
                if !set.contains(&a.then_after(b)) {
                    return Err(LinError::MalformedAction("not closed under composition".into()));
                }
            }
        }
        Ok(())
    }
}

/// `P = (1/|G|) Σ_g g`.
pub fn reynolds_projector(space: &BasedSpace, action: &GroupAction) -> Result<SparseMap, LinError> {
    action.validate(space)?;
    let n = space.dim();
    let inv = Rat::one() / rat(action.order() as i64);
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = SvAcc::new();
        for g in &action.elements {
            acc.add(g.image[i], rat(g.sign[i] as i64) * &inv);
        }
        cols.push(acc.finish());
    }
    Ok(SparseMap { source: space.clone(), target: space.clone(), matrix: SMat::from_cols(n, cols) })
}

/// Coinvariant quotient: the basis is the column-reduced basis of the projector image,
/// and the quotient map sends `x` to the coordinates of `P x` in that basis.
pub fn coinvariants(space: &BasedSpace, action: &GroupAction) -> Result<(BasedSpace, SparseMap), LinError> {
    let p = reynolds_projector(space, action)?;
    let c = Coinvariants::from_projector_columns(space.dim(), p.matrix.cols.clone());
    let labels: Vec<String> = c.pivots.iter().map(|&i| format!("[{}]", space.labels[i])).collect();
    let degrees: Vec<i64> = c.pivots.iter().map(|&i| space.degrees[i]).collect();
    let q = BasedSpace::new(labels, degrees)?;
    let matrix = SMat::from_cols(q.dim(), c.qcols.clone());
    Ok((q.clone(), SparseMap { source: space.clone(), target: q, matrix }))
}

/// Coinvariants of a linear action presented by the columns of its Reynolds projector.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub dim: usize,
    /// Pivot positions of the reduced image basis.
    pub pivots: Vec<usize>,
    /// Basis of `im P` inside the original space; `basis[k]` has a 1 at `pivots[k]`.
    pub basis: Vec<SVec>,
    /// `qcols[m]` = coinvariant coordinates of the basis vector `e_m`.
    pub qcols: Vec<SVec>,
}

impl Coinvariants {
    pub fn from_projector_columns(dim: usize, pcols: Vec<SVec>) -> Self {
        let mut e = Echelon::new(dim);
        for c in &pcols {
            e.insert(c);
        }
        let pivots = e.pivots();
        let basis = e.basis();
        let mut pos = vec![usize::MAX; dim];
        for (k, &p) in pivots.iter().enumerate() {
            pos[p] = k;
        }
        let qcols = pcols
            .iter()
            .map(|c| c.iter().filter(|(i, _)| pos[*i] != usize::MAX).map(|(i, x)| (pos[*i], x.clone())).collect())
            .collect();
        Coinvariants { dim, pivots, basis, qcols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coinvariant coordinates of an arbitrary vector.
    pub fn project(&self, v: &SVec) -> SVec {
        let mut acc = SvAcc::new();
        for (m, x) in v {
            acc.add_vec(&self.qcols[*m], x);
        }
        acc.finish()
    }
}

/// Projector columns for the average of a family of linear maps given by their action on basis vectors.
pub fn average_columns(dim: usize, group_order: usize, act: impl Fn(usize, usize) -> SVec) -> Vec<SVec> {
    let inv = Rat::one() / rat(group_order as i64);
    (0..dim)
        .map(|m| {
            let mut acc = SvAcc::new();
            for g in 0..group_order {
                acc.add_vec(&act(g, m), &inv);
            }
            acc.finish()
        })
        .collect()
}

/// Cochain or chain complex: `d_n : C_n → C_{n + step}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub spaces: BTreeMap<i64, BasedSpace>,
    pub differentials: BTreeMap<i64, SparseMap>,
    pub step: i64,
}

impl ChainComplex {
    pub fn new(step: i64) -> Self {
        assert!(step == 1 || step == -1);
        ChainComplex { spaces: BTreeMap::new(), differentials: BTreeMap::new(), step }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.spaces.get(&n).map_or(0, |s| s.dim())
    }

    fn diff_matrix(&self, n: i64) -> Option<&SMat> {
        self.differentials.get(&n).map(|m| &m.matrix)
    }

    pub fn check_d_squared(&self) -> Result<(), LinError> {
        for (&n, d) in &self.differentials {
            if let Some(d2) = self.differentials.get(&(n + self.step)) {
                if !d2.matrix.mul(&d.matrix).is_zero() {
                    return Err(LinError::NotAComplex(n));
                }
            }
        }
        Ok(())
    }
}

pub fn homology_dims(c: &ChainComplex) -> Result<BTreeMap<i64, usize>, LinError> {
    c.check_d_squared()?;
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    for (&n, d) in &c.differentials {
        ranks.insert(n, d.matrix.rank());
    }
    let mut out = BTreeMap::new();
    for &n in c.spaces.keys() {
        let out_rank = c.diff_matrix(n).map_or(0, |_| ranks[&n]);
        let in_rank = ranks.get(&(n - c.step)).copied().unwrap_or(0);
        out.insert(n, c.dim(n) - out_rank - in_rank);
    }
    Ok(out)
}

pub fn euler_char(c: &ChainComplex) -> Rat {
    let mut s = Rat::zero();
    for (&n, sp) in &c.spaces {
        let d = rat(sp.dim() as i64);
        if n.rem_euclid(2) == 0 {
            s += d;
        } else {
            s -= d;
        }
    }
    s
}

/// Standard rank entry point over a `SparseMap`.
pub fn rank(m: &SparseMap) -> usize {
    m.matrix.rank()
}
