use super::rep::VModule;
use crate::exactlin::{rat_one, Coinvariants, Rat, SVec, SvAcc};
use crate::graphkit::{classes, GraphClass, Iso, Sig, VertexRule};
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Arc;

/// Mixed-radix layout of a tensor product over vertices; vertex 0 is most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub dims: Vec<usize>,
    pub strides: Vec<usize>,
    pub total: usize,
}

impl Shape {
    pub fn new(dims: Vec<usize>) -> Shape {
        let mut strides = vec![1; dims.len()];
        for v in (0..dims.len().saturating_sub(1)).rev() {
            strides[v] = strides[v + 1] * dims[v + 1];
        }
        let total = dims.iter().product();
        Shape { dims, strides, total }
    }

    pub fn split(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for v in 0..self.dims.len() {
            out[v] = idx / self.strides[v];
            idx %= self.strides[v];
        }
        out
    }

    pub fn join(&self, multi: &[usize]) -> usize {
        multi.iter().zip(&self.strides).map(|(m, s)| m * s).sum()
    }
}

/// Moves a tensor along an isomorphism: the factor at source vertex `v` is acted on by
/// `rho(slot_perms[v])` and placed at `vmap[v]`; odd parity multiplies by the
/// orientation sign.
pub fn transport(
    tensor: &SVec,
    src: &Shape,
    src_sigs: &[Sig],
    iso: &Iso,
    dst: &Shape,
    labels: &VModule,
    odd: bool,
) -> SVec {
    let mut acc = SvAcc::new();
    let sign = if odd && iso.sign < 0 { -Rat::one() } else { Rat::one() };
    let mats: Vec<_> = src_sigs.iter().zip(&iso.slot_perms).map(|(s, p)| labels.get(*s).map(|r| r.rho(p))).collect();
    for (idx, c) in tensor {
        let multi = src.split(*idx);
        let mut terms: Vec<(usize, Rat)> = vec![(0, c * &sign)];
        for v in 0..multi.len() {
            let Some(m) = mats[v] else { return vec![] };
            let col = &m.cols[multi[v]];
            let stride = dst.strides[iso.vmap[v]];
            let mut next = Vec::with_capacity(terms.len() * col.len());
            for (base, coef) in &terms {
                for (i, x) in col {
                    next.push((base + i * stride, coef * x));
                }
            }
            terms = next;
        }
        for (i, x) in terms {
            acc.add(i, x);
        }
    }
    acc.finish()
}

/// Coinvariants of the labelled tensor space of one graph class.
#[derive(Clone, Debug)]
pub struct ClassSpace {
    pub class: Arc<GraphClass>,
    pub vsigs: Vec<Sig>,
    pub shape: Shape,
    pub coinv: Coinvariants,
}

impl ClassSpace {
    /// `None` when the labelled tensor space or its coinvariants vanish.
    pub fn build(class: Arc<GraphClass>, labels: &VModule, odd: bool) -> Option<ClassSpace> {
        let vsigs: Vec<Sig> = (0..class.graph.nverts()).map(|v| class.graph.vertex_sig(v)).collect();
        let dims: Vec<usize> = vsigs.iter().map(|s| labels.dim(*s)).collect();
        let shape = Shape::new(dims);
        if shape.total == 0 {
            return None;
        }
        let coinv = if class.auts.len() == 1 {
            let units: Vec<SVec> = (0..shape.total).map(|m| vec![(m, rat_one())]).collect();
            Coinvariants { dim: shape.total, pivots: (0..shape.total).collect(), basis: units.clone(), qcols: units }
        } else {
            let isos: Vec<Iso> = (0..class.auts.len()).map(|k| class.aut_iso(k)).collect();
            let inv = Rat::one() / Rat::from_integer(isos.len().into());
            let cols = (0..shape.total)
                .map(|m| {
                    let mut acc = SvAcc::new();
                    let e = vec![(m, rat_one())];
                    for iso in &isos {
                        acc.add_vec(&transport(&e, &shape, &vsigs, iso, &shape, labels, odd), &inv);
                    }
                    acc.finish()
                })
                .collect();
            Coinvariants::from_projector_columns(shape.total, cols)
        };
        if coinv.rank() == 0 {
            return None;
        }
        Some(ClassSpace { class, vsigs, shape, coinv })
    }

    pub fn dim(&self) -> usize {
        self.coinv.rank()
    }

    pub fn lift(&self, k: usize) -> &SVec {
        &self.coinv.basis[k]
    }

    pub fn project(&self, tensor: &SVec) -> SVec {
        self.coinv.project(tensor)
    }

    pub fn degree(&self) -> usize {
        self.class.degree()
    }
}

/// Direct sum over classes at one signature, ordered by degree then canonical key.
#[derive(Clone, Debug)]
pub struct FreeSpace {
    pub sig: Sig,
    pub blocks: Vec<ClassSpace>,
    pub offsets: Vec<usize>,
    pub dim: usize,
    /// degree (edge count) of each coordinate
    pub weights: Vec<usize>,
    index: HashMap<Vec<u32>, usize>,
}

impl FreeSpace {
    pub fn build(rule: VertexRule, s: Sig, max_degree: usize, labels: &VModule, odd: bool) -> FreeSpace {
        let mut blocks = Vec::new();
        for d in 0..=max_degree {
            let cls = classes(rule, s, d);
            let built: Vec<Option<ClassSpace>> =
                cls.par_iter().map(|c| ClassSpace::build(c.clone(), labels, odd)).collect();
            blocks.extend(built.into_iter().flatten());
        }
        FreeSpace::from_blocks(s, blocks)
    }

    pub fn from_blocks(sig: Sig, blocks: Vec<ClassSpace>) -> FreeSpace {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut weights = Vec::new();
        let mut dim = 0;
        let mut index = HashMap::new();
        for (k, b) in blocks.iter().enumerate() {
            offsets.push(dim);
            dim += b.dim();
            weights.extend(std::iter::repeat_n(b.degree(), b.dim()));
            index.insert(b.class.key.clone(), k);
        }
        FreeSpace { sig, blocks, offsets, dim, weights, index }
    }

    pub fn block_of(&self, key: &[u32]) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Global coordinates of a tensor on block `b`.
    pub fn project_into(&self, b: usize, tensor: &SVec) -> SVec {
        let off = self.offsets[b];
        self.blocks[b].project(tensor).into_iter().map(|(i, x)| (i + off, x)).collect()
    }

    /// Splits global coordinates into per-block local coordinates.
    pub fn by_block(&self, x: &SVec) -> Vec<(usize, SVec)> {
        let mut out: Vec<(usize, SVec)> = Vec::new();
        for (i, c) in x {
            let b = self.offsets.partition_point(|&o| o <= *i) - 1;
            match out.last_mut() {
                Some((bb, v)) if *bb == b => v.push((i - self.offsets[b], c.clone())),
                _ => out.push((b, vec![(i - self.offsets[b], c.clone())])),
            }
        }
        out
    }

    /// Lifted tensor of local coordinates on one block.
    pub fn lift_local(&self, b: usize, local: &SVec) -> SVec {
        let mut acc = SvAcc::new();
        for (k, c) in local {
            acc.add_vec(self.blocks[b].lift(*k), c);
        }
        acc.finish()
    }

    pub fn coords_of_degree(&self, d: usize) -> std::ops::Range<usize> {
        let lo = self.weights.partition_point(|&w| w < d);
        let hi = self.weights.partition_point(|&w| w <= d);
        lo..hi
    }

    pub fn dims_by_degree(&self) -> Vec<usize> {
        let top = self.weights.iter().copied().max().unwrap_or(0);
        (0..=top).map(|d| self.coords_of_degree(d).len()).collect()
    }
}

/// Kronecker product of two sparse vectors with the right factor of size `nb`.
pub fn kron_vec(x: &SVec, y: &SVec, nb: usize) -> SVec {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (i, a) in x {
        for (j, b) in y {
            let v = a * b;
            if !v.is_zero() {
                out.push((i * nb + j, v));
            }
        }
    }
    out
}
