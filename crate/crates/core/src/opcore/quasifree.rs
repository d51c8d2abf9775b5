use super::classspace::{transport, Shape};
use super::free::FreeOp;
use super::rep::VModule;
use super::table::{ComposeKey, FOpTable};
use super::OpError;
use crate::exactlin::{homology_dims, rat_one, BasedSpace, ChainComplex, SMat, SVec, SparseMap, SvAcc};
use crate::graphkit::perm::Perm;
use crate::graphkit::{canonicalize_cached, splits, GraphClass, Sig, VertexRule, Window};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

/// One vertex-splitting term of a differential: a one-edge split class at `s` together
/// with a map `gens(s) -> gens(s_u) ⊗ gens(s_w)`.
#[derive(Clone, Debug)]
pub struct SplitTerm {
    pub split: Arc<GraphClass>,
    pub matrix: SMat,
}

/// A free op with a differential determined by vertex splittings; the cobar-type
/// complexes (Feynman transforms) are of this form.
#[derive(Clone, Debug)]
pub struct QuasiFree {
    pub name: String,
    pub free: FreeOp,
    pub delta: BTreeMap<Sig, Vec<SplitTerm>>,
}

impl QuasiFree {
    pub fn new(name: &str, gens: VModule, window: Window, odd: bool, delta: BTreeMap<Sig, Vec<SplitTerm>>) -> QuasiFree {
        QuasiFree { name: name.to_string(), free: FreeOp::new(gens, window, odd), delta }
    }

    pub fn window(&self) -> Window {
        self.free.window
    }

    /// Image of a global coordinate vector of degree `d` at `s`.
    pub fn apply(&self, s: Sig, x: &SVec) -> SVec {
        let sp = self.free.space(s);
        let gens = &self.free.gens;
        let mut acc = SvAcc::new();
        for (b, xb) in sp.by_block(x) {
            let c = &sp.blocks[b];
            let g = &c.class.graph;
            let lifted = sp.lift_local(b, &xb);
            for v in 0..g.nverts() {
                let Some(terms) = self.delta.get(&c.vsigs[v]) else { continue };
                for t in terms {
                    let sg = &t.split.graph;
                    let two = sg.nverts() == 2;
                    let su = sg.vertex_sig(0);
                    let du = gens.dim(su);
                    let (sw, dw) = if two {
                        let sw = sg.vertex_sig(1);
                        (Some(sw), gens.dim(sw))
                    } else {
                        (None, 1)
                    };
                    if du == 0 || dw == 0 {
                        continue;
                    }
                    let (raw, edges) = g.insert_split(v, sg);
                    let mut dims = c.shape.dims.clone();
                    dims[v] = du;
                    let mut sigs = c.vsigs.clone();
                    sigs[v] = su;
                    if let Some(sw) = sw {
                        dims.push(dw);
                        sigs.push(sw);
                    }
                    let src = Shape::new(dims);
                    // expand factor v through the split map
                    let mut tensor = SvAcc::new();
                    for (idx, coef) in &lifted {
                        let multi = c.shape.split(*idx);
                        for (r, y) in &t.matrix.cols[multi[v]] {
                            let mut m2 = multi.clone();
                            m2[v] = r / dw;
                            if two {
                                m2.push(r % dw);
                            }
                            tensor.add(src.join(&m2), coef * y);
                        }
                    }
                    let tensor = tensor.finish();
                    if tensor.is_empty() {
                        continue;
                    }
                    let canon = canonicalize_cached(&raw);
                    let Some(tb) = sp.block_of(&canon.key) else { continue };
                    let iso = canon.iso(&raw, &edges);
                    let moved = transport(&tensor, &src, &sigs, &iso, &sp.blocks[tb].shape, gens, self.free.odd);
                    acc.add_vec(&sp.project_into(tb, &moved), &rat_one());
                }
            }
        }
        acc.finish()
    }

    /// Matrix of the differential from degree `d` to degree `d + 1` at `s` in local
    /// coordinates of the two degree blocks.
    pub fn differential(&self, s: Sig, d: usize) -> SMat {
        let sp = self.free.space(s);
        let src = sp.coords_of_degree(d);
        let dst = sp.coords_of_degree(d + 1);
        let cols = src
            .clone()
            .into_par_iter()
            .map(|i| {
                self.apply(s, &vec![(i, rat_one())])
                    .into_iter()
                    .map(|(k, c)| {
                        debug_assert!(dst.contains(&k), "differential raises degree by one");
                        (k - dst.start, c)
                    })
                    .collect()
            })
            .collect();
        SMat::from_cols(dst.len(), cols)
    }

    /// The complex at `s`, graded by edge count, differential of degree +1.
    pub fn complex(&self, s: Sig) -> ChainComplex {
        let top = self.window().top_degree(s);
        let sp = self.free.space(s);
        let mut c = ChainComplex::new(1);
        let spaces: Vec<BasedSpace> =
            (0..=top).map(|d| BasedSpace::uniform(&format!("d{d}_"), sp.coords_of_degree(d).len(), d as i64)).collect();
        for d in 0..=top {
            c.spaces.insert(d as i64, spaces[d].clone());
            if d < top {
                let m = self.differential(s, d);
                c.differentials.insert(
                    d as i64,
                    SparseMap::new(spaces[d].clone(), spaces[d + 1].clone(), m).expect("shapes agree"),
                );
            }
        }
        c
    }

    pub fn dims(&self, s: Sig) -> Vec<usize> {
        let top = self.window().top_degree(s);
        let sp = self.free.space(s);
        (0..=top).map(|d| sp.coords_of_degree(d).len()).collect()
    }

    pub fn homology(&self, s: Sig) -> Result<Vec<usize>, OpError> {
        let c = self.complex(s);
        let h = homology_dims(&c).map_err(|_| OpError::DSquared(self.name.clone(), self.free.flavor.fmt_sig(s)))?;
        Ok(h.values().copied().collect())
    }

    pub fn check_d_squared(&self) -> Result<(), OpError> {
        self.window().sigs().par_iter().try_for_each(|&s| {
            self.complex(s)
                .check_d_squared()
                .map_err(|_| OpError::DSquared(self.name.clone(), self.free.flavor.fmt_sig(s)))
        })
    }

    /// Euler characteristic of the complex at `s` (degree = edge count).
    pub fn euler(&self, s: Sig) -> i64 {
        self.dims(s).iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }
}

/// Leg-relabelling from the listing of a contracted split to slot order.
pub fn split_relabel(split: &GraphClass) -> (ComposeKey, Perm) {
    let g = &split.graph;
    let (f, h) = split.edges[0];
    let vo = g.vertex_of();
    let (f, h) = if vo[f] == 0 { (f, h) } else { (h, f) };
    let pos = |v: usize, x: usize| g.vflags[v].iter().position(|&y| y == x).unwrap();
    if g.nverts() == 1 {
        let key = ComposeKey::loop_key(g.vertex_sig(0), pos(0, f), pos(0, h));
        let ComposeKey::Loop { a, i, j } = key else { unreachable!() };
        let (_, order) = g.flavor.loop_order(a, i, j);
        let p = order.iter().map(|&k| g.leg[g.vflags[0][k]]).collect();
        (key, p)
    } else {
        let (a, b) = (g.vertex_sig(0), g.vertex_sig(1));
        let (i, j) = (pos(0, f), pos(1, h));
        let (_, order) = g.flavor.glue_order(a, i, b, j);
        let p = order.iter().map(|&(side, k)| g.leg[g.vflags[side as usize][k]]).collect();
        (ComposeKey::Graft { a, i, b, j }, p)
    }
}

/// Composition of `p` along a split class, landing in slot order:
/// `P(s_u) ⊗ P(s_w) -> P(s)` (or `P(s_u) -> P(s)` for a loop).
pub fn split_composition(p: &FOpTable, split: &GraphClass) -> SMat {
    let (key, perm) = split_relabel(split);
    let m = p.compose_map(&key);
    match p.rep(key.result(p.flavor)) {
        Some(rep) => rep.rho(&perm).mul(&m),
        None => m,
    }
}

/// The Feynman transform: free on the levelwise dual of `p` with flipped parity and
/// differential dual to the compositions of `p`.
pub fn feynman_transform(p: &FOpTable) -> Result<QuasiFree, OpError> {
    let w = p.window;
    let rule = VertexRule::of(&w);
    let mut delta = BTreeMap::new();
    for s in w.sigs() {
        if p.dim(s) == 0 {
            continue;
        }
        let terms: Vec<SplitTerm> = splits(rule, s)
            .iter()
            .filter_map(|sp| {
                let m = split_composition(p, sp).transpose();
                (!m.is_zero()).then(|| SplitTerm { split: sp.clone(), matrix: m })
            })
            .collect();
        delta.insert(s, terms);
    }
    let qf = QuasiFree::new(&format!("D({})", p.name), p.vmodule().dual(), w, !p.odd, delta);
    qf.check_d_squared()?;
    Ok(qf)
}
