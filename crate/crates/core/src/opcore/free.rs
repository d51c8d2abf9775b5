use super::classspace::{kron_vec, transport, FreeSpace, Shape};
use super::rep::VModule;
use crate::exactlin::{SVec, SvAcc};
use crate::graphkit::{canonicalize_cached, Flavor, Graph, Sig, VertexRule, Window};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// The free F-op on a V-module, truncated to a window, with coordinates graded by degree.
#[derive(Clone, Debug)]
pub struct FreeOp {
    pub flavor: Flavor,
    pub window: Window,
    pub odd: bool,
    pub gens: VModule,
    pub spaces: BTreeMap<Sig, FreeSpace>,
}

impl FreeOp {
    pub fn new(gens: VModule, window: Window, odd: bool) -> FreeOp {
        let rule = VertexRule::of(&window);
        let spaces = window
            .sigs()
            .par_iter()
            .map(|&s| (s, FreeSpace::build(rule, s, window.top_degree(s), &gens, odd)))
            .collect();
        FreeOp { flavor: window.flavor, window, odd, gens, spaces }
    }

    pub fn space(&self, s: Sig) -> &FreeSpace {
        &self.spaces[&s]
    }

    pub fn dim(&self, s: Sig) -> usize {
        self.spaces.get(&s).map_or(0, |f| f.dim)
    }

    /// Coordinates of the corolla summand (the generators) at `s`.
    pub fn generator_coords(&self, s: Sig) -> std::ops::Range<usize> {
        self.spaces.get(&s).map_or(0..0, |f| f.coords_of_degree(0))
    }

    /// Grafts `x` at slot `i` of `a` onto `y` at slot `j` of `b`; `None` if the result
    /// lies outside the window.
    pub fn graft(&self, a: Sig, x: &SVec, i: usize, b: Sig, y: &SVec, j: usize) -> Option<SVec> {
        let (r, _) = self.flavor.glue_order(a, i, b, j);
        let target = self.spaces.get(&r)?;
        let (sa, sb) = (self.space(a), self.space(b));
        let mut acc = SvAcc::new();
        for (ba, xa) in sa.by_block(x) {
            let ca = &sa.blocks[ba];
            let la = sa.lift_local(ba, &xa);
            for (bb, yb) in sb.by_block(y) {
                let cb = &sb.blocks[bb];
                let (raw, edges) = Graph::glue(&ca.class.graph, i, &cb.class.graph, j).expect("valid graft");
                let canon = canonicalize_cached(&raw);
                let Some(tb) = target.block_of(&canon.key) else { continue };
                let iso = canon.iso(&raw, &edges);
                let lb = sb.lift_local(bb, &yb);
                let tensor = kron_vec(&la, &lb, cb.shape.total);
                let src = Shape::new(ca.shape.dims.iter().chain(&cb.shape.dims).copied().collect());
                let sigs: Vec<Sig> = ca.vsigs.iter().chain(&cb.vsigs).copied().collect();
                let moved = transport(&tensor, &src, &sigs, &iso, &target.blocks[tb].shape, &self.gens, self.odd);
                acc.add_vec(&target.project_into(tb, &moved), &crate::exactlin::rat_one());
            }
        }
        Some(acc.finish())
    }

    /// Joins slots `i` and `j` of `x` (modular only).
    pub fn self_graft(&self, a: Sig, x: &SVec, i: usize, j: usize) -> Option<SVec> {
        let (r, _) = self.flavor.loop_order(a, i, j);
        let target = self.spaces.get(&r)?;
        let sa = self.space(a);
        let mut acc = SvAcc::new();
        for (ba, xa) in sa.by_block(x) {
            let ca = &sa.blocks[ba];
            let (raw, edges) = Graph::self_glue(&ca.class.graph, i, j).expect("valid loop");
            let canon = canonicalize_cached(&raw);
            let Some(tb) = target.block_of(&canon.key) else { continue };
            let iso = canon.iso(&raw, &edges);
            let moved =
                transport(&sa.lift_local(ba, &xa), &ca.shape, &ca.vsigs, &iso, &target.blocks[tb].shape, &self.gens, self.odd);
            acc.add_vec(&target.project_into(tb, &moved), &crate::exactlin::rat_one());
        }
        Some(acc.finish())
    }

    /// Symmetry action: leg `k` is renamed `p[k]`.
    pub fn act(&self, s: Sig, p: &[usize], x: &SVec) -> SVec {
        let sp = self.space(s);
        let mut acc = SvAcc::new();
        for (b, xb) in sp.by_block(x) {
            let c = &sp.blocks[b];
            let raw = c.class.graph.relabel_legs(p);
            let canon = canonicalize_cached(&raw);
            let tb = sp.block_of(&canon.key).expect("relabelling preserves the class");
            let iso = canon.iso(&raw, &c.class.edges);
            let moved = transport(&sp.lift_local(b, &xb), &c.shape, &c.vsigs, &iso, &sp.blocks[tb].shape, &self.gens, self.odd);
            acc.add_vec(&sp.project_into(tb, &moved), &crate::exactlin::rat_one());
        }
        acc.finish()
    }
}
