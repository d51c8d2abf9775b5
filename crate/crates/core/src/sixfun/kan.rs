use super::decor::Fiber;
use super::lift::{lift_module, shriek_pushforward_in};
use super::MorphismId;
use crate::exactlin::{sv_sub, sv_unit, SVec};
use crate::graphkit::perm;
use crate::graphkit::{canonicalize_cached, Graph, Sig, Window};
use crate::opcore::{
    saturate, table_from_ideal, transport, window_keys, ComposeKey, FOpTable, FreeOp, OpError, Quotient, Relations,
    Shape,
};
use std::collections::BTreeMap;

/// `L(P)` with the free op and ideal it was computed from.
#[derive(Clone, Debug)]
pub struct KanExtension {
    pub table: FOpTable,
    pub quotient: Quotient,
    /// identifications the window may have cut off
    pub warnings: Vec<String>,
}

/// Global coordinates of the corolla at `s` labelled by the generator vector `x`.
pub fn corolla_coords(free: &FreeOp, s: Sig, x: &SVec) -> SVec {
    let raw = Graph::corolla(free.flavor, s);
    let canon = canonicalize_cached(&raw);
    let sp = free.space(s);
    let Some(b) = sp.block_of(&canon.key) else { return Vec::new() };
    let iso = canon.iso(&raw, &[]);
    let dim = free.gens.dim(s);
    let moved = transport(x, &Shape::new(vec![dim]), &[s], &iso, &sp.blocks[b].shape, &free.gens, free.odd);
    sp.project_into(b, &moved)
}

/// The left Kan extension: the free target op on `l(P)` modulo the identification of
/// every source-contractible edge with its contraction, saturated inside `window`.
pub fn pushforward_l(m: MorphismId, p: &FOpTable, window: &Window) -> Result<KanExtension, OpError> {
    let shriek = shriek_pushforward_in(m, p, window)?;
    let gens = lift_module(m, &p.vmodule(), &p.window, window);
    let free = FreeOp::new(gens, *window, p.odd);
    let mut warnings = Vec::new();
    if window.max_degree.is_some() {
        warnings.push("degree-truncated window: identifications through larger graphs are missing".into());
    }
    let src = m.source();
    let tgt = m.target();
    let fibers: BTreeMap<Sig, Fiber> =
        window.sigs().into_iter().map(|v| (v, Fiber::new(m, v, &p.window, |w| p.dim(w)))).collect();
    let mut seeds = Relations::new();
    for key in window_keys(window) {
        let ComposeKey::Graft { a, i, b, j } = key else { continue };
        let r = key.result(tgt);
        let (fa, fb) = (&fibers[&a], &fibers[&b]);
        if fa.dim == 0 || fb.dim == 0 {
            continue;
        }
        let mc = shriek.compose_map(&key);
        for (ka, pa) in fa.parts.iter().enumerate() {
            for (kb, pb) in fb.parts.iter().enumerate() {
                for da in 0..pa.decos.len() {
                    let i2 = perm::inverse(&pa.decos.reps[da])[i];
                    for db in 0..pb.decos.len() {
                        let j2 = perm::inverse(&pb.decos.reps[db])[j];
                        if !src.graft_valid(pa.w, i2, pb.w, j2) {
                            continue;
                        }
                        let (wr, _) = src.glue_order(pa.w, i2, pb.w, j2);
                        if !p.window.contains(wr) {
                            warnings.push(format!(
                                "composite {} of the input lies outside its window",
                                src.fmt_sig(wr)
                            ));
                            continue;
                        }
                        for xa in 0..pa.width {
                            for xb in 0..pb.width {
                                let (ia, ib) = (fa.index(ka, da, xa), fb.index(kb, db, xb));
                                let ca = corolla_coords(&free, a, &sv_unit(ia));
                                let cb = corolla_coords(&free, b, &sv_unit(ib));
                                let Some(grafted) = free.graft(a, &ca, i, b, &cb, j) else { continue };
                                let contracted = corolla_coords(&free, r, &mc.cols[ia * fb.dim + ib]);
                                let rel = sv_sub(&grafted, &contracted);
                                if !rel.is_empty() {
                                    seeds.entry(r).or_default().push(rel);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    warnings.sort();
    warnings.dedup();
    let ideal = saturate(&free, &seeds, None);
    let (table, quotient) = table_from_ideal(&format!("L({})", p.name), free, ideal)?;
    Ok(KanExtension { table, quotient, warnings })
}
