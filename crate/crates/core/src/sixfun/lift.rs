use super::decor::Fiber;
use super::MorphismId;
use crate::exactlin::{SMat, SVec};
use crate::graphkit::perm::{self, Perm};
use crate::graphkit::{Flavor, Sig, Window};
use crate::opcore::{ComposeKey, FOpTable, OpError, Rep, VModule};
use std::collections::BTreeMap;

fn shifted(v: &SVec, by: usize) -> SVec {
    v.iter().map(|(i, c)| (i + by, c.clone())).collect()
}

/// The induced representation on a fiber: `pi` sends the copy of `X(w)` decorated by
/// `d` to the one decorated by `d'`, acting by `h` where `pi ∘ reps[d] = reps[d'] ∘ h`.
pub fn lifted_rep(m: MorphismId, fiber: &Fiber, module: &VModule) -> Rep {
    Rep::from_fn(m.target(), fiber.v, fiber.dim, |pi| {
        let mut cols: Vec<SVec> = vec![Vec::new(); fiber.dim];
        for (k, part) in fiber.parts.iter().enumerate() {
            let rep = module.get(part.w).expect("fiber parts have nonzero width");
            for d in 0..part.decos.len() {
                let (d2, h) = part.decos.locate(&perm::compose(pi, &part.decos.reps[d]));
                let mh = rep.rho(h);
                for x in 0..part.width {
                    cols[fiber.index(k, d, x)] = shifted(&mh.cols[x], fiber.index(k, d2, 0));
                }
            }
        }
        SMat::from_cols(fiber.dim, cols)
    })
}

/// The left adjoint `l` on V-modules: `l(E)(v) = ⊕_{phi(w)=v} [E(w) ⊗ k[Aut v]]_{Aut w}`.
pub fn lift_module(m: MorphismId, e: &VModule, source: &Window, target: &Window) -> VModule {
    let mut out = VModule::new();
    for v in target.sigs() {
        let fiber = Fiber::new(m, v, source, |w| e.dim(w));
        if fiber.dim > 0 {
            out.insert(lifted_rep(m, &fiber, e));
        }
    }
    out
}

/// Restriction `r` on V-modules: `r(E)(w) = E(phi(w))` with the action of `Aut(w)`.
pub fn restrict_module(m: MorphismId, e: &VModule, source: &Window) -> VModule {
    let mut out = VModule::new();
    for w in source.sigs() {
        if let Some(rep) = e.get(m.sig_map(w)) {
            out.insert(rep.pull_back(m.source(), w, |p| p.clone()));
        }
    }
    out
}

fn check_flavor(t: &FOpTable, f: Flavor, what: &str) -> Result<(), OpError> {
    if t.flavor != f {
        return Err(OpError::Input(format!("{what} {} lives in the {} flavor, expected {}", t.name, t.flavor, f)));
    }
    Ok(())
}

/// Position of each result slot of a source composition among the result slots of the
/// image composition, after the inputs are decorated by `ia` and `ib`.
fn result_transport(
    target_order: &[(u8, usize)],
    source_order: &[(u8, usize)],
    ia: &[usize],
    ib: &[usize],
) -> Perm {
    source_order
        .iter()
        .map(|&(side, k)| {
            let slot = if side == 0 { ia[k] } else { ib[k] };
            target_order.iter().position(|&x| x == (side, slot)).expect("slot survives")
        })
        .collect()
}

/// The table that vanishes everywhere in `window`.
pub fn zero_table(name: &str, window: Window, odd: bool) -> FOpTable {
    let spaces = window.sigs().into_iter().map(|s| (s, Rep::zero(window.flavor, s))).collect();
    let weights = window.sigs().into_iter().map(|s| (s, Vec::new())).collect();
    FOpTable::from_fn(name, window, odd, spaces, weights, |_| unreachable!("no nonzero keys"))
}

/// `L^!(P)` in the image window of `P`'s window.
pub fn shriek_pushforward(m: MorphismId, p: &FOpTable) -> Result<FOpTable, OpError> {
    shriek_pushforward_in(m, p, &m.image_window(&p.window))
}

/// `L^!(P)` in a chosen target window. A decorated composition is the image of a source
/// composition exactly when the glued slots, read through the decorations, form a valid
/// source grafting; otherwise it is zero. There are no source loops, so loops vanish.
pub fn shriek_pushforward_in(m: MorphismId, p: &FOpTable, window: &Window) -> Result<FOpTable, OpError> {
    check_flavor(p, m.source(), "input")?;
    if window.flavor != m.target() {
        return Err(OpError::Input(format!("target window must be {}", m.target())));
    }
    let fibers: BTreeMap<Sig, Fiber> =
        window.sigs().into_iter().map(|v| (v, Fiber::new(m, v, &p.window, |w| p.dim(w)))).collect();
    let pm = p.vmodule();
    let mut spaces = BTreeMap::new();
    let mut weights = BTreeMap::new();
    for (v, f) in &fibers {
        spaces.insert(*v, lifted_rep(m, f, &pm));
        let mut wt = Vec::with_capacity(f.dim);
        for part in &f.parts {
            for _ in 0..part.decos.len() {
                wt.extend((0..part.width).map(|k| p.weight(part.w, k)));
            }
        }
        weights.insert(*v, wt);
    }
    let src = m.source();
    let tgt = m.target();
    let name = format!("L!({})", p.name);
    Ok(FOpTable::from_fn(&name, *window, p.odd, spaces, weights, |key| {
        let r = key.result(tgt);
        let fr = &fibers[&r];
        let ComposeKey::Graft { a, i, b, j } = *key else {
            let ComposeKey::Loop { a, .. } = *key else { unreachable!() };
            return SMat::zeros(fr.dim, fibers[&a].dim);
        };
        let (fa, fb) = (&fibers[&a], &fibers[&b]);
        let (_, torder) = tgt.glue_order(a, i, b, j);
        let mut cols: Vec<SVec> = vec![Vec::new(); fa.dim * fb.dim];
        for (ka, pa) in fa.parts.iter().enumerate() {
            for (kb, pb) in fb.parts.iter().enumerate() {
                for da in 0..pa.decos.len() {
                    let ia = &pa.decos.reps[da];
                    let i2 = perm::inverse(ia)[i];
                    for db in 0..pb.decos.len() {
                        let ib = &pb.decos.reps[db];
                        let j2 = perm::inverse(ib)[j];
                        if !src.graft_valid(pa.w, i2, pb.w, j2) {
                            continue;
                        }
                        let (wr, sorder) = src.glue_order(pa.w, i2, pb.w, j2);
                        let Some(kr) = fr.part(wr) else { continue };
                        let pr = &fr.parts[kr];
                        let tau = result_transport(&torder, &sorder, ia, ib);
                        let (dr, h) = pr.decos.locate(&tau);
                        let skey = ComposeKey::Graft { a: pa.w, i: i2, b: pb.w, j: j2 };
                        let mm = p.rep(wr).expect("nonzero part").rho(h).mul(&p.compose_map(&skey));
                        let base = fr.index(kr, dr, 0);
                        for xa in 0..pa.width {
                            for xb in 0..pb.width {
                                let c = fa.index(ka, da, xa) * fb.dim + fb.index(kb, db, xb);
                                cols[c] = shifted(&mm.cols[xa * pb.width + xb], base);
                            }
                        }
                    }
                }
            }
        }
        SMat::from_cols(fr.dim, cols)
    }))
}

/// `R(O) = O ∘ phi` on a source window.
pub fn restrict(m: MorphismId, o: &FOpTable, source: &Window) -> Result<FOpTable, OpError> {
    check_flavor(o, m.target(), "input")?;
    if source.flavor != m.source() {
        return Err(OpError::Input(format!("source window must be {}", m.source())));
    }
    let om = o.vmodule();
    let rm = restrict_module(m, &om, source);
    let mut spaces = BTreeMap::new();
    let mut weights = BTreeMap::new();
    for w in source.sigs() {
        let v = m.sig_map(w);
        let rep = rm.get(w).cloned().unwrap_or_else(|| Rep::zero(m.source(), w));
        weights.insert(w, (0..rep.dim).map(|k| o.weight(v, k)).collect());
        spaces.insert(w, rep);
    }
    let (src, tgt) = (m.source(), m.target());
    let name = format!("R({})", o.name);
    Ok(FOpTable::from_fn(&name, *source, o.odd, spaces, weights, |key| {
        let ComposeKey::Graft { a, i, b, j } = *key else { unreachable!("catalog sources have no loops") };
        let (va, vb) = (m.sig_map(a), m.sig_map(b));
        let (_, sorder) = src.glue_order(a, i, b, j);
        let (vr, torder) = tgt.glue_order(va, i, vb, j);
        let id_a = perm::identity(a.n);
        let id_b = perm::identity(b.n);
        let tau = result_transport(&torder, &sorder, &id_a, &id_b);
        let mt = o.compose_map(&ComposeKey::Graft { a: va, i, b: vb, j });
        match o.rep(vr) {
            Some(rep) => rep.rho(&perm::inverse(&tau)).mul(&mt),
            None => mt,
        }
    }))
}
