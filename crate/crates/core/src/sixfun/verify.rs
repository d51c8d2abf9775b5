use super::ambidex::{vertex_triangles, VertexPair};
use super::decor::Fiber;
use super::kan::{corolla_coords, pushforward_l};
use super::lift::{lift_module, restrict, restrict_module, shriek_pushforward, shriek_pushforward_in};
use super::pullback::shriek_pullback;
use super::report::FunctorReport;
use super::MorphismId;
use crate::catalog::endo::{digits, undigits};
use crate::catalog::{doubled_end_cyclic, end_dioperad, EndSpec};
use crate::exactlin::{rat_one, sv_unit, Rat, SMat, SVec, SvAcc};
use crate::graphkit::perm;
use crate::graphkit::{canonicalize_cached, Flavor, Graph, GraphClass, Sig, Window};
use crate::opcore::{
    feynman_transform, free_table, transport, window_keys, ComposeKey, FOpTable, FreeOp, OpError, QuadraticDatum,
    QuasiFree, Relations, SplitTerm, VModule,
};
use std::collections::BTreeMap;
use std::sync::Arc;

fn shifted(v: &SVec, by: usize) -> SVec {
    v.iter().map(|(i, c)| (i + by, c.clone())).collect()
}

fn fmt_dims(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|d| d.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn map_or_zero(maps: &BTreeMap<Sig, SMat>, s: Sig, rows: usize, cols: usize) -> SMat {
    maps.get(&s).cloned().unwrap_or_else(|| SMat::zeros(rows, cols))
}

/// Checks that levelwise maps `lhs(s) -> rhs(s)` form an isomorphism of F-ops: square and
/// invertible, equivariant, and compatible with every generating composition.
fn check_iso(report: &mut FunctorReport, lhs: &FOpTable, rhs: &FOpTable, maps: &BTreeMap<Sig, SMat>) {
    let fl = lhs.flavor;
    for s in lhs.window.sigs() {
        let (dl, dr) = (lhs.dim(s), rhs.dim(s));
        let m = map_or_zero(maps, s, dr, dl);
        let bij = dl == dr && m.rank() == dl;
        report.row(vec![fl.fmt_sig(s), dl.to_string(), dr.to_string(), bij.to_string()]);
        report.verdict("bijective", bij);
        if let (Some(rl), Some(rr)) = (lhs.rep(s), rhs.rep(s)) {
            let eq = fl.aut_gens(s).iter().all(|p| m.mul(rl.rho(p)).sub(&rr.rho(p).mul(&m)).is_zero());
            report.verdict("equivariant", eq);
        }
    }
    let mut ok = true;
    for key in window_keys(&lhs.window) {
        let r = key.result(fl);
        let mr = map_or_zero(maps, r, rhs.dim(r), lhs.dim(r));
        let before = match key {
            ComposeKey::Graft { a, b, .. } => {
                map_or_zero(maps, a, rhs.dim(a), lhs.dim(a)).kron(&map_or_zero(maps, b, rhs.dim(b), lhs.dim(b)))
            }
            ComposeKey::Loop { a, .. } => map_or_zero(maps, a, rhs.dim(a), lhs.dim(a)),
        };
        if !mr.mul(&lhs.compose_map(&key)).sub(&rhs.compose_map(&key).mul(&before)).is_zero() {
            ok = false;
            report.warnings.push(format!("structure maps disagree at {key:?}"));
        }
    }
    report.verdict("structure maps", ok);
}

/// The map `F(E) -> F(lE)` at `w` induced by viewing each source graph in the target
/// flavor and each label `x` at a vertex `s` as the undecorated copy `(s, 0, x)`.
/// `ft` must be free on `lift_module(m, fs.gens, ...)`.
pub fn graph_map_matrix(m: MorphismId, fs: &FreeOp, ft: &FreeOp, w: Sig) -> SMat {
    let v = m.sig_map(w);
    let (ss, st) = (fs.space(w), ft.space(v));
    let mut fibers: BTreeMap<Sig, Fiber> = BTreeMap::new();
    let mut cols = Vec::with_capacity(ss.dim);
    for c in &ss.blocks {
        let tsigs: Vec<Sig> = c.vsigs.iter().map(|&s| m.sig_map(s)).collect();
        for (&s, &t) in c.vsigs.iter().zip(&tsigs) {
            fibers.entry(s).or_insert_with(|| Fiber::new(m, t, &fs.window, |x| fs.gens.dim(x)));
        }
        let tshape = crate::opcore::Shape::new(tsigs.iter().map(|&t| ft.gens.dim(t)).collect());
        let raw = m.graph_map(&c.class.graph);
        let canon = canonicalize_cached(&raw);
        let target = st.block_of(&canon.key);
        let iso = canon.iso(&raw, &c.class.edges);
        for k in 0..c.dim() {
            let Some(tb) = target else {
                cols.push(Vec::new());
                continue;
            };
            let mut tensor = SvAcc::new();
            for (idx, x) in c.coinv.basis[k].iter() {
                let multi: Vec<usize> = c
                    .shape
                    .split(*idx)
                    .iter()
                    .zip(&c.vsigs)
                    .map(|(&lab, s)| {
                        let f = &fibers[s];
                        f.index(f.part(*s).expect("label sig in its own fiber"), 0, lab)
                    })
                    .collect();
                tensor.add(tshape.join(&multi), x.clone());
            }
            let moved = transport(&tensor.finish(), &tshape, &tsigs, &iso, &st.blocks[tb].shape, &ft.gens, ft.odd);
            cols.push(st.project_into(tb, &moved));
        }
    }
    SMat::from_cols(st.dim, cols)
}

/// `L` on a quadratic datum: lifted generators, relations viewed in the target flavor.
pub fn pushforward_datum(m: MorphismId, q: &QuadraticDatum, window: &Window) -> QuadraticDatum {
    let fs = q.weight_one();
    let gens = lift_module(m, &q.gens, &q.window, window);
    let ft = FreeOp::new(gens.clone(), window.with_max_degree(1), q.odd);
    let mut rels = Relations::new();
    for (&w, rs) in &q.rels {
        let v = m.sig_map(w);
        if !window.contains(v) {
            continue;
        }
        let phi = graph_map_matrix(m, &fs, &ft, w);
        rels.entry(v).or_default().extend(rs.iter().map(|r| phi.apply(r)).filter(|r| !r.is_empty()));
    }
    QuadraticDatum { name: format!("L({})", q.name), gens, rels, odd: q.odd, window: *window }
}

/// `L D(P)` as a quasi-free object: free on `l(P*)`, with each source splitting carried
/// to every decoration.
fn lifted_transform(m: MorphismId, dp: &QuasiFree, p_window: &Window, window: &Window) -> QuasiFree {
    let gens = lift_module(m, &dp.free.gens, p_window, window);
    let fiber = |v: Sig| Fiber::new(m, v, p_window, |w| dp.free.gens.dim(w));
    let mut delta = BTreeMap::new();
    for v in window.sigs() {
        let fv = fiber(v);
        let mut terms = Vec::new();
        for (k, part) in fv.parts.iter().enumerate() {
            let Some(src_terms) = dp.delta.get(&part.w) else { continue };
            for t in src_terms {
                let sg = &t.split.graph;
                let su = sg.vertex_sig(0);
                let sw = (sg.nverts() == 2).then(|| sg.vertex_sig(1));
                let fu = fiber(m.sig_map(su));
                let fw = sw.map(|s| fiber(m.sig_map(s)));
                let (Some(pu), dw_src) = (fu.part(su), sw.map_or(1, |s| dp.free.gens.dim(s))) else { continue };
                let pw = match (&fw, sw) {
                    (Some(f), Some(s)) => f.part(s),
                    _ => None,
                };
                let tdw = fw.as_ref().map_or(1, |f| f.dim);
                for d in 0..part.decos.len() {
                    let graph = m.graph_map(&sg.relabel_legs(&part.decos.reps[d]));
                    let edges = graph.edges();
                    let split = GraphClass { graph, key: Vec::new(), auts: Vec::new(), edges, odd_aut: false };
                    let mut cols: Vec<SVec> = vec![Vec::new(); fv.dim];
                    for x in 0..part.width {
                        let mut col: SVec = t.matrix.cols[x]
                            .iter()
                            .map(|(r, c)| {
                                let ru = fu.index(pu, 0, r / dw_src);
                                let rw = match (&fw, pw) {
                                    (Some(f), Some(p)) => f.index(p, 0, r % dw_src),
                                    _ => 0,
                                };
                                (ru * tdw + rw, c.clone())
                            })
                            .collect();
                        col.sort_by_key(|e| e.0);
                        cols[fv.index(k, d, x)] = col;
                    }
                    terms.push(SplitTerm { split: Arc::new(split), matrix: SMat::from_cols(fu.dim * tdw, cols) });
                }
            }
        }
        if !terms.is_empty() {
            delta.insert(v, terms);
        }
    }
    QuasiFree::new(&format!("LD({})", dp.name), gens, *window, dp.free.odd, delta)
}

fn compare_complexes(report: &mut FunctorReport, a: &QuasiFree, b: &QuasiFree) -> Result<(), OpError> {
    let fl = a.free.flavor;
    for s in a.window().sigs() {
        let (da, db) = (a.dims(s), b.dims(s));
        let (ha, hb) = (a.homology(s)?, b.homology(s)?);
        report.row(vec![fl.fmt_sig(s), fmt_dims(&da), fmt_dims(&db), fmt_dims(&ha), fmt_dims(&hb)]);
        report.verdict("dimensions", da == db);
        report.verdict("homology", ha == hb);
        if da == db {
            let chain = (0..da.len().saturating_sub(1)).all(|d| a.differential(s, d) == b.differential(s, d));
            report.verdict("chain map", chain);
        } else {
            report.verdict("chain map", false);
        }
    }
    Ok(())
}

/// Compares `D L^!(P)` with `L D(P)` in `window`. Both are free on the same V-module
/// (the dual of a lift is the lift of the dual), so the identification is the identity
/// on coordinates and is a chain map exactly when the differentials coincide.
pub fn verify_intertwining(m: MorphismId, p: &FOpTable, window: &Window) -> Result<FunctorReport, OpError> {
    if window.flavor != m.target() {
        return Err(OpError::Input(format!("window must be {}", m.target())));
    }
    let mut report = FunctorReport::new(
        &format!("D L^!({}) vs L D({}) along {}", p.name, p.name, m.name()),
        &["sig", "dims DL!", "dims LD", "homology DL!", "homology LD"],
    );
    let lp = shriek_pushforward_in(m, p, window)?;
    let dl = feynman_transform(&lp)?;
    let dp = feynman_transform(p)?;
    let ld = lifted_transform(m, &dp, &p.window, window);
    ld.check_d_squared()?;
    report.verdict("same generators", ld.free.gens == dl.free.gens);
    compare_complexes(&mut report, &dl, &ld)?;
    Ok(report)
}

/// Compares `D R(O)` with `R D(O)` for cyclic-to-modular: `R D(O)` at `((n))` is the
/// genus-zero part of `D(O)(0, n)`, identified with `D R(O)((n))` by `graph_map_matrix`.
pub fn verify_restriction_intertwining(m: MorphismId, o: &FOpTable, source: &Window) -> Result<FunctorReport, OpError> {
    if m != MorphismId::CyclicToModular {
        return Err(OpError::Input(format!("{} does not restrict Feynman transforms levelwise", m.name())));
    }
    let mut report = FunctorReport::new(
        &format!("D R({}) vs R D({})", o.name, o.name),
        &["sig", "dims DR", "dims RD", "homology DR", "homology RD"],
    );
    let ro = restrict(m, o, source)?;
    let dr = feynman_transform(&ro)?;
    let dopp = feynman_transform(o)?;
    for w in source.sigs() {
        let v = m.sig_map(w);
        if !o.window.contains(v) {
            continue;
        }
        let phi = graph_map_matrix(m, &dr.free, &dopp.free, w);
        let (ss, st) = (dr.free.space(w), dopp.free.space(v));
        let top = source.top_degree(w);
        let block = |d: usize| {
            let rows: Vec<usize> = st.coords_of_degree(d).collect();
            let cols: Vec<usize> = ss.coords_of_degree(d).collect();
            phi.select_rows(&rows).select_cols(&cols)
        };
        let dims_s = dr.dims(w);
        let dims_t: Vec<usize> = (0..=top).map(|d| st.coords_of_degree(d).len()).collect();
        let hs = dr.homology(w)?;
        let mut bij = dims_s == dims_t;
        let mut chain = true;
        for d in 0..=top {
            let pd = block(d);
            bij &= pd.rank() == pd.ncols && pd.nrows == pd.ncols;
            if d < top {
                chain &= dopp.differential(v, d).mul(&pd).sub(&block(d + 1).mul(&dr.differential(w, d))).is_zero();
            }
        }
        // the genus-zero part is a subcomplex of the same dimensions, so its homology is
        // that of the source when the identification is a chain isomorphism
        let ht = if bij && chain { hs.clone() } else { Vec::new() };
        report.row(vec![Flavor::Cyclic.fmt_sig(w), fmt_dims(&dims_s), fmt_dims(&dims_t), fmt_dims(&hs), fmt_dims(&ht)]);
        report.verdict("bijective", bij);
        report.verdict("chain map", chain);
    }
    Ok(report)
}

/// The projection formula `O ⊗ L^!(P) ≅ L^!(R(O) ⊗ P)` through
/// `beta(q ⊗ (w, D, x)) = sum_q' rho_O(reps_D^-1)[q', q] (w, D, (q', x))`.
pub fn projection_iso(m: MorphismId, o: &FOpTable, p: &FOpTable) -> Result<FunctorReport, OpError> {
    let window = o.window;
    let mut report = FunctorReport::new(
        &format!("{} ⊗ L^!({}) vs L^!(R({}) ⊗ {}) along {}", o.name, p.name, o.name, p.name, m.name()),
        &["sig", "dim lhs", "dim rhs", "bijective"],
    );
    let lhs = o.tensor(&shriek_pushforward_in(m, p, &window)?);
    let ro = restrict(m, o, &p.window)?;
    let rhs = shriek_pushforward_in(m, &ro.tensor(p), &window)?;
    let mut maps = BTreeMap::new();
    for v in window.sigs() {
        let dov = o.dim(v);
        let fl = Fiber::new(m, v, &p.window, |w| p.dim(w));
        let fr = Fiber::new(m, v, &p.window, |w| ro.dim(w) * p.dim(w));
        if dov == 0 || fl.dim == 0 {
            continue;
        }
        let rep = o.rep(v).expect("nonzero");
        let mut cols = vec![Vec::new(); dov * fl.dim];
        for (k, part) in fl.parts.iter().enumerate() {
            let kr = fr.part(part.w).expect("same preimages");
            for d in 0..part.decos.len() {
                let twist = rep.rho(&perm::inverse(&part.decos.reps[d]));
                for q in 0..dov {
                    for x in 0..part.width {
                        let mut col: SVec = twist.cols[q]
                            .iter()
                            .map(|(q2, c)| (fr.index(kr, d, q2 * part.width + x), c.clone()))
                            .collect();
                        col.sort_by_key(|e| e.0);
                        cols[q * fl.dim + fl.index(k, d, x)] = col;
                    }
                }
            }
        }
        maps.insert(v, SMat::from_cols(fr.dim, cols));
    }
    check_iso(&mut report, &lhs, &rhs, &maps);
    Ok(report)
}

/// `L^!_{m2} L^!_{m1}(P) ≅ L^!_{m2 ∘ m1}(P)`: a doubly decorated element is sent to the
/// decoration of the composite slot renaming.
pub fn compose_shriek(m1: MorphismId, m2: MorphismId, p: &FOpTable) -> Result<FunctorReport, OpError> {
    let m12 = m1.then(m2)?;
    let flags = p.window.max_flags;
    let mid = Window::new(m1.target(), flags);
    let target = Window::new(m2.target(), flags);
    let mut report = FunctorReport::new(
        &format!("L^!({}) L^!({}) vs L^!({}) on {}", m2.name(), m1.name(), m12.name(), p.name),
        &["sig", "dim twice", "dim once", "bijective"],
    );
    let l1 = shriek_pushforward_in(m1, p, &mid)?;
    let twice = shriek_pushforward_in(m2, &l1, &target)?;
    let once = shriek_pushforward_in(m12, p, &target)?;
    let mut maps = BTreeMap::new();
    for v in target.sigs() {
        let f2 = Fiber::new(m2, v, &mid, |w| l1.dim(w));
        let f12 = Fiber::new(m12, v, &p.window, |w| p.dim(w));
        if f2.dim == 0 {
            continue;
        }
        let mut cols = vec![Vec::new(); f2.dim];
        for (c, col) in cols.iter_mut().enumerate() {
            let (k2, d1, x1) = f2.decode(c);
            let w1 = f2.parts[k2].w;
            let f1 = Fiber::new(m1, w1, &p.window, |w| p.dim(w));
            let (k1, d0, x) = f1.decode(x1);
            let w0 = f1.parts[k1].w;
            let sigma = perm::compose(&f2.parts[k2].decos.reps[d1], &f1.parts[k1].decos.reps[d0]);
            let Some(k12) = f12.part(w0) else { continue };
            let (d, h) = f12.parts[k12].decos.locate(&sigma);
            let base = f12.index(k12, d, 0);
            *col = shifted(&p.rep(w0).expect("nonzero").rho(h).cols[x], base);
        }
        maps.insert(v, SMat::from_cols(f12.dim, cols));
    }
    check_iso(&mut report, &twice, &once, &maps);
    Ok(report)
}

/// Dimension tables of `R^!` of a target presentation and of `R` of the presented object.
pub fn coproper_check(m: MorphismId, q: &QuadraticDatum, source: &Window) -> Result<FunctorReport, OpError> {
    if !m.flags().coproper {
        return Err(OpError::Input(format!("{} is not recorded as co-proper", m.name())));
    }
    let mut report = FunctorReport::new(
        &format!("R^!({}) vs R({}) along {}", q.name, q.name, m.name()),
        &["sig", "dim R!", "dim R"],
    );
    let (shriek, _) = shriek_pullback(m, q, source).presented()?;
    let (o, _) = q.presented()?;
    let r = restrict(m, &o, source)?;
    for w in source.sigs() {
        let (a, b) = (shriek.dim(w), r.dim(w));
        report.row(vec![m.source().fmt_sig(w), a.to_string(), b.to_string()]);
        report.verdict("dimensions", a == b);
    }
    Ok(report)
}

/// `R^!` of the free object on `e`: compared with `F(rE)`, and for co-proper morphisms
/// also with `R(F(E))`.
pub fn free_preservation(
    m: MorphismId,
    e: &VModule,
    target: &Window,
    source: &Window,
    odd: bool,
) -> Result<FunctorReport, OpError> {
    let coproper = m.flags().coproper;
    let mut cols = vec!["sig", "dim R!F(E)", "dim F(rE)"];
    if coproper {
        cols.push("dim RF(E)");
    }
    let mut report = FunctorReport::new(&format!("free objects along {}", m.name()), &cols);
    let q = QuadraticDatum { name: "F(E)".into(), gens: e.clone(), rels: Relations::new(), odd, window: *target };
    let (shriek, _) = shriek_pullback(m, &q, source).presented()?;
    let fre = FreeOp::new(restrict_module(m, e, source), *source, odd);
    let rf = if coproper {
        let (fe, _) = free_table("F(E)", e.clone(), *target, odd)?;
        Some(restrict(m, &fe, source)?)
    } else {
        None
    };
    for w in source.sigs() {
        let (a, b) = (shriek.dim(w), fre.dim(w));
        let mut row = vec![m.source().fmt_sig(w), a.to_string(), b.to_string()];
        report.verdict("R!F(E) = F(rE)", a == b);
        if let Some(rf) = &rf {
            row.push(rf.dim(w).to_string());
            report.verdict("R!F(E) = RF(E)", a == rf.dim(w));
        }
        report.row(row);
    }
    Ok(report)
}

/// `dim L^!(End_A)((n)) = (2 dim A)^n`, and agreement of `L^!(End_A)` with the cyclic
/// endomorphisms of `A ⊕ A*`: an output slot of a decorated element carries `A`, an
/// input slot `A*`.
pub fn binomial_check(spec: EndSpec, flags: usize) -> Result<FunctorReport, OpError> {
    let m = MorphismId::DioperadToCyclic;
    let d = spec.dim_a;
    let mut report = FunctorReport::new(
        &format!("L^!(End) for dim A = {d}"),
        &["sig", "dim L^!(End)", "dim End(A+A*)", "bijective"],
    );
    let e = end_dioperad(spec, Window::new(Flavor::Dioperad, flags))?;
    let l = shriek_pushforward(m, &e)?;
    let c = doubled_end_cyclic(spec, Window::new(Flavor::Cyclic, flags))?;
    let mut maps = BTreeMap::new();
    for v in l.window.sigs() {
        report.verdict("binomial dims", l.dim(v) == (2 * d).pow(v.n as u32));
        let f = Fiber::new(m, v, &e.window, |w| e.dim(w));
        let cols = (0..f.dim)
            .map(|idx| {
                let (k, dd, x) = f.decode(idx);
                let part = &f.parts[k];
                let reps = &part.decos.reps[dd];
                let xs = digits(x, d, v.n);
                let mut out = vec![0; v.n];
                for (slot, &digit) in xs.iter().enumerate() {
                    out[reps[slot]] = digit + if slot >= part.w.outs { d } else { 0 };
                }
                vec![(undigits(&out, 2 * d), rat_one())]
            })
            .collect();
        maps.insert(v, SMat::from_cols(c.dim(v), cols));
    }
    check_iso(&mut report, &l, &c, &maps);
    Ok(report)
}

/// Value in `o` of a graph whose vertex `u` carries the vector `factors[u]`.
fn evaluate_in(o: &FOpTable, graph: &Graph, edges: &[(usize, usize)], factors: &[SVec]) -> SVec {
    let flags: Vec<usize> = edges.iter().map(|e| e.0).collect();
    let mut acc = SvAcc::new();
    let mut terms: Vec<(Vec<usize>, Rat)> = vec![(Vec::new(), rat_one())];
    for f in factors {
        terms = terms
            .iter()
            .flat_map(|(multi, c)| {
                f.iter().map(move |(i, x)| {
                    let mut m2 = multi.clone();
                    m2.push(*i);
                    (m2, c * x)
                })
            })
            .collect();
    }
    for (labels, c) in terms {
        let (val, _) = o.contract_sequence(graph, &labels, &flags);
        acc.add_vec(&val, &c);
    }
    acc.finish()
}

/// Triangle identities. For `(L, R)`: `R(eps_O) ∘ eta_{RO} = id` is evaluated on every
/// basis vector, `eps_{LP} ∘ L(eta_P) = id` on the generating corollas of `L(P)`. For
/// `(R^!, L^!)` the identities are checked vertexwise on free objects.
pub fn lr_triangles(m: MorphismId, p: &FOpTable, o: &FOpTable) -> Result<FunctorReport, OpError> {
    if p.odd || o.odd {
        return Err(OpError::Input("triangle identities are evaluated on even objects".into()));
    }
    let window = o.window;
    let mut report = FunctorReport::new(
        &format!("triangle identities along {} on {} and {}", m.name(), p.name, o.name),
        &["sig", "checked"],
    );
    let ro = restrict(m, o, &p.window)?;

    // R(eps_O) ∘ eta_{RO}
    let lro = pushforward_l(m, &ro, &window)?;
    report.warnings.extend(lro.warnings.iter().cloned());
    let q = &lro.quotient;
    for w in p.window.sigs() {
        let v = m.sig_map(w);
        if ro.dim(w) == 0 || !window.contains(v) {
            continue;
        }
        let f = Fiber::new(m, v, &p.window, |x| ro.dim(x));
        let k = f.part(w).expect("w lies over v");
        let mut ok = true;
        for y in 0..ro.dim(w) {
            let unit = q.to_quotient(v, &corolla_coords(&q.free, v, &sv_unit(f.index(k, 0, y))));
            let mut acc = SvAcc::new();
            for (c, x) in &unit {
                acc.add_vec(&counit(m, o, &ro, &p.window, q, v, *c), x);
            }
            ok &= acc.finish() == sv_unit(y);
        }
        report.row(vec![m.source().fmt_sig(w), "R(eps) eta".into()]);
        report.verdict("R(eps) eta = id", ok);
    }

    // eps_{LP} ∘ L(eta_P) on generators
    let lp = pushforward_l(m, p, &window)?;
    report.warnings.extend(lp.warnings.iter().cloned());
    let q = &lp.quotient;
    for v in window.sigs() {
        let f = Fiber::new(m, v, &p.window, |x| p.dim(x));
        let Some(rep) = lp.table.rep(v) else { continue };
        let mut ok = true;
        for idx in 0..f.dim {
            let (k, d, x) = f.decode(idx);
            let eta = q.to_quotient(v, &corolla_coords(&q.free, v, &sv_unit(f.index(k, 0, x))));
            let lhs = rep.rho(&f.parts[k].decos.reps[d]).apply(&eta);
            let rhs = q.to_quotient(v, &corolla_coords(&q.free, v, &sv_unit(idx)));
            ok &= lhs == rhs;
        }
        report.row(vec![m.target().fmt_sig(v), "eps L(eta)".into()]);
        report.verdict("eps L(eta) = id", ok);
    }

    for w in p.window.sigs() {
        let v = m.sig_map(w);
        let (Some(a), Some(e)) = (p.rep(w), o.rep(v)) else { continue };
        let pair = VertexPair::of(m, w);
        let (first, second) = vertex_triangles(&pair, e, a)?;
        report.verdict("shriek triangles on free objects", first && second);
    }
    report.warnings.sort();
    report.warnings.dedup();
    Ok(report)
}

/// `eps_O` on basis vector `k` of `L(R(O))(v)`: each decorated label `(w, D, x)` becomes
/// `rho_O(reps_D) x`, then the graph is evaluated in `O`.
fn counit(
    m: MorphismId,
    o: &FOpTable,
    ro: &FOpTable,
    source: &Window,
    q: &crate::opcore::Quotient,
    v: Sig,
    k: usize,
) -> SVec {
    let sp = q.free.space(v);
    let lifted = q.lift(v, k);
    let mut acc = SvAcc::new();
    for (b, local) in sp.by_block(&lifted) {
        let c = &sp.blocks[b];
        let tensor = sp.lift_local(b, &local);
        let fibers: Vec<Fiber> = c.vsigs.iter().map(|&s| Fiber::new(m, s, source, |x| ro.dim(x))).collect();
        for (idx, coef) in &tensor {
            let factors: Vec<SVec> = c
                .shape
                .split(*idx)
                .iter()
                .zip(&fibers)
                .zip(&c.vsigs)
                .map(|((&lab, f), &s)| {
                    let (kk, d, x) = f.decode(lab);
                    o.rep(s).expect("label space").rho(&f.parts[kk].decos.reps[d]).cols[x].clone()
                })
                .collect();
            acc.add_vec(&evaluate_in(o, &c.class.graph, &c.class.edges, &factors), coef);
        }
    }
    acc.finish()
}

/// `d^2 = 0` for the Feynman transform of `p`, with the dimension and homology table.
pub fn dsquared_report(p: &FOpTable) -> Result<FunctorReport, OpError> {
    let dp = feynman_transform(p)?;
    let mut report = FunctorReport::new(&format!("d^2 for D({})", p.name), &["sig", "dims", "homology", "euler"]);
    for s in p.window.sigs() {
        let ok = dp.complex(s).check_d_squared().is_ok();
        report.verdict("d^2 = 0", ok);
        let homology = dp.homology(s)?;
        report.row(vec![p.flavor.fmt_sig(s), fmt_dims(&dp.dims(s)), fmt_dims(&homology), dp.euler(s).to_string()]);
    }
    Ok(report)
}

/// The comparison map `D(P) -> P^!` as a report: chain-map verdict, and per signature the
/// homology of `D(P)` against the dual's weight grading. Whether `P` is Koszul in the
/// window is reported as a row, not a verdict.
pub fn koszul_report(q: &QuadraticDatum) -> Result<FunctorReport, OpError> {
    let k = crate::opcore::koszul_map(q)?.report();
    let mut report =
        FunctorReport::new(&format!("D({0}) -> {0}^!", q.name), &["sig", "complex", "homology", "dual by weight", "induced ranks", "iso"]);
    for r in &k.rows {
        report.row(vec![
            r.sig.clone(),
            fmt_dims(&r.complex_dims),
            fmt_dims(&r.homology),
            fmt_dims(&r.dual_dims),
            fmt_dims(&r.induced_ranks),
            r.iso.to_string(),
        ]);
    }
    report.verdict("chain map", k.chain_map);
    if !k.koszul {
        report.warnings.push(format!("{} is not Koszul in this window", q.name));
    }
    Ok(report)
}
