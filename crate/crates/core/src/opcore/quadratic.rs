use super::classspace::transport;
use super::free::FreeOp;
use super::quasifree::{feynman_transform, QuasiFree};
use super::quotient::{quotient, weight_one_range, Quotient, Relations};
use super::rep::VModule;
use super::table::FOpTable;
use super::OpError;
use crate::exactlin::{kernel, rat, rat_one, Echelon, SMat, SVec, SvAcc};
use crate::graphkit::{Sig, Window};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

/// Generators, weight-1 relations and parity.
#[derive(Clone, Debug)]
pub struct QuadraticDatum {
    pub name: String,
    pub gens: VModule,
    /// global coordinates of the free op (weight-1 block)
    pub rels: Relations,
    pub odd: bool,
    pub window: Window,
}

impl QuadraticDatum {
    pub fn presented(&self) -> Result<(FOpTable, Quotient), OpError> {
        quotient(&self.name, self.gens.clone(), &self.rels, self.window, self.odd)
    }

    /// The free op up to weight 1, enough to hold generators and relations.
    pub fn weight_one(&self) -> FreeOp {
        FreeOp::new(self.gens.clone(), self.window.with_max_degree(1), self.odd)
    }

    pub fn relation_rank(&self, s: Sig) -> usize {
        let rels = self.rels.get(&s).map(|v| v.as_slice()).unwrap_or(&[]);
        let dim = rels.iter().flat_map(|v| v.iter().map(|(i, _)| i + 1)).max().unwrap_or(0);
        let mut e = Echelon::new(dim);
        for r in rels {
            e.insert(r);
        }
        e.rank()
    }
}

/// Pairing between weight-1 coordinates of the free ops on `E` and on `E*`:
/// `<[x], [y]> = <x, avg(y)>` on lifted tensors. Rows index `E`, columns `E*`.
pub fn weight_one_pairing(fe: &FreeOp, fd: &FreeOp, s: Sig) -> SMat {
    let (se, sd) = (fe.space(s), fd.space(s));
    let re = weight_one_range(fe, s);
    let rd = weight_one_range(fd, s);
    let mut cols: Vec<SVec> = vec![Vec::new(); rd.len()];
    for (bd, cd) in sd.blocks.iter().enumerate() {
        if cd.degree() != 1 {
            continue;
        }
        let be = se.block_of(&cd.class.key).expect("same classes on both sides");
        let ce = &se.blocks[be];
        let isos: Vec<_> = (0..cd.class.auts.len()).map(|k| cd.class.aut_iso(k)).collect();
        let inv = rat_one() / rat(isos.len() as i64);
        for l in 0..cd.dim() {
            let y = cd.lift(l);
            let mut avg = SvAcc::new();
            for iso in &isos {
                avg.add_vec(&transport(y, &cd.shape, &cd.vsigs, iso, &cd.shape, &fd.gens, fd.odd), &inv);
            }
            let avg = avg.finish();
            let mut col = SvAcc::new();
            for k in 0..ce.dim() {
                let x = ce.lift(k);
                let v = crate::exactlin::sv_dot(x, &avg);
                if !v.is_zero() {
                    col.add(se.offsets[be] + k - re.start, v);
                }
            }
            cols[sd.offsets[bd] + l - rd.start] = col.finish();
        }
    }
    SMat::from_cols(re.len(), cols)
}

/// `(E, S, parity) -> (E*, S^perp, flipped parity)`.
pub fn quadratic_dual(q: &QuadraticDatum) -> QuadraticDatum {
    let dual_gens = q.gens.dual();
    let fe = q.weight_one();
    let fd = FreeOp::new(dual_gens.clone(), q.window.with_max_degree(1), !q.odd);
    let rels: Relations = q
        .window
        .sigs()
        .par_iter()
        .filter_map(|&s| {
            let re = weight_one_range(&fe, s);
            let rd = weight_one_range(&fd, s);
            if rd.is_empty() {
                return None;
            }
            let pairing = weight_one_pairing(&fe, &fd, s);
            // rows: one per relation, as functionals on the dual weight-1 space
            let rel = q.rels.get(&s).cloned().unwrap_or_default();
            let rows: Vec<SVec> = rel
                .iter()
                .map(|r| {
                    let local: SVec = r.iter().map(|(i, c)| (i - re.start, c.clone())).collect();
                    pairing.transpose().apply(&local)
                })
                .collect();
            let m = SMat::from_cols(rows.len(), transpose_rows(&rows, rd.len()));
            let ker = kernel(&m);
            let vecs: Vec<SVec> =
                ker.into_iter().map(|v| v.into_iter().map(|(i, c)| (i + rd.start, c)).collect()).collect();
            (!vecs.is_empty()).then_some((s, vecs))
        })
        .collect();
    QuadraticDatum { name: format!("{}!", q.name), gens: dual_gens, rels, odd: !q.odd, window: q.window }
}

fn transpose_rows(rows: &[SVec], ncols: usize) -> Vec<SVec> {
    let mut cols: Vec<SVec> = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row {
            cols[*c].push((r, x.clone()));
        }
    }
    cols
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulRow {
    pub sig: String,
    pub complex_dims: Vec<usize>,
    pub homology: Vec<usize>,
    /// dimensions of the dual by weight
    pub dual_dims: Vec<usize>,
    /// rank of the induced map on homology, per degree
    pub induced_ranks: Vec<usize>,
    pub iso: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulReport {
    pub name: String,
    pub chain_map: bool,
    pub rows: Vec<KoszulRow>,
    pub koszul: bool,
}

/// The comparison map `D(P) -> P^!` together with everything needed to evaluate it.
pub struct KoszulMap {
    pub datum: QuadraticDatum,
    pub p: FOpTable,
    pub dp: QuasiFree,
    pub dual: QuadraticDatum,
    pub shriek: FOpTable,
    pub shriek_q: Quotient,
}

pub fn koszul_map(q: &QuadraticDatum) -> Result<KoszulMap, OpError> {
    let (p, _) = q.presented()?;
    let dp = feynman_transform(&p)?;
    let dual = quadratic_dual(q);
    let (shriek, shriek_q) = dual.presented()?;
    Ok(KoszulMap { datum: q.clone(), p, dp, dual, shriek, shriek_q })
}

impl KoszulMap {
    /// Matrix of the map from degree-`d` coordinates of `D(P)(s)` to `P^!(s)`.
    pub fn matrix(&self, s: Sig, d: usize) -> SMat {
        let sp = self.dp.free.space(s);
        let target = self.shriek_q.free.space(s);
        let range = sp.coords_of_degree(d);
        let nq = self.shriek.dim(s);
        let egens = &self.shriek_q.free.gens;
        let cols = range
            .map(|i| {
                let (b, local) = sp.by_block(&vec![(i, rat_one())]).pop().unwrap();
                let c = &sp.blocks[b];
                let Some(tb) = target.block_of(&c.class.key) else { return Vec::new() };
                let tshape = &target.blocks[tb].shape;
                // keep only generator-weight labels; they index the same basis as E*
                let mut acc = SvAcc::new();
                'terms: for (idx, x) in sp.lift_local(b, &local) {
                    let multi = c.shape.split(idx);
                    for (v, &m) in multi.iter().enumerate() {
                        if self.p.weight(c.vsigs[v], m) != 0 || m >= egens.dim(c.vsigs[v]) {
                            continue 'terms;
                        }
                    }
                    acc.add(tshape.join(&multi), x);
                }
                let tensor = acc.finish();
                let global = target.project_into(tb, &tensor);
                self.shriek_q.to_quotient(s, &global)
            })
            .collect();
        SMat::from_cols(nq, cols)
    }

    pub fn report(&self) -> KoszulReport {
        let rows: Vec<(KoszulRow, bool)> = self
            .datum
            .window
            .sigs()
            .par_iter()
            .map(|&s| {
                let top = self.dp.window().top_degree(s);
                let dims = self.dp.dims(s);
                let homology = self.dp.homology(s).unwrap_or_default();
                let wts = &self.shriek.weights[&s];
                let dual_dims: Vec<usize> = (0..=top).map(|d| wts.iter().filter(|&&w| w == d).count()).collect();
                let mut chain = true;
                let mut induced = Vec::new();
                for d in 0..=top {
                    let f = self.matrix(s, d);
                    if d > 0 {
                        let dd = self.dp.differential(s, d - 1);
                        if !f.mul(&dd).is_zero() {
                            chain = false;
                        }
                    }
                    // rank on cycles: restrict to the kernel of the outgoing differential
                    let cycles = if d < top { kernel(&self.dp.differential(s, d)) } else { identity_vectors(dims[d]) };
                    let img: Vec<SVec> = cycles.iter().map(|z| f.apply(z)).collect();
                    let mut e = Echelon::new(f.nrows);
                    for v in &img {
                        e.insert(v);
                    }
                    induced.push(e.rank());
                }
                let iso = (0..=top).all(|d| homology.get(d).copied().unwrap_or(0) == dual_dims[d] && induced[d] == dual_dims[d]);
                let row = KoszulRow {
                    sig: self.datum.window.flavor.fmt_sig(s),
                    complex_dims: dims,
                    homology,
                    dual_dims,
                    induced_ranks: induced,
                    iso,
                };
                (row, chain)
            })
            .collect();
        let chain_map = rows.iter().all(|(_, c)| *c);
        let koszul = chain_map && rows.iter().all(|(r, _)| r.iso);
        KoszulReport { name: self.datum.name.clone(), chain_map, rows: rows.into_iter().map(|(r, _)| r).collect(), koszul }
    }
}

fn identity_vectors(n: usize) -> Vec<SVec> {
    (0..n).map(|i| vec![(i, rat_one())]).collect()
}
