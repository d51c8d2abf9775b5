use super::free::FreeOp;
use super::rep::{Rep, VModule};
use super::table::{window_keys, ComposeKey, FOpTable};
use super::OpError;
use crate::exactlin::{sv_unit, Echelon, SMat, SVec};
use crate::graphkit::{Sig, Window};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Relations given as vectors in the weight-1 coordinates of the free op, per signature.
pub type Relations = BTreeMap<Sig, Vec<SVec>>;

/// Levelwise quotient data of a free op by an ideal.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub free: FreeOp,
    pub ideal: BTreeMap<Sig, Echelon>,
    /// free coordinates kept as the quotient basis, per signature
    pub basis: BTreeMap<Sig, Vec<usize>>,
}

impl Quotient {
    /// Position of a reduced free vector in the quotient basis.
    pub fn to_quotient(&self, s: Sig, v: &SVec) -> SVec {
        let red = self.ideal[&s].reduce(v);
        let basis = &self.basis[&s];
        red.into_iter().map(|(i, c)| (basis.binary_search(&i).expect("reduced vectors live on free indices"), c)).collect()
    }

    pub fn lift(&self, s: Sig, k: usize) -> SVec {
        sv_unit(self.basis[&s][k])
    }
}

/// Weight-1 coordinates of the free op at `s` (offset into the full coordinate vector).
pub fn weight_one_range(free: &FreeOp, s: Sig) -> std::ops::Range<usize> {
    free.spaces.get(&s).map_or(0..0, |f| f.coords_of_degree(1))
}

fn check_submodule(free: &FreeOp, rels: &Relations) -> Result<(), OpError> {
    for (s, vs) in rels {
        if !free.window.contains(*s) {
            return Err(OpError::NotSubmodule(format!("relation outside the window at {}", free.flavor.fmt_sig(*s))));
        }
        let range = weight_one_range(free, *s);
        let mut span = Echelon::new(free.dim(*s));
        for v in vs {
            if v.iter().any(|(i, _)| !range.contains(i)) {
                return Err(OpError::NotSubmodule(format!("relation at {} is not of weight 1", free.flavor.fmt_sig(*s))));
            }
            span.insert(v);
        }
        for p in free.flavor.aut_gens(*s) {
            for v in vs {
                if !span.contains(&free.act(*s, &p, v)) {
                    return Err(OpError::NotSubmodule(format!(
                        "relations at {} are not closed under the symmetry action",
                        free.flavor.fmt_sig(*s)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Saturates the relations to the ideal they generate within the window.
/// `order` optionally permutes the keys applied at each signature (the result must not
/// depend on it).
pub fn saturate(free: &FreeOp, rels: &Relations, shuffle: Option<u64>) -> BTreeMap<Sig, Echelon> {
    let w = free.window;
    let mut keys_by_result: BTreeMap<Sig, Vec<ComposeKey>> = BTreeMap::new();
    for k in window_keys(&w) {
        keys_by_result.entry(k.result(w.flavor)).or_default().push(k);
    }
    let mut ideal: BTreeMap<Sig, Echelon> = BTreeMap::new();
    for s in w.sigs() {
        let dim = free.dim(s);
        let mut ech = Echelon::new(dim);
        let mut cands: Vec<SVec> = rels.get(&s).cloned().unwrap_or_default();
        let mut keys = keys_by_result.get(&s).cloned().unwrap_or_default();
        if let Some(seed) = shuffle {
            shuffle_keys(&mut keys, seed);
        }
        let produced: Vec<Vec<SVec>> = keys
            .par_iter()
            .map(|key| {
                let mut out = Vec::new();
                match *key {
                    ComposeKey::Graft { a, i, b, j } => {
                        let (ia, ib) = (&ideal[&a], &ideal[&b]);
                        for x in ia.basis() {
                            for e in free.generator_coords(b) {
                                out.extend(free.graft(a, &x, i, b, &sv_unit(e), j));
                            }
                        }
                        for y in ib.basis() {
                            for e in free.generator_coords(a) {
                                out.extend(free.graft(a, &sv_unit(e), i, b, &y, j));
                            }
                        }
                    }
                    ComposeKey::Loop { a, i, j } => {
                        for x in ideal[&a].basis() {
                            out.extend(free.self_graft(a, &x, i, j));
                        }
                    }
                }
                out
            })
            .collect();
        cands.extend(produced.into_iter().flatten());
        for v in &cands {
            ech.insert(v);
        }
        // close under the symmetry group
        let gens = free.flavor.aut_gens(s);
        let mut frontier = ech.basis();
        while !frontier.is_empty() && !gens.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                for p in &gens {
                    let moved = free.act(s, p, v);
                    if ech.insert(&moved) {
                        next.push(moved);
                    }
                }
            }
            frontier = next;
        }
        ideal.insert(s, ech);
    }
    ideal
}

fn shuffle_keys(keys: &mut [ComposeKey], seed: u64) {
    // xorshift Fisher-Yates; only used to vary saturation order in tests
    let mut x = seed | 1;
    for k in (1..keys.len()).rev() {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        keys.swap(k, (x % (k as u64 + 1)) as usize);
    }
}

/// Quotient of the free op on `gens` by the ideal generated by weight-1 relations.
pub fn quotient(name: &str, gens: VModule, rels: &Relations, window: Window, odd: bool) -> Result<(FOpTable, Quotient), OpError> {
    for s in gens.reps.keys() {
        if !window.flavor.valid_sig(*s) {
            return Err(OpError::Unstable(window.flavor.fmt_sig(*s)));
        }
    }
    let free = FreeOp::new(gens, window, odd);
    check_submodule(&free, rels)?;
    let ideal = saturate(&free, rels, None);
    table_from_ideal(name, free, ideal)
}

/// The quotient table of a free op by an already saturated ideal.
pub fn table_from_ideal(name: &str, free: FreeOp, ideal: BTreeMap<Sig, Echelon>) -> Result<(FOpTable, Quotient), OpError> {
    let (window, odd) = (free.window, free.odd);
    let basis: BTreeMap<Sig, Vec<usize>> = ideal.iter().map(|(s, e)| (*s, e.free_indices())).collect();
    let q = Quotient { free, ideal, basis };
    let fl = window.flavor;
    let mut spaces = BTreeMap::new();
    let mut weights = BTreeMap::new();
    for s in window.sigs() {
        let b = &q.basis[&s];
        let dim = b.len();
        let gens: Vec<_> = fl
            .aut_gens(s)
            .into_iter()
            .map(|p| {
                let cols = (0..dim).map(|k| q.to_quotient(s, &q.free.act(s, &p, &q.lift(s, k)))).collect();
                (p, SMat::from_cols(dim, cols))
            })
            .collect();
        let rep = Rep::from_generators(fl, s, dim, &gens).map_err(|e| OpError::Structure(e.to_string()))?;
        spaces.insert(s, rep);
        weights.insert(s, b.iter().map(|&i| q.free.space(s).weights[i]).collect());
    }
    let table = FOpTable::from_fn(name, window, odd, spaces, weights, |key| {
        let r = key.result(fl);
        let nr = q.basis[&r].len();
        let cols = match *key {
            ComposeKey::Graft { a, i, b, j } => {
                let nb = q.basis[&b].len();
                (0..q.basis[&a].len() * nb)
                    .map(|c| {
                        let v = q.free.graft(a, &q.lift(a, c / nb), i, b, &q.lift(b, c % nb), j).unwrap_or_default();
                        q.to_quotient(r, &v)
                    })
                    .collect()
            }
            ComposeKey::Loop { a, i, j } => (0..q.basis[&a].len())
                .map(|c| q.to_quotient(r, &q.free.self_graft(a, &q.lift(a, c), i, j).unwrap_or_default()))
                .collect(),
        };
        SMat::from_cols(nr, cols)
    });
    Ok((table, q))
}

/// The free op as a table (the quotient by the zero ideal).
pub fn free_table(name: &str, gens: VModule, window: Window, odd: bool) -> Result<(FOpTable, Quotient), OpError> {
    quotient(name, gens, &Relations::new(), window, odd)
}
