//! Canonical labelling by individualization and refinement over BFS labellings.

use super::flavor::Flavor;
use super::graph::{Graph, NO_LEG};
use super::perm::{self, Perm};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// Result of canonicalizing a concrete graph.
#[derive(Clone, Debug)]
pub struct Canon {
    pub graph: Graph,
    pub key: Vec<u32>,
    /// old flag -> canonical flag
    pub fmap: Vec<usize>,
    /// old vertex -> canonical vertex
    pub vmap: Vec<usize>,
    /// Automorphisms of the canonical graph as flag permutations.
    pub auts: Vec<Perm>,
}

/// An isomorphism class: canonical representative plus its automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClass {
    pub graph: Graph,
    pub key: Vec<u32>,
    pub auts: Vec<Perm>,
    pub edges: Vec<(usize, usize)>,
    /// Some automorphism reverses the edge orientation; such a class carries no odd
    /// coinvariants when the vertex labels are trivial.
    pub odd_aut: bool,
}

impl GraphClass {
    pub fn from_canon(c: &Canon) -> GraphClass {
        let edges = c.graph.edges();
        let odd_aut = c.auts.iter().any(|a| edge_perm_sign(&edges, a, &edges) < 0);
        GraphClass { graph: c.graph.clone(), key: c.key.clone(), auts: c.auts.clone(), edges, odd_aut }
    }

    pub fn degree(&self) -> usize {
        self.edges.len()
    }
}

/// Sign of the permutation carrying the edge list `from` (through the flag map `fmap`)
/// onto the edge list `to`.
pub fn edge_perm_sign(from: &[(usize, usize)], fmap: &[usize], to: &[(usize, usize)]) -> i8 {
    let index: HashMap<(usize, usize), usize> = to.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let p: Vec<usize> = from
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (fmap[a], fmap[b]);
            index[&(x.min(y), x.max(y))]
        })
        .collect();
    perm::sign(&p)
}

/// Sign of an automorphism on the orientation line.
pub fn orientation_sign(cls: &GraphClass, aut: &[usize]) -> i8 {
    edge_perm_sign(&cls.edges, aut, &cls.edges)
}

fn ranks<T: Ord + Clone>(tuples: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = tuples.to_vec();
    sorted.sort();
    sorted.dedup();
    let idx: BTreeMap<T, u32> = sorted.into_iter().enumerate().map(|(k, t)| (t, k as u32)).collect();
    tuples.iter().map(|t| idx[t]).collect()
}

fn refine_colors(g: &Graph, vo: &[usize], pos: &[usize]) -> Vec<u32> {
    let nf = g.nflags();
    let init: Vec<[u64; 6]> = (0..nf)
        .map(|f| {
            let v = vo[f];
            let lp = (g.inv[f] != f && vo[g.inv[f]] == v) as u64;
            let leg = if g.leg[f] == NO_LEG { u64::MAX } else { g.leg[f] as u64 };
            let p = if g.flavor == Flavor::PlanarOperad { pos[f] as u64 } else { 0 };
            [g.out[f] as u64, leg, g.genus[v] as u64, g.vflags[v].len() as u64, lp, p]
        })
        .collect();
    let mut col = ranks(&init);
    let mut ncol = col.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let tuples: Vec<(u32, u32, Vec<u32>, u32)> = (0..nf)
            .map(|f| {
                let v = vo[f];
                let mut around: Vec<u32> = g.vflags[v].iter().map(|&x| col[x]).collect();
                around.sort_unstable();
                let nxt = if g.flavor == Flavor::PlanarCyclic {
                    let l = &g.vflags[v];
                    col[l[(pos[f] + 1) % l.len()]]
                } else {
                    0
                };
                (col[f], col[g.inv[f]], around, nxt)
            })
            .collect();
        let c2 = ranks(&tuples);
        let n2 = c2.iter().copied().max().map_or(0, |m| m + 1);
        col = c2;
        if n2 == ncol {
            break;
        }
        ncol = n2;
    }
    col
}

#[derive(Clone)]
struct State {
    label: Vec<usize>,
    next: usize,
    queue: Vec<(usize, usize)>,
    queued: Vec<bool>,
    listings: Vec<Vec<usize>>,
}

struct Search<'a> {
    g: &'a Graph,
    vo: Vec<usize>,
    col: Vec<u32>,
    leaves: Vec<State>,
}

impl<'a> Search<'a> {
    fn candidate_listings(&self, st: &State, v: usize, entry: usize) -> Vec<Vec<usize>> {
        let g = self.g;
        let l = &g.vflags[v];
        match g.flavor {
            Flavor::PlanarOperad => return vec![l.clone()],
            Flavor::PlanarCyclic => {
                let p = l.iter().position(|&x| x == entry).unwrap();
                return vec![l[p..].iter().chain(&l[..p]).copied().collect()];
            }
            _ => {}
        }
        let key = |f: usize| {
            let dir = if g.flavor.directed() { (!g.out[f]) as u8 } else { 0 };
            let partner = g.inv[f];
            let plabel = if partner != f && st.label[partner] != usize::MAX { st.label[partner] } else { usize::MAX };
            (dir, (f != entry) as u8, self.col[f], plabel)
        };
        let mut flags = l.clone();
        flags.sort_by_key(|&f| key(f));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for f in flags {
            match groups.last_mut() {
                Some(gr) if key(gr[0]) == key(f) => gr.push(f),
                _ => groups.push(vec![f]),
            }
        }
        let mut out: Vec<Vec<usize>> = vec![vec![]];
        for gr in groups {
            let perms = perm::permutations_of(&gr);
            let mut next = Vec::with_capacity(out.len() * perms.len());
            for prefix in &out {
                for p in &perms {
                    let mut x = prefix.clone();
                    x.extend(p);
                    next.push(x);
                }
            }
            out = next;
        }
        out
    }

    fn run(&mut self, st: State, qi: usize) {
        if qi == st.queue.len() {
            self.leaves.push(st);
            return;
        }
        let (v, entry) = st.queue[qi];
        for listing in self.candidate_listings(&st, v, entry) {
            let mut s = st.clone();
            for &f in &listing {
                s.label[f] = s.next;
                s.next += 1;
            }
            for &f in &listing {
                let h = self.g.inv[f];
                let w = self.vo[h];
                if h != f && !s.queued[w] {
                    s.queued[w] = true;
                    s.queue.push((w, h));
                }
            }
            s.listings.push(listing);
            self.run(s, qi + 1);
        }
    }
}

fn encode(g: &Graph, st: &State) -> Vec<u32> {
    let nf = g.nflags();
    let mut enc = vec![nf as u32, g.nverts() as u32];
    for (k, &(v, _)) in st.queue.iter().enumerate() {
        enc.push(g.genus[v]);
        enc.push(st.listings[k].len() as u32);
    }
    let mut old_of = vec![0; nf];
    for f in 0..nf {
        old_of[st.label[f]] = f;
    }
    for &f in old_of.iter() {
        enc.push(st.label[g.inv[f]] as u32);
        enc.push(if g.leg[f] == NO_LEG { u32::MAX } else { g.leg[f] as u32 });
        enc.push(g.out[f] as u32);
    }
    enc
}

pub fn canonicalize(g: &Graph) -> Canon {
    let nf = g.nflags();
    let vo = g.vertex_of();
    if nf == 0 {
        return Canon {
            graph: g.clone(),
            key: vec![0, g.nverts() as u32, g.genus[0], 0],
            fmap: vec![],
            vmap: vec![0],
            auts: vec![vec![]],
        };
    }
    let mut pos = vec![0; nf];
    for fl in &g.vflags {
        for (k, &f) in fl.iter().enumerate() {
            pos[f] = k;
        }
    }
    let col = refine_colors(g, &vo, &pos);
    let starts: Vec<usize> = match g.leg_flag(0) {
        Some(f) => vec![f],
        None => {
            let m = *col.iter().min().unwrap();
            (0..nf).filter(|&f| col[f] == m).collect()
        }
    };
    let mut search = Search { g, vo: vo.clone(), col, leaves: Vec::new() };
    for s in starts {
        let mut queued = vec![false; g.nverts()];
        queued[vo[s]] = true;
        let st = State { label: vec![usize::MAX; nf], next: 0, queue: vec![(vo[s], s)], queued, listings: vec![] };
        search.run(st, 0);
    }
    let encs: Vec<Vec<u32>> = search.leaves.iter().map(|st| encode(g, st)).collect();
    let best = encs.iter().min().unwrap().clone();
    let mins: Vec<usize> = (0..encs.len()).filter(|&k| encs[k] == best).collect();
    let l0 = &search.leaves[mins[0]];

    let fmap = l0.label.clone();
    let mut vmap = vec![0; g.nverts()];
    for (k, &(v, _)) in l0.queue.iter().enumerate() {
        vmap[v] = k;
    }
    let mut inv = vec![0; nf];
    let mut leg = vec![NO_LEG; nf];
    let mut out = vec![false; nf];
    for f in 0..nf {
        inv[fmap[f]] = fmap[g.inv[f]];
        leg[fmap[f]] = g.leg[f];
        out[fmap[f]] = g.out[f];
    }
    let vflags: Vec<Vec<usize>> = l0.listings.iter().map(|l| l.iter().map(|&f| fmap[f]).collect()).collect();
    let genus: Vec<u32> = l0.queue.iter().map(|&(v, _)| g.genus[v]).collect();
    let graph = Graph { flavor: g.flavor, vflags, inv, leg, genus, out };
    let inv0 = perm::inverse(&fmap);
    let auts: Vec<Perm> = mins.iter().map(|&k| perm::compose(&search.leaves[k].label, &inv0)).collect();
    Canon { graph, key: best, fmap, vmap, auts }
}

fn memo() -> &'static Mutex<HashMap<Graph, Arc<Canon>>> {
    static M: OnceLock<Mutex<HashMap<Graph, Arc<Canon>>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// Memoized `canonicalize`; concurrent inserts of the same key are benign.
pub fn canonicalize_cached(g: &Graph) -> Arc<Canon> {
    if let Some(c) = memo().lock().unwrap().get(g) {
        return c.clone();
    }
    let c = Arc::new(canonicalize(g));
    memo().lock().unwrap().insert(g.clone(), c.clone());
    c
}

pub fn canonical_form(g: &Graph) -> Result<GraphClass, super::graph::GraphError> {
    g.validate()?;
    Ok(GraphClass::from_canon(&canonicalize(g)))
}

/// Isomorphism data from a concrete graph onto its canonical representative.
#[derive(Clone, Debug)]
pub struct Iso {
    /// old vertex -> canonical vertex
    pub vmap: Vec<usize>,
    /// per old vertex: slot k of the old listing goes to slot `slot_perms[v][k]` of the image vertex
    pub slot_perms: Vec<Perm>,
    pub sign: i8,
}

/// Builds the vertex/slot transport of a flag map `fmap: src -> dst` between two graphs
/// whose structures agree, with orientation sign relative to the given edge orders.
pub fn flag_map_iso(
    src: &Graph,
    dst: &Graph,
    fmap: &[usize],
    src_edges: &[(usize, usize)],
    dst_edges: &[(usize, usize)],
) -> Iso {
    let dvo = dst.vertex_of();
    let mut dpos = vec![0; dst.nflags()];
    for fl in &dst.vflags {
        for (k, &f) in fl.iter().enumerate() {
            dpos[f] = k;
        }
    }
    let mut vmap = Vec::with_capacity(src.nverts());
    let mut slot_perms = Vec::with_capacity(src.nverts());
    for fl in &src.vflags {
        if fl.is_empty() {
            // flagless vertex: only a lone corolla has one
            vmap.push(0);
            slot_perms.push(vec![]);
            continue;
        }
        vmap.push(dvo[fmap[fl[0]]]);
        slot_perms.push(fl.iter().map(|&f| dpos[fmap[f]]).collect());
    }
    let sign = edge_perm_sign(src_edges, fmap, dst_edges);
    Iso { vmap, slot_perms, sign }
}

impl Canon {
    /// Transport data from the original graph (with edges in `src_edges` order) to the
    /// canonical graph (edges ordered by min flag).
    pub fn iso(&self, src: &Graph, src_edges: &[(usize, usize)]) -> Iso {
        flag_map_iso(src, &self.graph, &self.fmap, src_edges, &self.graph.edges())
    }
}

impl GraphClass {
    /// Transport data of automorphism number `k`.
    pub fn aut_iso(&self, k: usize) -> Iso {
        flag_map_iso(&self.graph, &self.graph, &self.auts[k], &self.edges, &self.edges)
    }
}
