use super::rep::{Rep, VModule};
use super::OpError;
use crate::exactlin::{SMat, SVec, SvAcc};
use crate::graphkit::perm::{self, Perm};
use crate::graphkit::{classes, Flavor, Graph, Sig, VertexRule, Window};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A generating one-edge composition. Matrix columns are indexed by `ia * dim(b) + ib`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComposeKey {
    Graft { a: Sig, i: usize, b: Sig, j: usize },
    /// `i < j`
    Loop { a: Sig, i: usize, j: usize },
}

impl ComposeKey {
    pub fn loop_key(a: Sig, i: usize, j: usize) -> ComposeKey {
        ComposeKey::Loop { a, i: i.min(j), j: i.max(j) }
    }

    pub fn result(&self, flavor: Flavor) -> Sig {
        match *self {
            ComposeKey::Graft { a, i, b, j } => flavor.glue_order(a, i, b, j).0,
            ComposeKey::Loop { a, i, j } => flavor.loop_order(a, i, j).0,
        }
    }

    pub fn inputs(&self) -> Vec<Sig> {
        match *self {
            ComposeKey::Graft { a, b, .. } => vec![a, b],
            ComposeKey::Loop { a, .. } => vec![a],
        }
    }

    /// Result slot permutation induced by acting with `p` on the input at `side`:
    /// returns the transformed key and the permutation of result slots.
    pub fn conjugate(&self, flavor: Flavor, side: u8, p: &[usize]) -> (ComposeKey, Perm) {
        match *self {
            ComposeKey::Graft { a, i, b, j } => {
                let (i2, j2) = if side == 0 { (p[i], j) } else { (i, p[j]) };
                let (_, o1) = flavor.glue_order(a, i, b, j);
                let (_, o2) = flavor.glue_order(a, i2, b, j2);
                let image = o1
                    .iter()
                    .map(|&(s, k)| {
                        let k2 = if s == side { p[k] } else { k };
                        o2.iter().position(|&x| x == (s, k2)).unwrap()
                    })
                    .collect();
                (ComposeKey::Graft { a, i: i2, b, j: j2 }, image)
            }
            ComposeKey::Loop { a, i, j } => {
                let key2 = ComposeKey::loop_key(a, p[i], p[j]);
                let ComposeKey::Loop { i: i2, j: j2, .. } = key2 else { unreachable!() };
                let (_, o1) = flavor.loop_order(a, i, j);
                let (_, o2) = flavor.loop_order(a, i2, j2);
                let image = o1.iter().map(|&k| o2.iter().position(|&x| x == p[k]).unwrap()).collect();
                (key2, image)
            }
        }
    }
}

/// Every generating composition whose inputs and result lie in the window.
pub fn window_keys(w: &Window) -> Vec<ComposeKey> {
    let sigs = w.sigs();
    let fl = w.flavor;
    let mut out = Vec::new();
    for &a in &sigs {
        for &b in &sigs {
            for i in 0..a.n {
                for j in 0..b.n {
                    if fl.graft_valid(a, i, b, j) && w.contains(fl.glue_order(a, i, b, j).0) {
                        out.push(ComposeKey::Graft { a, i, b, j });
                    }
                }
            }
        }
        if fl.modular() {
            for i in 0..a.n {
                for j in i + 1..a.n {
                    if w.contains(fl.loop_order(a, i, j).0) {
                        out.push(ComposeKey::Loop { a, i, j });
                    }
                }
            }
        }
    }
    out
}

/// A finite F-op given by explicit structure matrices on each generating composition.
#[derive(Clone, Debug)]
pub struct FOpTable {
    pub name: String,
    pub flavor: Flavor,
    pub window: Window,
    pub odd: bool,
    pub spaces: BTreeMap<Sig, Rep>,
    /// weight (edge grading) of each basis vector
    pub weights: BTreeMap<Sig, Vec<usize>>,
    pub compose: BTreeMap<ComposeKey, SMat>,
    pub differential: Option<BTreeMap<Sig, SMat>>,
}

impl FOpTable {
    /// Builds the table, evaluating `f` on every key with nonzero source and target.
    pub fn from_fn(
        name: &str,
        window: Window,
        odd: bool,
        spaces: BTreeMap<Sig, Rep>,
        weights: BTreeMap<Sig, Vec<usize>>,
        f: impl Fn(&ComposeKey) -> SMat + Sync,
    ) -> FOpTable {
        let mut t = FOpTable {
            name: name.to_string(),
            flavor: window.flavor,
            window,
            odd,
            spaces,
            weights,
            compose: BTreeMap::new(),
            differential: None,
        };
        let keys: Vec<ComposeKey> = window_keys(&window)
            .into_iter()
            .filter(|k| t.dim(k.result(t.flavor)) > 0 && k.inputs().iter().all(|s| t.dim(*s) > 0))
            .collect();
        t.compose = keys.par_iter().map(|k| (*k, f(k))).filter(|(_, m)| !m.is_zero()).collect();
        t
    }

    pub fn dim(&self, s: Sig) -> usize {
        self.spaces.get(&s).map_or(0, |r| r.dim)
    }

    pub fn rep(&self, s: Sig) -> Option<&Rep> {
        self.spaces.get(&s).filter(|r| r.dim > 0)
    }

    pub fn weight(&self, s: Sig, k: usize) -> usize {
        self.weights.get(&s).and_then(|w| w.get(k).copied()).unwrap_or(0)
    }

    pub fn dims(&self) -> BTreeMap<Sig, usize> {
        self.window.sigs().into_iter().map(|s| (s, self.dim(s))).collect()
    }

    pub fn vmodule(&self) -> VModule {
        let mut m = VModule::new();
        for r in self.spaces.values() {
            m.insert(r.clone());
        }
        m
    }

    pub fn key_ncols(&self, key: &ComposeKey) -> usize {
        key.inputs().iter().map(|s| self.dim(*s)).product()
    }

    pub fn compose_map(&self, key: &ComposeKey) -> SMat {
        self.compose
            .get(key)
            .cloned()
            .unwrap_or_else(|| SMat::zeros(self.dim(key.result(self.flavor)), self.key_ncols(key)))
    }

    /// Contracts the edges of a labelled graph one at a time. `flags` names one flag of each
    /// edge to contract, in order; `labels[v]` is a basis index at vertex `v`. Returns the
    /// value in slot order and the orientation word (vertex blocks and edges) it represents.
    pub fn contract_sequence(&self, graph: &Graph, labels: &[usize], flags: &[usize]) -> (SVec, Vec<Token>) {
        let mut g = graph.clone();
        let mut orig: Vec<usize> = (0..g.nflags()).collect();
        let mut terms: Vec<(Vec<usize>, crate::exactlin::Rat)> = vec![(labels.to_vec(), crate::exactlin::rat_one())];
        let mut words: Vec<Vec<Token>> =
            (0..g.nverts()).map(|v| vec![Token::Vertex(v, self.weight(g.vertex_sig(v), labels[v]))]).collect();
        for &target in flags {
            let f = orig.iter().position(|&x| x == target).expect("flag still present");
            let h = g.inv[f];
            let e = (target.min(orig[h]), target.max(orig[h]));
            let vo = g.vertex_of();
            let (u, w) = (vo[f], vo[h]);
            let pos = |v: usize, x: usize| g.vflags[v].iter().position(|&y| y == x).unwrap();
            let next = g.contract_edge(f).expect("internal edge");
            let (lo, hi) = (u.min(w), u.max(w));
            let mut new_terms = Vec::new();
            if u == w {
                let key = ComposeKey::loop_key(g.vertex_sig(u), pos(u, f), pos(u, h));
                let m = self.compose_map(&key);
                for (multi, c) in &terms {
                    for (r, x) in &m.cols[multi[u]] {
                        let mut nm = multi.clone();
                        nm[u] = *r;
                        new_terms.push((nm, c * x));
                    }
                }
                words[u].push(Token::Edge(e));
            } else {
                let (sa, sb) = (g.vertex_sig(u), g.vertex_sig(w));
                let key = ComposeKey::Graft { a: sa, i: pos(u, f), b: sb, j: pos(w, h) };
                let m = self.compose_map(&key);
                let db = self.dim(sb);
                for (multi, c) in &terms {
                    for (r, x) in &m.cols[multi[u] * db + multi[w]] {
                        let mut nm = multi.clone();
                        nm[lo] = *r;
                        nm.remove(hi);
                        new_terms.push((nm, c * x));
                    }
                }
                let mut merged = words[u].clone();
                merged.extend(words[w].iter().cloned());
                merged.push(Token::Edge(e));
                words[lo] = merged;
                words.remove(hi);
            }
            terms = new_terms;
            let keep: Vec<usize> = (0..g.nflags()).filter(|&x| x != f && x != h).collect();
            orig = keep.iter().map(|&x| orig[x]).collect();
            g = next;
        }
        let mut acc = SvAcc::new();
        let word = if g.nverts() == 1 { words.pop().unwrap() } else { vec![] };
        if g.nverts() == 1 {
            let listing = &g.vflags[0];
            let p: Perm = listing.iter().map(|&f| g.leg[f]).collect();
            let s = g.vertex_sig(0);
            if let Some(rep) = self.rep(s) {
                let m = rep.rho(&p);
                for (multi, c) in terms {
                    acc.add_vec(&m.cols[multi[0]], &c);
                }
            }
        } else {
            for (multi, c) in terms {
                acc.add(multi[0], c);
            }
        }
        (acc.finish(), word)
    }

    /// Equivariance of every structure map under generators of both input groups.
    pub fn check_equivariance(&self) -> Result<(), OpError> {
        let keys: Vec<&ComposeKey> = self.compose.keys().collect();
        keys.par_iter().try_for_each(|key| {
            let m = &self.compose[*key];
            let ins = key.inputs();
            for (side, &s) in ins.iter().enumerate() {
                for p in self.flavor.aut_gens(s) {
                    let (key2, q) = key.conjugate(self.flavor, side as u8, &p);
                    let m2 = self.compose_map(&key2);
                    let act = self.rep(s).unwrap().rho(&p);
                    let lhs = match side {
                        0 if ins.len() == 2 => m2.mul(&act.kron(&SMat::identity(self.dim(ins[1])))),
                        0 => m2.mul(act),
                        _ => m2.mul(&SMat::identity(self.dim(ins[0])).kron(act)),
                    };
                    let r = key.result(self.flavor);
                    let rhs = self.rep(r).map_or_else(|| SMat::zeros(0, m.ncols), |rep| rep.rho(&q).mul(m));
                    if lhs != rhs {
                        return Err(OpError::Structure(format!("{} fails equivariance at {:?}", self.name, key)));
                    }
                }
            }
            Ok(())
        })
    }

    /// Both contraction orders of every degree-2 graph agree (up to the orientation sign
    /// for odd tables).
    pub fn check_associativity(&self) -> Result<(), OpError> {
        let rule = VertexRule::of(&self.window);
        let sigs = self.window.sigs();
        sigs.par_iter().try_for_each(|&s| {
            if self.window.top_degree(s) < 2 {
                return Ok(());
            }
            for cls in classes(rule, s, 2).iter() {
                let g = &cls.graph;
                let dims: Vec<usize> = (0..g.nverts()).map(|v| self.dim(g.vertex_sig(v))).collect();
                let total: usize = dims.iter().product();
                let (e1, e2) = (cls.edges[0].0, cls.edges[1].0);
                for idx in 0..total {
                    let mut labels = vec![0; dims.len()];
                    let mut rest = idx;
                    for v in (0..dims.len()).rev() {
                        labels[v] = rest % dims[v];
                        rest /= dims[v];
                    }
                    let (v1, w1) = self.contract_sequence(g, &labels, &[e1, e2]);
                    let (v2, w2) = self.contract_sequence(g, &labels, &[e2, e1]);
                    let sign = if self.odd { word_sign(&w1, &w2) } else { 1 };
                    let v2 = if sign < 0 { crate::exactlin::sv_scale(&v2, &-crate::exactlin::rat_one()) } else { v2 };
                    if v1 != v2 {
                        return Err(OpError::Structure(format!(
                            "{} fails associativity at {} on labels {:?}",
                            self.name,
                            self.flavor.fmt_sig(s),
                            labels
                        )));
                    }
                }
            }
            Ok(())
        })
    }

    pub fn check(&self) -> Result<(), OpError> {
        for r in self.spaces.values() {
            r.validate().map_err(|e| OpError::Structure(format!("{}: {e}", self.name)))?;
        }
        self.check_equivariance()?;
        self.check_associativity()
    }

    /// Levelwise tensor product of two even tables.
    pub fn tensor(&self, other: &FOpTable) -> FOpTable {
        assert!(!self.odd && !other.odd, "tensor product is only built for even tables");
        let spaces: BTreeMap<Sig, Rep> = self
            .spaces
            .iter()
            .filter_map(|(s, r)| other.spaces.get(s).map(|q| (*s, r.tensor(q))))
            .collect();
        let weights = spaces
            .iter()
            .map(|(s, r)| {
                let dq = other.dim(*s);
                (*s, (0..r.dim).map(|k| self.weight(*s, k / dq.max(1)) + other.weight(*s, k % dq.max(1))).collect())
            })
            .collect();
        let name = format!("{}⊗{}", self.name, other.name);
        FOpTable::from_fn(&name, self.window, false, spaces, weights, |key| {
            let (mo, mp) = (self.compose_map(key), other.compose_map(key));
            let big = mo.kron(&mp);
            match *key {
                ComposeKey::Loop { .. } => big,
                ComposeKey::Graft { a, b, .. } => {
                    let (oa, ob, pa, pb) = (self.dim(a), self.dim(b), other.dim(a), other.dim(b));
                    // column (ia_o, ia_p, ib_o, ib_p) of the result comes from kron column
                    // (ia_o, ib_o, ia_p, ib_p)
                    let mut sel = vec![0; oa * pa * ob * pb];
                    for iao in 0..oa {
                        for iap in 0..pa {
                            for ibo in 0..ob {
                                for ibp in 0..pb {
                                    let dst = ((iao * pa + iap) * ob + ibo) * pb + ibp;
                                    let src = (iao * ob + ibo) * (pa * pb) + iap * pb + ibp;
                                    sel[dst] = src;
                                }
                            }
                        }
                    }
                    big.select_cols(&sel)
                }
            }
        })
    }
}

/// One letter of an orientation word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    /// vertex index in the original graph and the weight of its label
    Vertex(usize, usize),
    Edge((usize, usize)),
}

impl Token {
    fn odd(&self) -> bool {
        match self {
            Token::Vertex(_, w) => w % 2 == 1,
            Token::Edge(_) => true,
        }
    }
}

/// Sign of the reordering carrying word `a` to word `b`; only odd letters count.
pub fn word_sign(a: &[Token], b: &[Token]) -> i8 {
    let oa: Vec<&Token> = a.iter().filter(|t| t.odd()).collect();
    let ob: Vec<&Token> = b.iter().filter(|t| t.odd()).collect();
    let p: Vec<usize> = oa.iter().map(|t| ob.iter().position(|u| u == t).expect("same letters")).collect();
    perm::sign(&p)
}
