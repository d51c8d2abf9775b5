use super::flavor::{Flavor, Sig};
use serde::{Deserialize, Serialize};

pub const NO_LEG: usize = usize::MAX;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("flavor violation: {0}")]
    FlavorViolation(String),
    #[error("flag {0} is a leg, not an internal edge")]
    NotInternal(usize),
    #[error("unstable or malformed signature {0}")]
    UnstableSignature(String),
    #[error("no leg labelled {0}")]
    NoSuchLeg(usize),
}

/// A graph with flags, an involution, vertex listings and decorations.
///
/// `vflags[v]` lists the flags of `v` in slot order; for planar flavors this is the
/// planar (cyclic or linear) order, for directed flavors outputs come first.
/// `out[f]` says whether flag `f` points out of its vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    pub flavor: Flavor,
    pub vflags: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub leg: Vec<usize>,
    pub genus: Vec<u32>,
    pub out: Vec<bool>,
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Graph {
    pub fn nflags(&self) -> usize {
        self.inv.len()
    }
    pub fn nverts(&self) -> usize {
        self.vflags.len()
    }

    pub fn vertex_of(&self) -> Vec<usize> {
        let mut vo = vec![0; self.nflags()];
        for (v, fl) in self.vflags.iter().enumerate() {
            for &f in fl {
                vo[f] = v;
            }
        }
        vo
    }

    pub fn is_leg(&self, f: usize) -> bool {
        self.inv[f] == f
    }

    pub fn legs(&self) -> usize {
        (0..self.nflags()).filter(|&f| self.is_leg(f)).count()
    }

    /// Internal edges as `(min flag, max flag)`, ordered by min flag.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.nflags()).filter(|&f| self.inv[f] > f).map(|f| (f, self.inv[f])).collect()
    }

    pub fn nedges(&self) -> usize {
        (0..self.nflags()).filter(|&f| self.inv[f] > f).count()
    }

    pub fn leg_flag(&self, slot: usize) -> Option<usize> {
        (0..self.nflags()).find(|&f| self.is_leg(f) && self.leg[f] == slot)
    }

    pub fn betti(&self) -> usize {
        self.nedges() + 1 - self.nverts()
    }

    pub fn sig(&self) -> Sig {
        let n = self.legs();
        let outs = if self.flavor.directed() {
            (0..self.nflags()).filter(|&f| self.is_leg(f) && self.out[f]).count()
        } else {
            0
        };
        let g = self.betti() as u32 + self.genus.iter().sum::<u32>();
        Sig { n, g, outs }
    }

    pub fn vertex_sig(&self, v: usize) -> Sig {
        let outs = if self.flavor.directed() { self.vflags[v].iter().filter(|&&f| self.out[f]).count() } else { 0 };
        Sig { n: self.vflags[v].len(), g: self.genus[v], outs }
    }

    pub fn corolla(flavor: Flavor, s: Sig) -> Graph {
        Graph {
            flavor,
            vflags: vec![(0..s.n).collect()],
            inv: (0..s.n).collect(),
            leg: (0..s.n).collect(),
            genus: vec![s.g],
            out: (0..s.n).map(|k| flavor.slot_is_out(s, k)).collect(),
        }
    }

    /// Planar boundary walk: leg labels in the order met going around the graph from leg 0.
    pub fn boundary_legs(&self) -> Vec<usize> {
        let vo = self.vertex_of();
        let mut pos = vec![0; self.nflags()];
        for fl in &self.vflags {
            for (k, &f) in fl.iter().enumerate() {
                pos[f] = k;
            }
        }
        let next = |f: usize| {
            let fl = &self.vflags[vo[f]];
            fl[(pos[f] + 1) % fl.len()]
        };
        let Some(start) = self.leg_flag(0) else { return vec![] };
        let mut out = vec![0];
        let mut cur = start;
        for _ in 0..2 * self.nflags() + 2 {
            let h = next(cur);
            if self.is_leg(h) {
                if h == start {
                    break;
                }
                out.push(self.leg[h]);
                cur = h;
            } else {
                cur = self.inv[h];
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |m: &str| Err(GraphError::FlavorViolation(m.to_string()));
        let nf = self.nflags();
        if self.leg.len() != nf || self.out.len() != nf || self.genus.len() != self.nverts() {
            return bad("field lengths disagree");
        }
        let mut seen = vec![false; nf];
        for fl in &self.vflags {
            for &f in fl {
                if f >= nf || std::mem::replace(&mut seen[f], true) {
                    return bad("vertex listings do not partition the flags");
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("vertex listings do not partition the flags");
        }
        for f in 0..nf {
            let h = self.inv[f];
            if h >= nf || self.inv[h] != f {
                return bad("not an involution");
            }
            if (h == f) != (self.leg[f] != NO_LEG) {
                return bad("leg labels must sit exactly on fixed points");
            }
        }
        let n = self.legs();
        let mut labels: Vec<usize> = (0..nf).filter(|&f| self.is_leg(f)).map(|f| self.leg[f]).collect();
        labels.sort_unstable();
        if labels != (0..n).collect::<Vec<_>>() {
            return bad("leg labels must be 0..n");
        }
        if self.nverts() == 0 {
            return bad("no vertices");
        }
        // connectivity
        let vo = self.vertex_of();
        let mut reached = vec![false; self.nverts()];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(v) = stack.pop() {
            for &f in &self.vflags[v] {
                let w = vo[self.inv[f]];
                if !reached[w] {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return bad("disconnected");
        }
        if !self.flavor.modular() {
            if self.genus.iter().any(|&g| g != 0) {
                return bad("genus labels outside the modular flavor");
            }
            if self.nedges() + 1 != self.nverts() {
                return bad("not a tree");
            }
        }
        if self.flavor.directed() {
            for (f, h) in self.edges() {
                if self.out[f] == self.out[h] {
                    return bad("edge is not compatibly directed");
                }
            }
            for fl in &self.vflags {
                let k = fl.iter().take_while(|&&f| self.out[f]).count();
                if fl[k..].iter().any(|&f| self.out[f]) {
                    return bad("outputs must precede inputs in a vertex listing");
                }
            }
            let s = self.sig();
            for f in 0..nf {
                if self.is_leg(f) && self.out[f] != (self.leg[f] < s.outs) {
                    return bad("output legs must carry the first labels");
                }
            }
        } else if self.out.iter().any(|&o| o) {
            return bad("directions in an undirected flavor");
        }
        for v in 0..self.nverts() {
            let s = self.vertex_sig(v);
            if !self.flavor.valid_sig(s) {
                return Err(GraphError::UnstableSignature(self.flavor.fmt_sig(s)));
            }
        }
        if self.flavor.planar() && self.boundary_legs() != (0..n).collect::<Vec<_>>() {
            return bad("leg labels disagree with the planar order");
        }
        Ok(())
    }

    /// Joins leg `i` of `a` to leg `j` of `b`. Returns the glued graph and its edges in
    /// the order (edges of a, edges of b, new edge).
    pub fn glue(a: &Graph, i: usize, b: &Graph, j: usize) -> Result<(Graph, Vec<(usize, usize)>), GraphError> {
        let fl = a.flavor;
        let fa = a.leg_flag(i).ok_or(GraphError::NoSuchLeg(i))?;
        let fb = b.leg_flag(j).ok_or(GraphError::NoSuchLeg(j))?;
        let (sa, sb) = (a.sig(), b.sig());
        if !fl.graft_valid(sa, i, sb, j) {
            return Err(GraphError::FlavorViolation("incompatible grafting slots".into()));
        }
        let (_, order) = fl.glue_order(sa, i, sb, j);
        let off = a.nflags();
        let mut g = Graph {
            flavor: fl,
            vflags: a.vflags.iter().cloned().chain(b.vflags.iter().map(|l| l.iter().map(|f| f + off).collect())).collect(),
            inv: a.inv.iter().copied().chain(b.inv.iter().map(|f| f + off)).collect(),
            leg: vec![NO_LEG; off + b.nflags()],
            genus: a.genus.iter().chain(&b.genus).copied().collect(),
            out: a.out.iter().chain(&b.out).copied().collect(),
        };
        g.inv[fa] = fb + off;
        g.inv[fb + off] = fa;
        for (r, &(side, k)) in order.iter().enumerate() {
            let f = if side == 0 { a.leg_flag(k).unwrap() } else { b.leg_flag(k).unwrap() + off };
            g.leg[f] = r;
        }
        let mut edges = a.edges();
        edges.extend(b.edges().into_iter().map(|(x, y)| (x + off, y + off)));
        edges.push(edge_key(fa, fb + off));
        Ok((g, edges))
    }

    /// Joins legs `i` and `j` of one graph (modular only). Edges: (old edges, new edge).
    pub fn self_glue(a: &Graph, i: usize, j: usize) -> Result<(Graph, Vec<(usize, usize)>), GraphError> {
        if !a.flavor.modular() {
            return Err(GraphError::FlavorViolation("self-gluing needs the modular flavor".into()));
        }
        let fi = a.leg_flag(i).ok_or(GraphError::NoSuchLeg(i))?;
        let fj = a.leg_flag(j).ok_or(GraphError::NoSuchLeg(j))?;
        if fi == fj {
            return Err(GraphError::FlavorViolation("cannot join a leg to itself".into()));
        }
        let (_, order) = a.flavor.loop_order(a.sig(), i, j);
        let mut g = a.clone();
        g.inv[fi] = fj;
        g.inv[fj] = fi;
        g.leg[fi] = NO_LEG;
        g.leg[fj] = NO_LEG;
        for (r, &k) in order.iter().enumerate() {
            g.leg[a.leg_flag(k).unwrap()] = r;
        }
        let mut edges = a.edges();
        edges.push(edge_key(fi, fj));
        Ok((g, edges))
    }

    /// Contracts the edge containing flag `f`; the merged vertex is listed by the glue
    /// order with the vertex of `f` as the first side.
    pub fn contract_edge(&self, f: usize) -> Result<Graph, GraphError> {
        let h = self.inv[f];
        if h == f {
            return Err(GraphError::NotInternal(f));
        }
        let vo = self.vertex_of();
        let (u, w) = (vo[f], vo[h]);
        let pos = |v: usize, x: usize| self.vflags[v].iter().position(|&y| y == x).unwrap();
        let (listing, genus) = if u == w {
            let (_, order) = self.flavor.loop_order(self.vertex_sig(u), pos(u, f), pos(u, h));
            (order.iter().map(|&k| self.vflags[u][k]).collect::<Vec<_>>(), self.genus[u] + 1)
        } else {
            let (_, order) = self.flavor.glue_order(self.vertex_sig(u), pos(u, f), self.vertex_sig(w), pos(w, h));
            let l = order.iter().map(|&(side, k)| if side == 0 { self.vflags[u][k] } else { self.vflags[w][k] }).collect();
            (l, self.genus[u] + self.genus[w])
        };
        let keep: Vec<usize> = (0..self.nflags()).filter(|&x| x != f && x != h).collect();
        let mut renum = vec![usize::MAX; self.nflags()];
        for (k, &x) in keep.iter().enumerate() {
            renum[x] = k;
        }
        let (lo, hi) = (u.min(w), u.max(w));
        let mut vflags = Vec::new();
        let mut gen = Vec::new();
        for v in 0..self.nverts() {
            if v == lo {
                vflags.push(listing.iter().map(|&x| renum[x]).collect());
                gen.push(genus);
            } else if v != hi {
                vflags.push(self.vflags[v].iter().map(|&x| renum[x]).collect());
                gen.push(self.genus[v]);
            }
        }
        Ok(Graph {
            flavor: self.flavor,
            vflags,
            inv: keep.iter().map(|&x| renum[self.inv[x]]).collect(),
            leg: keep.iter().map(|&x| self.leg[x]).collect(),
            genus: gen,
            out: keep.iter().map(|&x| self.out[x]).collect(),
        })
    }

    /// Replaces vertex `v` by a one-edge graph whose legs are labelled by the slots of `v`.
    /// The split's first vertex takes the place of `v`, its second (if any) is appended.
    /// Edges are returned in the order (new edge, old edges).
    pub fn insert_split(&self, v: usize, split: &Graph) -> (Graph, Vec<(usize, usize)>) {
        debug_assert_eq!(split.legs(), self.vflags[v].len());
        let nf = self.nflags();
        let mut map = vec![0; split.nflags()];
        let mut next = nf;
        for s in 0..split.nflags() {
            map[s] = if split.is_leg(s) {
                self.vflags[v][split.leg[s]]
            } else {
                next += 1;
                next - 1
            };
        }
        let mut g = self.clone();
        g.inv.resize(next, 0);
        g.leg.resize(next, NO_LEG);
        g.out.resize(next, false);
        for s in 0..split.nflags() {
            if !split.is_leg(s) {
                g.inv[map[s]] = map[split.inv[s]];
                g.out[map[s]] = split.out[s];
            }
        }
        g.vflags[v] = split.vflags[0].iter().map(|&s| map[s]).collect();
        g.genus[v] = split.genus[0];
        for w in 1..split.nverts() {
            g.vflags.push(split.vflags[w].iter().map(|&s| map[s]).collect());
            g.genus.push(split.genus[w]);
        }
        let (a, b) = split.edges()[0];
        let mut edges = vec![edge_key(map[a], map[b])];
        edges.extend(self.edges());
        (g, edges)
    }

    /// Renames leg labels: slot `k` becomes `p[k]`.
    pub fn relabel_legs(&self, p: &[usize]) -> Graph {
        let mut g = self.clone();
        for f in 0..g.nflags() {
            if g.is_leg(f) {
                g.leg[f] = p[g.leg[f]];
            }
        }
        g
    }
}
