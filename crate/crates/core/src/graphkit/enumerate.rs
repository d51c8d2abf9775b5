use super::canon::{canonicalize, Canon, GraphClass};
use super::flavor::{Flavor, Sig, Window};
use super::graph::{Graph, GraphError, NO_LEG};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

/// Vertex admissibility shared by enumeration and splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexRule {
    pub flavor: Flavor,
    pub nonempty_io: bool,
}

impl VertexRule {
    pub fn of(w: &Window) -> VertexRule {
        VertexRule { flavor: w.flavor, nonempty_io: w.nonempty_io }
    }
    pub fn plain(flavor: Flavor) -> VertexRule {
        VertexRule { flavor, nonempty_io: false }
    }
    pub fn allows(&self, s: Sig) -> bool {
        self.flavor.valid_sig(s) && (!self.nonempty_io || (s.outs >= 1 && s.ins() >= 1))
    }
}

struct RawSplit {
    u: Vec<usize>,
    w: Option<Vec<usize>>,
    gu: u32,
    gw: u32,
    /// direction of the edge flag at u (true = out of u)
    u_out: bool,
}

fn build_split(flavor: Flavor, s: Sig, r: &RawSplit) -> Graph {
    // slot flags 0..n, edge flags n, n+1
    let n = s.n;
    let e = n;
    let ep = n + 1;
    let mut out: Vec<bool> = (0..n).map(|k| flavor.slot_is_out(s, k)).collect();
    out.push(flavor.directed() && r.u_out);
    out.push(flavor.directed() && !r.u_out);
    let mut inv: Vec<usize> = (0..n).collect();
    inv.push(ep);
    inv.push(e);
    let mut leg: Vec<usize> = (0..n).collect();
    leg.push(NO_LEG);
    leg.push(NO_LEG);
    let (vflags, genus) = match &r.w {
        Some(w) => (vec![r.u.clone(), w.clone()], vec![r.gu, r.gw]),
        None => (vec![r.u.clone()], vec![r.gu]),
    };
    Graph { flavor, vflags, inv, leg, genus, out }
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u64..(1 << items.len()))
        .map(|mask| items.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &x)| x).collect())
        .collect()
}

fn raw_splits(rule: VertexRule, s: Sig) -> Vec<RawSplit> {
    let n = s.n;
    let (e, ep) = (n, n + 1);
    let mut out = Vec::new();
    match rule.flavor {
        Flavor::Cyclic | Flavor::Modular => {
            let rest: Vec<usize> = (1..n).collect();
            let bsets = if n == 0 { vec![vec![]] } else { subsets(&rest) };
            for b in bsets {
                let a: Vec<usize> = (0..n).filter(|k| !b.contains(k)).collect();
                for gu in 0..=s.g {
                    let mut u = a.clone();
                    u.push(e);
                    let mut w = vec![ep];
                    w.extend(&b);
                    out.push(RawSplit { u, w: Some(w), gu, gw: s.g - gu, u_out: false });
                }
            }
            if rule.flavor.modular() && s.g >= 1 {
                let mut u: Vec<usize> = (0..n).collect();
                u.push(e);
                u.push(ep);
                out.push(RawSplit { u, w: None, gu: s.g - 1, gw: 0, u_out: false });
            }
        }
        Flavor::PlanarCyclic => {
            for a in 1..n {
                for b in a + 1..n {
                    let mut u: Vec<usize> = (0..a).collect();
                    u.push(e);
                    u.extend(b + 1..n);
                    let mut w = vec![ep];
                    w.extend(a..=b);
                    out.push(RawSplit { u, w: Some(w), gu: 0, gw: 0, u_out: false });
                }
            }
        }
        Flavor::Operad => {
            let ins: Vec<usize> = (1..n).collect();
            for b in subsets(&ins) {
                let mut u = vec![0];
                u.extend(ins.iter().filter(|k| !b.contains(k)));
                u.push(e);
                let mut w = vec![ep];
                w.extend(&b);
                out.push(RawSplit { u, w: Some(w), gu: 0, gw: 0, u_out: false });
            }
        }
        Flavor::PlanarOperad => {
            for a in 1..n {
                for b in a..n {
                    let mut u = vec![0];
                    u.extend(1..a);
                    u.push(e);
                    u.extend(b + 1..n);
                    let mut w = vec![ep];
                    w.extend(a..=b);
                    out.push(RawSplit { u, w: Some(w), gu: 0, gw: 0, u_out: false });
                }
            }
        }
        Flavor::Dioperad => {
            let all: Vec<usize> = (0..n).collect();
            for a in subsets(&all) {
                let b: Vec<usize> = (0..n).filter(|k| !a.contains(k)).collect();
                let (ao, ai): (Vec<usize>, Vec<usize>) = a.iter().partition(|&&k| k < s.outs);
                let (bo, bi): (Vec<usize>, Vec<usize>) = b.iter().partition(|&&k| k < s.outs);
                let mut u = ao;
                u.push(e);
                u.extend(ai);
                let mut w = bo;
                w.push(ep);
                w.extend(bi);
                out.push(RawSplit { u, w: Some(w), gu: 0, gw: 0, u_out: true });
            }
        }
    }
    out
}

fn splits_uncached(rule: VertexRule, s: Sig) -> Vec<Arc<GraphClass>> {
    let mut found: BTreeMap<Vec<u32>, Arc<GraphClass>> = BTreeMap::new();
    for r in raw_splits(rule, s) {
        let g = build_split(rule.flavor, s, &r);
        if !(0..g.nverts()).all(|v| rule.allows(g.vertex_sig(v))) {
            continue;
        }
        debug_assert!(g.validate().is_ok(), "bad split {g:?}");
        let c = canonicalize(&g);
        found.entry(c.key.clone()).or_insert_with(|| Arc::new(GraphClass::from_canon(&c)));
    }
    found.into_values().collect()
}

type SplitMemo = Mutex<HashMap<(VertexRule, Sig), Arc<Vec<Arc<GraphClass>>>>>;

/// Isomorphism classes of one-edge graphs over the corolla at `s`, legs labelled by slots.
pub fn splits(rule: VertexRule, s: Sig) -> Arc<Vec<Arc<GraphClass>>> {
    static M: OnceLock<SplitMemo> = OnceLock::new();
    let m = M.get_or_init(Default::default);
    if let Some(v) = m.lock().unwrap().get(&(rule, s)) {
        return v.clone();
    }
    let v = Arc::new(splits_uncached(rule, s));
    m.lock().unwrap().insert((rule, s), v.clone());
    v
}

/// Hash of the graph-handling sources; keys the on-disk enumeration cache.
pub fn code_version() -> String {
    let mut h = Sha256::new();
    for src in [
        include_str!("canon.rs"),
        include_str!("enumerate.rs"),
        include_str!("flavor.rs"),
        include_str!("graph.rs"),
    ] {
        h.update(src.as_bytes());
    }
    let d = h.finalize();
    d.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

static CACHE_DIR: RwLock<Option<PathBuf>> = RwLock::new(None);

pub fn set_cache_dir(dir: Option<PathBuf>) {
    *CACHE_DIR.write().unwrap() = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    CACHE_DIR.read().unwrap().clone()
}

fn cache_file(rule: VertexRule, s: Sig, degree: usize) -> Option<PathBuf> {
    let dir = cache_dir()?;
    let name = format!(
        "{}_n{}_g{}_o{}_d{}_{}_{}.json",
        rule.flavor.name(),
        s.n,
        s.g,
        s.outs,
        degree,
        if rule.nonempty_io { "io" } else { "all" },
        code_version()
    );
    Some(dir.join(name))
}

type ClassMemo = Mutex<HashMap<(VertexRule, Sig, usize), Arc<Vec<Arc<GraphClass>>>>>;

fn class_memo() -> &'static ClassMemo {
    static M: OnceLock<ClassMemo> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// Isomorphism classes at `s` with exactly `degree` internal edges, sorted by canonical key.
pub fn classes(rule: VertexRule, s: Sig, degree: usize) -> Arc<Vec<Arc<GraphClass>>> {
    if let Some(v) = class_memo().lock().unwrap().get(&(rule, s, degree)) {
        return v.clone();
    }
    let path = cache_file(rule, s, degree);
    if let Some(p) = &path {
        if let Ok(text) = std::fs::read_to_string(p) {
            if let Ok(list) = serde_json::from_str::<Vec<GraphClass>>(&text) {
                let v = Arc::new(list.into_iter().map(Arc::new).collect::<Vec<_>>());
                class_memo().lock().unwrap().insert((rule, s, degree), v.clone());
                return v;
            }
        }
    }
    let v = Arc::new(classes_uncached(rule, s, degree));
    if let Some(p) = &path {
        let list: Vec<&GraphClass> = v.iter().map(|c| c.as_ref()).collect();
        if let Ok(text) = serde_json::to_string(&list) {
            let _ = std::fs::create_dir_all(p.parent().unwrap());
            let _ = std::fs::write(p, text);
        }
    }
    class_memo().lock().unwrap().insert((rule, s, degree), v.clone());
    v
}

fn classes_uncached(rule: VertexRule, s: Sig, degree: usize) -> Vec<Arc<GraphClass>> {
    if !rule.allows(s) {
        return vec![];
    }
    if degree == 0 {
        let c = canonicalize(&Graph::corolla(rule.flavor, s));
        return vec![Arc::new(GraphClass::from_canon(&c))];
    }
    let mut found: BTreeMap<Vec<u32>, Arc<GraphClass>> = BTreeMap::new();
    for cls in classes(rule, s, degree - 1).iter() {
        for v in 0..cls.graph.nverts() {
            for sp in splits(rule, cls.graph.vertex_sig(v)).iter() {
                let (g, _) = cls.graph.insert_split(v, &sp.graph);
                let c = canonicalize(&g);
                found.entry(c.key.clone()).or_insert_with(|| Arc::new(GraphClass::from_canon(&c)));
            }
        }
    }
    found.into_values().collect()
}

pub fn enumerate_classes(
    flavor: Flavor,
    s: Sig,
    degree: usize,
    nonempty_io: bool,
) -> Result<Arc<Vec<Arc<GraphClass>>>, GraphError> {
    let rule = VertexRule { flavor, nonempty_io };
    if !rule.allows(s) {
        return Err(GraphError::UnstableSignature(flavor.fmt_sig(s)));
    }
    Ok(classes(rule, s, degree))
}

/// A one-edge expansion of a class: the expanded class, the marked edge in its canonical
/// graph, and the transport from the raw insertion (edges: new edge first) to canonical.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub vertex: usize,
    pub split: Arc<GraphClass>,
    pub raw: Graph,
    pub raw_edges: Vec<(usize, usize)>,
    pub canon: Arc<Canon>,
    pub edge: (usize, usize),
}

/// Every (vertex, split) insertion into the class. Distinct entries may land on the same
/// marked class when the class has automorphisms; see `one_edge_expansions` for the
/// deduplicated list.
pub fn insertions(rule: VertexRule, cls: &GraphClass) -> Vec<Expansion> {
    let mut out = Vec::new();
    for v in 0..cls.graph.nverts() {
        for sp in splits(rule, cls.graph.vertex_sig(v)).iter() {
            let (raw, raw_edges) = cls.graph.insert_split(v, &sp.graph);
            let canon = super::canon::canonicalize_cached(&raw);
            let (a, b) = raw_edges[0];
            let (x, y) = (canon.fmap[a], canon.fmap[b]);
            out.push(Expansion { vertex: v, split: sp.clone(), raw, raw_edges, canon, edge: (x.min(y), x.max(y)) });
        }
    }
    out
}

/// Classes with a marked edge whose contraction is `cls`, one per isomorphism class of
/// marked graph.
pub fn one_edge_expansions(rule: VertexRule, cls: &GraphClass) -> Vec<Expansion> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in insertions(rule, cls) {
        let orbit_min = x
            .canon
            .auts
            .iter()
            .map(|a| {
                let (p, q) = (a[x.edge.0], a[x.edge.1]);
                (p.min(q), p.max(q))
            })
            .min()
            .unwrap();
        if seen.insert((x.canon.key.clone(), orbit_min)) {
            out.push(x);
        }
    }
    out
}
