use super::MorphismId;
use crate::graphkit::perm::{self, Perm};
use crate::graphkit::{Sig, Window};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Left coset representatives of `Aut(w)` in `Aut(v)`, one per source structure on the
/// slots of `v` (a set of outputs, a root, a planar order, ...). Representatives are
/// lexicographically minimal, so the identity is number 0.
#[derive(Clone, Debug)]
pub struct Decorations {
    pub reps: Vec<Perm>,
    /// `sigma -> (d, h)` with `sigma = reps[d] ∘ h`, `h` in `Aut(w)`
    locate: HashMap<Perm, (usize, Perm)>,
}

impl Decorations {
    pub fn from_groups(big: &[Perm], small: &[Perm]) -> Decorations {
        let mut by_min: HashMap<Perm, usize> = HashMap::new();
        let mut mins: Vec<Perm> = big
            .iter()
            .map(|s| small.iter().map(|h| perm::compose(s, h)).min().expect("nonempty group"))
            .collect();
        mins.sort();
        mins.dedup();
        for (k, m) in mins.iter().enumerate() {
            by_min.insert(m.clone(), k);
        }
        let locate = big
            .iter()
            .map(|s| {
                let m = small.iter().map(|h| perm::compose(s, h)).min().unwrap();
                let d = by_min[&m];
                let h = perm::compose(&perm::inverse(&mins[d]), s);
                (s.clone(), (d, h))
            })
            .collect();
        Decorations { reps: mins, locate }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Splits `sigma` in `Aut(v)` as `reps[d] ∘ h`.
    pub fn locate(&self, sigma: &[usize]) -> (usize, &Perm) {
        let (d, h) = self.locate.get(sigma).unwrap_or_else(|| panic!("{sigma:?} is not in the big group"));
        (*d, h)
    }
}

type DecoKey = (MorphismId, Sig, Sig);

/// Cached decorations of `v` by the preimage `w`.
pub fn decorations(m: MorphismId, v: Sig, w: Sig) -> Arc<Decorations> {
    static CACHE: OnceLock<Mutex<HashMap<DecoKey, Arc<Decorations>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(&(m, v, w)) {
        return d.clone();
    }
    let d = Arc::new(Decorations::from_groups(&m.target().aut(v), &m.source().aut(w)));
    cache.lock().unwrap().insert((m, v, w), d.clone());
    d
}

/// One preimage `w` of a fiber: `decos.len()` consecutive copies of a `width`-dimensional
/// space starting at `offset`.
#[derive(Clone, Debug)]
pub struct FiberPart {
    pub w: Sig,
    pub decos: Arc<Decorations>,
    pub offset: usize,
    pub width: usize,
}

/// Layout of `⊕_{phi(w) = v} ⊕_{decorations} X(w)`.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub v: Sig,
    pub parts: Vec<FiberPart>,
    pub dim: usize,
}

impl Fiber {
    /// Preimages are taken from `source`; those with `width(w) == 0` are skipped.
    pub fn new(m: MorphismId, v: Sig, source: &Window, width: impl Fn(Sig) -> usize) -> Fiber {
        let mut parts = Vec::new();
        let mut dim = 0;
        for w in m.preimages(v, source) {
            let wd = width(w);
            if wd == 0 {
                continue;
            }
            let decos = decorations(m, v, w);
            parts.push(FiberPart { w, decos: decos.clone(), offset: dim, width: wd });
            dim += decos.len() * wd;
        }
        Fiber { v, parts, dim }
    }

    pub fn part(&self, w: Sig) -> Option<usize> {
        self.parts.iter().position(|p| p.w == w)
    }

    pub fn index(&self, part: usize, d: usize, k: usize) -> usize {
        let p = &self.parts[part];
        p.offset + d * p.width + k
    }

    /// Inverse of [`Fiber::index`].
    pub fn decode(&self, idx: usize) -> (usize, usize, usize) {
        let part = self.parts.partition_point(|p| p.offset <= idx) - 1;
        let p = &self.parts[part];
        let local = idx - p.offset;
        (part, local / p.width, local % p.width)
    }
}
