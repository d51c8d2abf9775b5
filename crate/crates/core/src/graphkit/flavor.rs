use super::perm::{self, Perm};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    Operad,
    Cyclic,
    Modular,
    Dioperad,
    PlanarOperad,
    PlanarCyclic,
}

pub const ALL_FLAVORS: [Flavor; 6] =
    [Flavor::Operad, Flavor::Cyclic, Flavor::Modular, Flavor::Dioperad, Flavor::PlanarOperad, Flavor::PlanarCyclic];

/// Object signature. `n` counts all flags; `outs` counts output flags and is 1 for
/// operads, 0 for undirected flavors. Output slots come first: `0..outs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sig {
    pub n: usize,
    pub g: u32,
    pub outs: usize,
}

impl Sig {
    pub fn cyc(n: usize) -> Sig {
        Sig { n, g: 0, outs: 0 }
    }
    pub fn modular(g: u32, n: usize) -> Sig {
        Sig { n, g, outs: 0 }
    }
    /// Operad signature of the given arity (number of inputs).
    pub fn operad(arity: usize) -> Sig {
        Sig { n: arity + 1, g: 0, outs: 1 }
    }
    pub fn di(ins: usize, outs: usize) -> Sig {
        Sig { n: ins + outs, g: 0, outs }
    }
    pub fn ins(&self) -> usize {
        self.n - self.outs
    }
    /// Euler-type size `2g + n`; strictly grows under grafting, fixed under self-gluing.
    pub fn size(&self) -> usize {
        2 * self.g as usize + self.n
    }
    pub fn rank_key(&self) -> (usize, u32, usize, usize) {
        (self.size(), self.g, self.n, self.outs)
    }
}

impl Flavor {
    pub fn directed(self) -> bool {
        matches!(self, Flavor::Operad | Flavor::Dioperad | Flavor::PlanarOperad)
    }
    pub fn planar(self) -> bool {
        matches!(self, Flavor::PlanarOperad | Flavor::PlanarCyclic)
    }
    pub fn modular(self) -> bool {
        self == Flavor::Modular
    }
    pub fn operadic(self) -> bool {
        matches!(self, Flavor::Operad | Flavor::PlanarOperad)
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Operad => "operad",
            Flavor::Cyclic => "cyclic",
            Flavor::Modular => "modular",
            Flavor::Dioperad => "dioperad",
            Flavor::PlanarOperad => "planar-operad",
            Flavor::PlanarCyclic => "planar-cyclic",
        }
    }

    pub fn parse(s: &str) -> Option<Flavor> {
        ALL_FLAVORS.iter().copied().find(|f| f.name() == s)
    }

    /// Shape and stability.
    pub fn valid_sig(self, s: Sig) -> bool {
        match self {
            Flavor::Cyclic | Flavor::PlanarCyclic => s.g == 0 && s.outs == 0 && s.n >= 3,
            Flavor::Modular => s.outs == 0 && s.size() >= 3,
            Flavor::Operad | Flavor::PlanarOperad => s.g == 0 && s.outs == 1 && s.n >= 3,
            Flavor::Dioperad => s.g == 0 && s.outs <= s.n && s.n >= 3,
        }
    }

    pub fn fmt_sig(self, s: Sig) -> String {
        match self {
            Flavor::Cyclic | Flavor::PlanarCyclic => format!("(({}))", s.n),
            Flavor::Modular => format!("({},{})", s.g, s.n),
            Flavor::Operad | Flavor::PlanarOperad => format!("({})", s.n - 1),
            Flavor::Dioperad => format!("({},{})", s.ins(), s.outs),
        }
    }

    pub fn parse_sig(self, text: &str) -> Option<Sig> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        let nums: Vec<usize> = t.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
        let s = match (self, nums.as_slice()) {
            (Flavor::Cyclic | Flavor::PlanarCyclic, [n]) => Sig::cyc(*n),
            (Flavor::Modular, [g, n]) => Sig::modular(*g as u32, *n),
            (Flavor::Operad | Flavor::PlanarOperad, [a]) => Sig::operad(*a),
            (Flavor::Dioperad, [i, o]) => Sig::di(*i, *o),
            _ => return None,
        };
        Some(s)
    }

    pub fn slot_is_out(self, s: Sig, k: usize) -> bool {
        self.directed() && k < s.outs
    }

    /// All slot permutations of the signature's symmetry group.
    pub fn aut(self, s: Sig) -> Vec<Perm> {
        match self {
            Flavor::Cyclic | Flavor::Modular => perm::all_perms(s.n),
            Flavor::Operad | Flavor::Dioperad => perm::block_perms(&[0..s.outs, s.outs..s.n], s.n),
            Flavor::PlanarOperad => vec![perm::identity(s.n)],
            Flavor::PlanarCyclic => (0..s.n).map(|r| perm::rotation(s.n, r)).collect(),
        }
    }

    /// A generating set of `aut(s)` (possibly empty for the trivial group).
    pub fn aut_gens(self, s: Sig) -> Vec<Perm> {
        let transp = |a: usize, b: usize| {
            let mut p = perm::identity(s.n);
            p.swap(a, b);
            p
        };
        match self {
            Flavor::Cyclic | Flavor::Modular => (1..s.n).map(|k| transp(k - 1, k)).collect(),
            Flavor::Operad | Flavor::Dioperad => {
                (1..s.n).filter(|&k| k != s.outs).map(|k| transp(k - 1, k)).collect()
            }
            Flavor::PlanarOperad => vec![],
            Flavor::PlanarCyclic => {
                if s.n > 1 {
                    vec![perm::rotation(s.n, 1)]
                } else {
                    vec![]
                }
            }
        }
    }

    pub fn is_aut(self, s: Sig, p: &[usize]) -> bool {
        if p.len() != s.n || !perm::is_perm(p) {
            return false;
        }
        match self {
            Flavor::Cyclic | Flavor::Modular => true,
            Flavor::Operad | Flavor::Dioperad => (0..s.n).all(|k| (k < s.outs) == (p[k] < s.outs)),
            Flavor::PlanarOperad => p.iter().enumerate().all(|(k, &v)| k == v),
            Flavor::PlanarCyclic => (0..s.n).all(|k| p[k] == (p[0] + k) % s.n),
        }
    }

    /// Whether slot `i` of `a` may be joined to slot `j` of `b` by an edge.
    pub fn graft_valid(self, a: Sig, i: usize, b: Sig, j: usize) -> bool {
        if i >= a.n || j >= b.n {
            return false;
        }
        !self.directed() || self.slot_is_out(a, i) != self.slot_is_out(b, j)
    }

    /// Slot order of the vertex obtained by contracting the edge joining `a.i` and `b.j`:
    /// result slot `r` comes from side `order[r].0` (0 = a, 1 = b), slot `order[r].1`.
    pub fn glue_order(self, a: Sig, i: usize, b: Sig, j: usize) -> (Sig, Vec<(u8, usize)>) {
        debug_assert!(self.graft_valid(a, i, b, j));
        let n = a.n + b.n - 2;
        let g = a.g + b.g;
        let outs = match self {
            Flavor::Operad | Flavor::PlanarOperad => 1,
            Flavor::Dioperad => a.outs + b.outs - 1,
            _ => 0,
        };
        let rest = |side: u8, s: Sig, skip: usize| (0..s.n).filter(move |&k| k != skip).map(move |k| (side, k));
        let order: Vec<(u8, usize)> = match self {
            Flavor::Cyclic | Flavor::Modular => rest(0, a, i).chain(rest(1, b, j)).collect(),
            Flavor::Dioperad => {
                let mut v: Vec<(u8, usize)> = rest(0, a, i).chain(rest(1, b, j)).collect();
                v.sort_by_key(|&(side, k)| {
                    let s = if side == 0 { a } else { b };
                    !self.slot_is_out(s, k)
                });
                v
            }
            Flavor::Operad | Flavor::PlanarOperad => {
                // parent's input receives the child's output
                let (ps, pi, pslot, cs, cside) = if i >= 1 { (0u8, i, a, b, 1u8) } else { (1u8, j, b, a, 0u8) };
                let mut v = vec![(ps, 0)];
                v.extend((1..pi).map(|k| (ps, k)));
                v.extend((1..cs.n).map(|k| (cside, k)));
                v.extend((pi + 1..pslot.n).map(|k| (ps, k)));
                v
            }
            Flavor::PlanarCyclic => {
                let bpart = (j + 1..b.n).chain(0..j).map(|k| (1u8, k));
                if i == 0 {
                    (1..a.n).map(|k| (0u8, k)).chain(bpart).collect()
                } else {
                    (0..i).map(|k| (0u8, k)).chain(bpart).chain((i + 1..a.n).map(|k| (0u8, k))).collect()
                }
            }
        };
        debug_assert_eq!(order.len(), n);
        (Sig { n, g, outs }, order)
    }

    /// Slot order after joining slots `i` and `j` of one vertex (modular only).
    pub fn loop_order(self, a: Sig, i: usize, j: usize) -> (Sig, Vec<usize>) {
        debug_assert!(self.modular() && i != j);
        let order = (0..a.n).filter(|&k| k != i && k != j).collect();
        (Sig { n: a.n - 2, g: a.g + 1, outs: 0 }, order)
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Finite truncation of the signature set; closed under contraction of admissible graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub flavor: Flavor,
    pub max_flags: usize,
    pub max_genus: u32,
    /// Dioperads only: every vertex needs at least one input and one output.
    pub nonempty_io: bool,
    pub max_degree: Option<usize>,
}

impl Window {
    pub fn new(flavor: Flavor, max_flags: usize) -> Window {
        Window { flavor, max_flags, max_genus: 0, nonempty_io: false, max_degree: None }
    }
    pub fn modular(max_genus: u32, max_flags: usize) -> Window {
        Window { flavor: Flavor::Modular, max_flags, max_genus, nonempty_io: false, max_degree: None }
    }
    pub fn with_nonempty_io(mut self) -> Window {
        self.nonempty_io = true;
        self
    }
    pub fn with_max_degree(mut self, d: usize) -> Window {
        self.max_degree = Some(d);
        self
    }

    pub fn allows_vertex(&self, s: Sig) -> bool {
        self.flavor.valid_sig(s) && (!self.nonempty_io || (s.outs >= 1 && s.ins() >= 1))
    }

    pub fn contains(&self, s: Sig) -> bool {
        if !self.allows_vertex(s) {
            return false;
        }
        if self.flavor.modular() {
            s.g <= self.max_genus && s.size() <= 2 * self.max_genus as usize + self.max_flags
        } else {
            s.n <= self.max_flags
        }
    }

    /// All signatures, sorted so that every vertex signature of a graph precedes the graph's own.
    pub fn sigs(&self) -> Vec<Sig> {
        let mut out = Vec::new();
        let nmax = 2 * self.max_genus as usize + self.max_flags;
        for n in 0..=nmax {
            for g in 0..=self.max_genus {
                for outs in 0..=n {
                    let s = Sig { n, g, outs };
                    if self.contains(s) {
                        out.push(s);
                    }
                }
            }
        }
        out.sort_by_key(|s| s.rank_key());
        out
    }

    /// Largest edge count of a stable graph at `s`.
    pub fn top_degree(&self, s: Sig) -> usize {
        let natural = if self.flavor.modular() { (3 * s.g as usize + s.n).saturating_sub(3) } else { s.n - 3 };
        self.max_degree.map_or(natural, |d| d.min(natural))
    }
}
