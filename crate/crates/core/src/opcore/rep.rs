use crate::exactlin::{rat, LinError, SMat, SvAcc};
use crate::graphkit::perm::{self, Perm};
use crate::graphkit::{Flavor, Sig};
use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

/// A finite-dimensional representation of the symmetry group of one signature.
/// `rho(p)` transports along "slot k is renamed p[k]".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub flavor: Flavor,
    pub sig: Sig,
    pub dim: usize,
    mats: Arc<BTreeMap<Perm, SMat>>,
}

impl Rep {
    pub fn from_fn(flavor: Flavor, sig: Sig, dim: usize, f: impl Fn(&Perm) -> SMat) -> Rep {
        let mats = flavor.aut(sig).into_iter().map(|p| {
            let m = f(&p);
            debug_assert_eq!((m.nrows, m.ncols), (dim, dim));
            (p, m)
        });
        Rep { flavor, sig, dim, mats: Arc::new(mats.collect()) }
    }

    pub fn trivial(flavor: Flavor, sig: Sig, dim: usize) -> Rep {
        Rep::from_fn(flavor, sig, dim, |_| SMat::identity(dim))
    }

    pub fn sign(flavor: Flavor, sig: Sig) -> Rep {
        Rep::from_fn(flavor, sig, 1, |p| SMat::from_cols(1, vec![vec![(0, rat(perm::sign(p) as i64))]]))
    }

    pub fn zero(flavor: Flavor, sig: Sig) -> Rep {
        Rep::trivial(flavor, sig, 0)
    }

    /// Closes matrices on a generating set of the symmetry group under products.
    pub fn from_generators(flavor: Flavor, sig: Sig, dim: usize, gens: &[(Perm, SMat)]) -> Result<Rep, LinError> {
        let mut mats: BTreeMap<Perm, SMat> = BTreeMap::new();
        mats.insert(perm::identity(sig.n), SMat::identity(dim));
        let mut queue: VecDeque<Perm> = VecDeque::from([perm::identity(sig.n)]);
        while let Some(p) = queue.pop_front() {
            for (g, mg) in gens {
                if !flavor.is_aut(sig, g) {
                    return Err(LinError::MalformedAction("generator outside the symmetry group".into()));
                }
                let q = perm::compose(g, &p);
                let mq = mg.mul(&mats[&p]);
                match mats.get(&q) {
                    Some(existing) => {
                        if *existing != mq {
                            return Err(LinError::MalformedAction("generator matrices violate a group relation".into()));
                        }
                    }
                    None => {
                        mats.insert(q.clone(), mq);
                        queue.push_back(q);
                    }
                }
            }
        }
        if mats.len() != flavor.aut(sig).len() {
            return Err(LinError::MalformedAction("generators do not generate the symmetry group".into()));
        }
        Ok(Rep { flavor, sig, dim, mats: Arc::new(mats) })
    }

    /// Monomial representation from signed permutations of the basis.
    pub fn from_signed_perms(flavor: Flavor, sig: Sig, dim: usize, gens: &[(Perm, Vec<usize>, Vec<i8>)]) -> Result<Rep, LinError> {
        let g: Vec<(Perm, SMat)> = gens
            .iter()
            .map(|(p, img, sg)| {
                let cols = (0..dim).map(|i| vec![(img[i], rat(sg[i] as i64))]).collect();
                (p.clone(), SMat::from_cols(dim, cols))
            })
            .collect();
        Rep::from_generators(flavor, sig, dim, &g)
    }

    pub fn rho(&self, p: &[usize]) -> &SMat {
        self.mats.get(p).unwrap_or_else(|| panic!("{p:?} is not a symmetry of {:?}", self.sig))
    }

    pub fn elements(&self) -> impl Iterator<Item = (&Perm, &SMat)> {
        self.mats.iter()
    }

    pub fn group_order(&self) -> usize {
        self.mats.len()
    }

    /// `rho*(p) = rho(p^-1)^T`.
    pub fn dual(&self) -> Rep {
        let mats = self.mats.keys().map(|p| (p.clone(), self.rho(&perm::inverse(p)).transpose())).collect();
        Rep { flavor: self.flavor, sig: self.sig, dim: self.dim, mats: Arc::new(mats) }
    }

    pub fn tensor(&self, other: &Rep) -> Rep {
        let mats = self.mats.iter().map(|(p, m)| (p.clone(), m.kron(other.rho(p)))).collect();
        Rep { flavor: self.flavor, sig: self.sig, dim: self.dim * other.dim, mats: Arc::new(mats) }
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        let mats = self.mats.iter().map(|(p, m)| (p.clone(), m.direct_sum(other.rho(p)))).collect();
        Rep { flavor: self.flavor, sig: self.sig, dim: self.dim + other.dim, mats: Arc::new(mats) }
    }

    /// Homomorphism check against a generating set: `rho(g p) = rho(g) rho(p)`.
    pub fn validate(&self) -> Result<(), LinError> {
        if self.mats.len() != self.flavor.aut(self.sig).len() {
            return Err(LinError::MalformedAction("missing group elements".into()));
        }
        for g in self.flavor.aut_gens(self.sig) {
            let mg = self.rho(&g);
            for (p, mp) in self.mats.iter() {
                if *self.rho(&perm::compose(&g, p)) != mg.mul(mp) {
                    return Err(LinError::MalformedAction("not a homomorphism".into()));
                }
            }
        }
        Ok(())
    }

    /// Restriction along a group homomorphism given on slot permutations:
    /// the new rep at `sig` (of `flavor`) acts by `self.rho(conj(p))`.
    pub fn pull_back(&self, flavor: Flavor, sig: Sig, conj: impl Fn(&Perm) -> Perm) -> Rep {
        let dim = self.dim;
        Rep::from_fn(flavor, sig, dim, |p| self.rho(&conj(p)).clone())
    }

    /// Coinvariant-style averaging operator `(1/|G|) sum rho(g)`.
    pub fn averaging(&self) -> SMat {
        let inv = crate::exactlin::rat_frac(1, self.group_order() as i64);
        let cols = (0..self.dim)
            .map(|c| {
                let mut acc = SvAcc::new();
                for m in self.mats.values() {
                    acc.add_vec(&m.cols[c], &inv);
                }
                acc.finish()
            })
            .collect();
        SMat::from_cols(self.dim, cols)
    }
}

/// A V-module: one representation per signature; absent signatures are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VModule {
    pub reps: BTreeMap<Sig, Rep>,
}

impl VModule {
    pub fn new() -> VModule {
        VModule::default()
    }

    pub fn insert(&mut self, rep: Rep) {
        if rep.dim > 0 {
            self.reps.insert(rep.sig, rep);
        }
    }

    pub fn get(&self, s: Sig) -> Option<&Rep> {
        self.reps.get(&s).filter(|r| r.dim > 0)
    }

    pub fn dim(&self, s: Sig) -> usize {
        self.get(s).map_or(0, |r| r.dim)
    }

    pub fn dual(&self) -> VModule {
        VModule { reps: self.reps.iter().map(|(s, r)| (*s, r.dual())).collect() }
    }
}
