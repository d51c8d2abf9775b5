//! Restriction `r` is both adjoint to `l` on V-modules. For a target vertex `v` and a
//! preimage `w`, `lA(v) ⊇ [A(w) ⊗ k[Aut v]]_{Aut w}` is stored as one copy of `A(w)` per
//! decoration: `[a ⊗ reps[d] ∘ h] = (d, h·a)`.

use super::decor::Decorations;
use super::{FunctorReport, MorphismId, CATALOG};
use crate::exactlin::{rat, rat_frac, SMat, SVec, SvAcc};
use crate::graphkit::perm::{self, Perm};
use crate::graphkit::{Flavor, Sig};
use crate::opcore::{OpError, Rep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct VertexPair {
    pub target: Flavor,
    pub v: Sig,
    pub source: Flavor,
    pub w: Sig,
    pub decos: Decorations,
    aut_v: Vec<Perm>,
    aut_w: Vec<Perm>,
}

impl VertexPair {
    pub fn new(target: Flavor, v: Sig, source: Flavor, w: Sig) -> Result<VertexPair, OpError> {
        if v.n != w.n {
            return Err(OpError::Input("vertices with different slot counts".into()));
        }
        let aut_v = target.aut(v);
        let aut_w = source.aut(w);
        let big: BTreeSet<&Perm> = aut_v.iter().collect();
        if aut_w.iter().any(|h| !big.contains(h)) {
            return Err(OpError::Input("Aut(w) is not a subgroup of Aut(v)".into()));
        }
        let decos = Decorations::from_groups(&aut_v, &aut_w);
        Ok(VertexPair { target, v, source, w, decos, aut_v, aut_w })
    }

    pub fn of(m: MorphismId, w: Sig) -> VertexPair {
        VertexPair::new(m.target(), m.sig_map(w), m.source(), w).expect("catalog groups nest")
    }

    pub fn aut_v(&self) -> &[Perm] {
        &self.aut_v
    }

    pub fn aut_w(&self) -> &[Perm] {
        &self.aut_w
    }

    /// `l(A)(v)` for a representation `a` of `Aut(w)`.
    pub fn lifted(&self, a: &Rep) -> Rep {
        let (nd, da) = (self.decos.len(), a.dim);
        Rep::from_fn(self.target, self.v, nd * da, |pi| {
            let mut cols: Vec<SVec> = vec![Vec::new(); nd * da];
            for d in 0..nd {
                let (d2, h) = self.decos.locate(&perm::compose(pi, &self.decos.reps[d]));
                for x in 0..da {
                    cols[d * da + x] = a.rho(h).cols[x].iter().map(|(i, c)| (d2 * da + i, c.clone())).collect();
                }
            }
            SMat::from_cols(nd * da, cols)
        })
    }

    /// `r(E)(w)` for a representation `e` of `Aut(v)`.
    pub fn restricted(&self, e: &Rep) -> Rep {
        e.pull_back(self.source, self.w, |p| p.clone())
    }
}

fn embed_block(m: &SMat, d: usize, width: usize, nrows: usize) -> SMat {
    let cols = m.cols.iter().map(|c| c.iter().map(|(i, x)| (d * width + i, x.clone())).collect()).collect();
    SMat::from_cols(nrows, cols)
}

fn block_rows(m: &SMat, d: usize, width: usize) -> SMat {
    let rows: Vec<usize> = (d * width..(d + 1) * width).collect();
    m.select_rows(&rows)
}

fn intertwines(f: &SMat, before: &SMat, after: &SMat) -> bool {
    f.mul(before).sub(&after.mul(f)).is_zero()
}

/// `psi_w(x) = 1/|Aut w| sum_{sigma in Aut v} [lambda(sigma x) ⊗ sigma^-1]`.
pub fn psi_from_lambda(pair: &VertexPair, e: &Rep, a: &Rep, lambda: &SMat) -> Result<SMat, OpError> {
    if (lambda.nrows, lambda.ncols) != (a.dim, e.dim) {
        return Err(OpError::Input("lambda has the wrong shape".into()));
    }
    for h in pair.source.aut_gens(pair.w) {
        if !intertwines(lambda, e.rho(&h), a.rho(&h)) {
            return Err(OpError::Input("lambda is not Aut(w)-equivariant".into()));
        }
    }
    let (nd, da) = (pair.decos.len(), a.dim);
    let mut total = SMat::zeros(nd * da, e.dim);
    for sigma in &pair.aut_v {
        let (d, h) = pair.decos.locate(&perm::inverse(sigma));
        let term = a.rho(h).mul(lambda).mul(e.rho(sigma));
        total = total.add(&embed_block(&term, d, da, nd * da));
    }
    Ok(total.scale(&rat_frac(1, pair.aut_w.len() as i64)))
}

/// Writing `psi(x) = [sum_g y_g ⊗ g]`, `lambda(x) = sum_{h in Aut w} h · y_h`.
pub fn lambda_from_psi(pair: &VertexPair, e: &Rep, a: &Rep, psi: &SMat) -> Result<SMat, OpError> {
    let (nd, da) = (pair.decos.len(), a.dim);
    if (psi.nrows, psi.ncols) != (nd * da, e.dim) {
        return Err(OpError::Input("psi has the wrong shape".into()));
    }
    let la = pair.lifted(a);
    for p in pair.target.aut_gens(pair.v) {
        if !intertwines(psi, e.rho(&p), la.rho(&p)) {
            return Err(OpError::Input("psi is not Aut(v)-equivariant".into()));
        }
    }
    // y_g is the block of decoration d for g = reps[d] and zero otherwise
    let mut total = SMat::zeros(da, e.dim);
    for h in &pair.aut_w {
        if let Some(d) = pair.decos.reps.iter().position(|r| r == h) {
            total = total.add(&a.rho(h).mul(&block_rows(psi, d, da)));
        }
    }
    Ok(total)
}

/// `1/|G| sum_g rho_out(g) m rho_in(g)^-1` over the listed group: an equivariant map.
pub fn equivariant_average(group: &[Perm], rin: &Rep, rout: &Rep, m: &SMat) -> SMat {
    let mut total = SMat::zeros(rout.dim, rin.dim);
    for g in group {
        total = total.add(&rout.rho(g).mul(m).mul(rin.rho(&perm::inverse(g))));
    }
    total.scale(&rat_frac(1, group.len() as i64))
}

/// Triangle identities of `r ⊣ l` at one vertex pair: `eps_{rE} ∘ r(eta_E) = id` and
/// `l(eps_A) ∘ eta_{lA} = id`, with unit and counit the adjoint transposes of identities.
pub fn vertex_triangles(pair: &VertexPair, e: &Rep, a: &Rep) -> Result<(bool, bool), OpError> {
    let re = pair.restricted(e);
    let lre = pair.lifted(&re);
    let eta_e = psi_from_lambda(pair, e, &re, &SMat::identity(e.dim))?;
    let eps_re = lambda_from_psi(pair, &lre, &re, &SMat::identity(lre.dim))?;
    let first = eps_re.mul(&eta_e).sub(&SMat::identity(e.dim)).is_zero();

    let la = pair.lifted(a);
    let rla = pair.restricted(&la);
    let eta_la = psi_from_lambda(pair, &la, &rla, &SMat::identity(la.dim))?;
    let eps_a = lambda_from_psi(pair, &la, a, &SMat::identity(la.dim))?;
    let nd = pair.decos.len();
    let mut l_eps = SMat::zeros(nd * a.dim, nd * rla.dim);
    for d in 0..nd {
        let cols: Vec<SVec> = eps_a
            .cols
            .iter()
            .map(|c| {
                let mut acc = SvAcc::new();
                for (i, x) in c {
                    acc.add(d * a.dim + i, x.clone());
                }
                acc.finish()
            })
            .collect();
        for (k, c) in cols.into_iter().enumerate() {
            l_eps.cols[d * rla.dim + k] = c;
        }
    }
    let second = l_eps.mul(&eta_la).sub(&SMat::identity(la.dim)).is_zero();
    Ok((first, second))
}

/// Vertex pairs of the catalog with `|Aut v| <= max_aut`, on at most four slots.
pub fn small_pairs(max_aut: usize) -> Vec<(MorphismId, VertexPair)> {
    let mut morphisms = CATALOG.to_vec();
    morphisms.push(MorphismId::PlanarOperadToCyclic);
    let mut out = Vec::new();
    for m in morphisms {
        let candidates: Vec<Sig> = match m.source() {
            Flavor::Operad | Flavor::PlanarOperad => (1..=3).map(Sig::operad).collect(),
            Flavor::Dioperad => (0..=4).flat_map(|i| (0..=4 - i).map(move |o| Sig::di(i, o))).collect(),
            Flavor::Modular => vec![],
            _ => (3..=4).map(Sig::cyc).collect(),
        };
        for w in candidates {
            if !m.source().valid_sig(w) || m.target().aut(m.sig_map(w)).len() > max_aut {
                continue;
            }
            out.push((m, VertexPair::of(m, w)));
        }
    }
    out
}

/// A random representation: a direct sum of one or two pieces among trivial, sign, the
/// slot permutation representation and its sign twist.
fn random_rep(rng: &mut ChaCha8Rng, flavor: Flavor, s: Sig) -> Rep {
    let piece = |kind: u8| {
        Rep::from_fn(flavor, s, if kind < 2 { 1 } else { s.n }, |p| {
            let sign = if kind % 2 == 1 { perm::sign(p) as i64 } else { 1 };
            if kind < 2 {
                SMat::from_cols(1, vec![vec![(0, rat(sign))]])
            } else {
                SMat::from_cols(s.n, (0..s.n).map(|k| vec![(p[k], rat(sign))]).collect())
            }
        })
    };
    let mut rep = piece(rng.gen_range(0..4));
    if rng.gen_bool(0.5) {
        rep = rep.direct_sum(&piece(rng.gen_range(0..4)));
    }
    rep
}

fn random_matrix(rng: &mut ChaCha8Rng, nrows: usize, ncols: usize) -> SMat {
    let cols = (0..ncols)
        .map(|_| (0..nrows).filter_map(|i| Some((i, rat(rng.gen_range(-2..=2)))).filter(|(_, x)| *x != rat(0))).collect())
        .collect();
    SMat::from_cols(nrows, cols)
}

/// Round trips `lambda -> psi -> lambda` and `psi -> lambda -> psi` on random equivariant
/// maps between random representations, over the pairs of [`small_pairs`].
pub fn ambidex_check(instances: usize, max_aut: usize, seed: u64) -> Result<FunctorReport, OpError> {
    let pairs = small_pairs(max_aut);
    if pairs.is_empty() {
        return Err(OpError::Input(format!("no vertex pair with |Aut v| <= {max_aut}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report =
        FunctorReport::new(&format!("ambidexterity, {instances} instances, seed {seed}"), &["morphism", "w", "|Aut v|", "dim E", "dim A", "nonzero"]);
    let mut nonzero = 0;
    for _ in 0..instances {
        let (m, pair) = &pairs[rng.gen_range(0..pairs.len())];
        let e = random_rep(&mut rng, pair.target, pair.v);
        let a = random_rep(&mut rng, pair.source, pair.w);
        let re = pair.restricted(&e);
        let lambda = equivariant_average(pair.aut_w(), &re, &a, &random_matrix(&mut rng, a.dim, e.dim));
        let psi = psi_from_lambda(pair, &e, &a, &lambda)?;
        report.verdict("lambda -> psi -> lambda", lambda_from_psi(pair, &e, &a, &psi)? == lambda);

        let la = pair.lifted(&a);
        let psi2 = equivariant_average(pair.aut_v(), &e, &la, &random_matrix(&mut rng, la.dim, e.dim));
        let lambda2 = lambda_from_psi(pair, &e, &a, &psi2)?;
        report.verdict("psi -> lambda -> psi", psi_from_lambda(pair, &e, &a, &lambda2)? == psi2);

        let live = !lambda.is_zero() || !psi2.is_zero();
        nonzero += live as usize;
        report.row(vec![
            m.name().to_string(),
            pair.source.fmt_sig(pair.w),
            pair.aut_v().len().to_string(),
            e.dim.to_string(),
            a.dim.to_string(),
            live.to_string(),
        ]);
    }
    report.verdict("some instance is nonzero", nonzero > 0);
    Ok(report)
}
