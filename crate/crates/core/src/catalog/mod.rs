//! Built-in operadic objects.

mod kc;
pub(crate) mod endo;

pub use endo::{doubled_end_cyclic, end_compose, end_dioperad, end_with_form, EndSpec};
pub use kc::{kc_as_fop, kc_check, kc_compose, kc_sig, kc_unit, KcElement};

use crate::exactlin::{rat, rat_one, Echelon, SMat, SVec, SvAcc};
use crate::graphkit::perm::{self, Perm};
use crate::graphkit::{Flavor, Sig, Window};
use crate::opcore::{weight_one_range, FOpTable, FreeOp, OpError, QuadraticDatum, Relations, Rep, VModule};
use std::collections::BTreeMap;

/// Names accepted by [`builtin_datum`].
pub const BUILTINS: [&str; 5] = ["Com", "Lie", "As", "Nil", "BiLie"];

/// Names accepted by [`builtin_table`] besides [`BUILTINS`].
pub const TABLES: [&str; 4] = ["I", "End", "DoubledEnd", "KC"];

/// Image of the projector `(1/|G|) sum chi(g) g` on the weight-1 part of `free` at `s`.
pub fn isotypic_weight_one(free: &FreeOp, s: Sig, chi: impl Fn(&Perm) -> i64) -> Vec<SVec> {
    let range = weight_one_range(free, s);
    let group = free.flavor.aut(s);
    let inv = rat_one() / rat(group.len() as i64);
    let mut e = Echelon::new(free.dim(s));
    for i in range {
        let mut acc = SvAcc::new();
        for g in &group {
            acc.add_vec(&free.act(s, g, &vec![(i, rat_one())]), &(rat(chi(g)) * &inv));
        }
        e.insert(&acc.finish());
    }
    e.basis()
}

/// Weight-1 vectors killed by composing with the given linear functional-valued map;
/// `compose(k)` gives the image of coordinate `k` in some target space.
fn kernel_of_composition(free: &FreeOp, s: Sig, target_dim: usize, compose: impl Fn(usize) -> SVec) -> Vec<SVec> {
    let range = weight_one_range(free, s);
    let cols: Vec<SVec> = range.clone().map(compose).collect();
    let m = SMat::from_cols(target_dim, cols);
    crate::exactlin::kernel(&m).into_iter().map(|v| v.into_iter().map(|(i, c)| (i + range.start, c)).collect()).collect()
}

fn trivial_gens(flavor: Flavor, s: Sig) -> VModule {
    let mut m = VModule::new();
    m.insert(Rep::trivial(flavor, s, 1));
    m
}

/// Commutative cyclic operad: trivial generator at ((3)), relations the differences of
/// the three trees at ((4)).
pub fn com(window: Window) -> QuadraticDatum {
    let gens = trivial_gens(Flavor::Cyclic, Sig::cyc(3));
    let mut q = QuadraticDatum { name: "Com".into(), gens, rels: Relations::new(), odd: false, window };
    let free = q.weight_one();
    let s = Sig::cyc(4);
    if window.contains(s) {
        // every tree has a trivial automorphism group, so coordinates are the trees
        // themselves and the differences are the kernel of the coordinate sum
        q.rels.insert(s, kernel_of_composition(&free, s, 1, |_| vec![(0, rat_one())]));
    }
    q
}

/// Lie cyclic operad: sign generator at ((3)), relation the one-dimensional Jacobi line.
pub fn lie(window: Window) -> QuadraticDatum {
    let mut gens = VModule::new();
    gens.insert(Rep::sign(Flavor::Cyclic, Sig::cyc(3)));
    let mut q = QuadraticDatum { name: "Lie".into(), gens, rels: Relations::new(), odd: false, window };
    let free = q.weight_one();
    let s = Sig::cyc(4);
    if window.contains(s) {
        let sgn = isotypic_weight_one(&free, s, |g| perm::sign(g) as i64);
        let triv = isotypic_weight_one(&free, s, |_| 1);
        let line = if sgn.len() == 1 { sgn } else { triv };
        q.rels.insert(s, line);
    }
    q
}

/// Cyclic orders of `0..n` as sequences starting at 0.
pub fn cyclic_orders(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![];
    }
    perm::permutations_of(&(1..n).collect::<Vec<_>>())
        .into_iter()
        .map(|rest| std::iter::once(0).chain(rest).collect())
        .collect()
}

/// Normalizes a cyclic sequence to start at its minimum.
fn normalize_cycle(c: &[usize]) -> Vec<usize> {
    let k = c.iter().enumerate().min_by_key(|(_, &x)| x).map(|(k, _)| k).unwrap_or(0);
    c[k..].iter().chain(&c[..k]).copied().collect()
}

/// The permutation representation of the symmetric group on cyclic orders.
pub fn cyclic_order_rep(s: Sig) -> Rep {
    let orders = cyclic_orders(s.n);
    let index: BTreeMap<Vec<usize>, usize> = orders.iter().cloned().enumerate().map(|(k, o)| (o, k)).collect();
    Rep::from_fn(Flavor::Cyclic, s, orders.len(), |p| {
        let cols = orders
            .iter()
            .map(|o| {
                let img: Vec<usize> = o.iter().map(|&x| p[x]).collect();
                vec![(index[&normalize_cycle(&img)], rat_one())]
            })
            .collect();
        SMat::from_cols(orders.len(), cols)
    })
}

/// Associative cyclic operad: cyclic orders at ((3)); relations the kernel of composing
/// cyclic orders at ((4)).
pub fn ass(window: Window) -> QuadraticDatum {
    let s3 = Sig::cyc(3);
    let mut gens = VModule::new();
    gens.insert(cyclic_order_rep(s3));
    let mut q = QuadraticDatum { name: "As".into(), gens, rels: Relations::new(), odd: false, window };
    let free = q.weight_one();
    let s = Sig::cyc(4);
    if window.contains(s) {
        let orders3 = cyclic_orders(3);
        let orders4 = cyclic_orders(4);
        let index4: BTreeMap<Vec<usize>, usize> = orders4.iter().cloned().enumerate().map(|(k, o)| (o, k)).collect();
        let sp = free.space(s);
        let rels = kernel_of_composition(&free, s, orders4.len(), |i| {
            let (b, local) = sp.by_block(&vec![(i, rat_one())]).pop().unwrap();
            let c = &sp.blocks[b];
            let g = &c.class.graph;
            let mut acc = SvAcc::new();
            for (idx, x) in sp.lift_local(b, &local) {
                let multi = c.shape.split(idx);
                // cyclic order of each vertex as a sequence of flags
                let cyc: Vec<Vec<usize>> =
                    (0..2).map(|v| orders3[multi[v]].iter().map(|&k| g.vflags[v][k]).collect()).collect();
                let (f, h) = c.class.edges[0];
                let (f, h) = if g.vflags[0].contains(&f) { (f, h) } else { (h, f) };
                let pu = cyc[0].iter().position(|&y| y == f).unwrap();
                let pw = cyc[1].iter().position(|&y| y == h).unwrap();
                let mut seq: Vec<usize> = Vec::new();
                for k in 1..3 {
                    seq.push(cyc[0][(pu + k) % 3]);
                }
                for k in 1..3 {
                    seq.push(cyc[1][(pw + k) % 3]);
                }
                let legs: Vec<usize> = seq.iter().map(|&fl| g.leg[fl]).collect();
                acc.add(index4[&normalize_cycle(&legs)], x);
            }
            acc.finish()
        });
        q.rels.insert(s, rels);
    }
    q
}

/// Commutative operad: trivial binary generator, relations the differences of the three
/// trees at arity 3.
pub fn com_operad(window: Window) -> QuadraticDatum {
    let gens = trivial_gens(Flavor::Operad, Sig::operad(2));
    let mut q = QuadraticDatum { name: "Com".into(), gens, rels: Relations::new(), odd: false, window };
    let free = q.weight_one();
    let s = Sig::operad(3);
    if window.contains(s) {
        q.rels.insert(s, kernel_of_composition(&free, s, 1, |_| vec![(0, rat_one())]));
    }
    q
}

/// Lie bialgebras as the exceptional pullback of cyclic Lie along forgetting directions.
pub fn bilie(window: Window) -> QuadraticDatum {
    let cyc = lie(Window::new(Flavor::Cyclic, window.max_flags));
    let mut q = crate::sixfun::shriek_pullback(crate::sixfun::MorphismId::DioperadToCyclic, &cyc, &window);
    q.name = "BiLie".into();
    q
}

/// Nilpotent non-symmetric operad: one binary generator, every weight-1 composite a relation.
pub fn nil(window: Window) -> QuadraticDatum {
    let gens = trivial_gens(Flavor::PlanarOperad, Sig::operad(2));
    let mut q = QuadraticDatum { name: "Nil".into(), gens, rels: Relations::new(), odd: false, window };
    let free = q.weight_one();
    let s = Sig::operad(3);
    if window.contains(s) {
        q.rels.insert(s, weight_one_range(&free, s).map(|i| vec![(i, rat_one())]).collect());
    }
    q
}

/// Quadratic data of the catalog, by name.
pub fn builtin_datum(name: &str, window: Window) -> Result<QuadraticDatum, OpError> {
    let need = |f: Flavor| {
        if window.flavor == f {
            Ok(())
        } else {
            Err(OpError::Input(format!("{name} lives in the {} flavor", f.name())))
        }
    };
    match name {
        "Com" => need(Flavor::Cyclic).map(|_| com(window)),
        "Lie" => need(Flavor::Cyclic).map(|_| lie(window)),
        "As" => need(Flavor::Cyclic).map(|_| ass(window)),
        "Nil" => need(Flavor::PlanarOperad).map(|_| nil(window)),
        "BiLie" => need(Flavor::Dioperad).map(|_| bilie(window)),
        _ => Err(OpError::Input(format!("unknown built-in {name}"))),
    }
}

/// `I`: one dimension with trivial action at every signature of the window and all
/// compositions zero.
pub fn unit_fop(window: Window) -> FOpTable {
    let spaces: BTreeMap<Sig, Rep> = window.sigs().into_iter().map(|s| (s, Rep::trivial(window.flavor, s, 1))).collect();
    let weights = spaces.keys().map(|&s| (s, vec![0])).collect();
    FOpTable::from_fn("I", window, false, spaces, weights, |_| SMat::zeros(1, 1))
}

/// A catalog object as a table. `End` takes `dim_a` and picks the flavor's endomorphism
/// object; quadratic data are presented.
pub fn builtin_table(name: &str, window: Window, dim_a: usize) -> Result<FOpTable, OpError> {
    match name {
        "I" => Ok(unit_fop(window)),
        "KC" => kc_as_fop(window),
        "DoubledEnd" => doubled_end_cyclic(EndSpec::new(dim_a)?, window),
        "End" => {
            let spec = EndSpec::new(dim_a)?;
            match window.flavor {
                Flavor::Dioperad => end_dioperad(spec, window),
                _ => end_with_form(spec, window),
            }
        }
        _ => Ok(builtin_datum(name, window)?.presented()?.0),
    }
}
