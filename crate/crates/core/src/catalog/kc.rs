//! The non-symmetric cyclic operad `k[C_{*+1}]`: arity `n` is the group algebra of the
//! cyclic group of order `n + 1`.
//!
//! `tau_n^r` is a corolla on flags `0..=n` with flag `r` marked. Gluing a marked flag to
//! an unmarked one leaves the other marked flag as the mark of the result; any other
//! meeting gives zero.

use crate::exactlin::{rat_one, SMat};
use crate::graphkit::{Flavor, Sig, Window};
use crate::opcore::{FOpTable, OpError, Rep};
use crate::opcore::ComposeKey;
use crate::sixfun::FunctorReport;
use std::collections::BTreeMap;

/// `tau_n^r` with `0 <= r <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KcElement {
    pub arity: usize,
    pub power: usize,
}

impl KcElement {
    pub fn new(arity: usize, power: usize) -> Result<KcElement, OpError> {
        if power > arity {
            return Err(OpError::Input(format!("power {power} out of range for arity {arity}")));
        }
        Ok(KcElement { arity, power })
    }
}

/// `tau_n^r o_i tau_m^s`, or `None` when the composite vanishes.
pub fn kc_compose(n: usize, r: usize, i: usize, m: usize, s: usize) -> Result<Option<KcElement>, OpError> {
    if i == 0 || i > n {
        return Err(OpError::Input(format!("slot {i} out of range for arity {n}")));
    }
    KcElement::new(n, r)?;
    KcElement::new(m, s)?;
    let arity = n + m - 1;
    let power = if s == 0 && r < i {
        r
    } else if s == 0 && r > i {
        r + m - 1
    } else if s != 0 && r == i {
        r + s - 1
    } else {
        return Ok(None);
    };
    Ok(Some(KcElement { arity, power }))
}

/// The arity-1 unit `1_1 + tau_1` as coefficients on `tau_1^0, tau_1^1`.
pub fn kc_unit() -> [KcElement; 2] {
    [KcElement { arity: 1, power: 0 }, KcElement { arity: 1, power: 1 }]
}

/// The planar-cyclic table: basis `e_r` at `((n))` is the mark on slot `r`; rotations move
/// the mark.
pub fn kc_as_fop(window: Window) -> Result<FOpTable, OpError> {
    if window.flavor != Flavor::PlanarCyclic {
        return Err(OpError::Input("k[C] is built in the planar-cyclic flavor".into()));
    }
    let mut spaces = BTreeMap::new();
    let mut weights = BTreeMap::new();
    for s in window.sigs() {
        let rep = Rep::from_fn(window.flavor, s, s.n, |p| {
            SMat::from_cols(s.n, (0..s.n).map(|r| vec![(p[r], rat_one())]).collect())
        });
        spaces.insert(s, rep);
        weights.insert(s, vec![0; s.n]);
    }
    Ok(FOpTable::from_fn("k[C]", window, false, spaces, weights, |key| {
        let ComposeKey::Graft { a, i, b, j } = *key else { unreachable!("no loops in planar cyclic") };
        let (res, order) = window.flavor.glue_order(a, i, b, j);
        let cols = (0..a.n * b.n)
            .map(|c| {
                let (r, s) = (c / b.n, c % b.n);
                let mark = match (r == i, s == j) {
                    (true, false) => (1u8, s),
                    (false, true) => (0u8, r),
                    _ => return vec![],
                };
                vec![(order.iter().position(|&x| x == mark).unwrap(), rat_one())]
            })
            .collect();
        SMat::from_cols(res.n, cols)
    }))
}

/// Arity-`n` signature of the planar-cyclic table.
pub fn kc_sig(arity: usize) -> Sig {
    Sig::cyc(arity + 1)
}

type Comb = BTreeMap<KcElement, i64>;

/// Gluing picture: flags of `tau_n^r` are `(0, k)` for `k in 0..=n`, those of `tau_m^s`
/// are `(1, k)`; `o_i` glues `(1, 0)` to `(0, i)` and lists the remaining flags with
/// root first.
fn glued_flags(n: usize, i: usize, m: usize) -> Vec<(u8, usize)> {
    let mut out: Vec<(u8, usize)> = (0..i).map(|k| (0, k)).collect();
    out.extend((1..=m).map(|k| (1, k)));
    out.extend((i + 1..=n).map(|k| (0, k)));
    out
}

fn diagram_compose(a: KcElement, i: usize, b: KcElement) -> Option<KcElement> {
    let met_green = [a.power == i, b.power == 0];
    if met_green[0] == met_green[1] {
        return None;
    }
    let green = if met_green[0] { (1u8, b.power) } else { (0u8, a.power) };
    let flags = glued_flags(a.arity, i, b.arity);
    Some(KcElement { arity: flags.len() - 1, power: flags.iter().position(|&f| f == green).unwrap() })
}

fn compose_comb(x: &Comb, i: usize, y: &Comb) -> Comb {
    let mut out = Comb::new();
    for (a, ca) in x {
        for (b, cb) in y {
            if let Some(c) = kc_compose(a.arity, a.power, i, b.arity, b.power).expect("in range") {
                *out.entry(c).or_default() += ca * cb;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn single(e: KcElement) -> Comb {
    Comb::from([(e, 1)])
}

fn elements(max_arity: usize) -> Vec<KcElement> {
    (1..=max_arity).flat_map(|n| (0..=n).map(move |r| KcElement { arity: n, power: r })).collect()
}

/// Case table against the gluing picture, both associativity axioms and the two-sided
/// unit `1_1 + tau_1`, exhaustively for arities up to `max_arity`; the planar-cyclic
/// table is checked for equivariance and associativity in the same range.
pub fn kc_check(max_arity: usize) -> Result<FunctorReport, OpError> {
    let mut report = FunctorReport::new(&format!("k[C] up to arity {max_arity}"), &["law", "instances", "failures"]);
    let all = elements(max_arity);
    let row = |report: &mut FunctorReport, law: &str, results: Vec<bool>| {
        let bad = results.iter().filter(|&&ok| !ok).count();
        report.row(vec![law.to_string(), results.len().to_string(), bad.to_string()]);
        report.verdict(law, bad == 0);
    };

    let mut cases = Vec::new();
    for a in &all {
        for i in 1..=a.arity {
            for b in &all {
                cases.push(kc_compose(a.arity, a.power, i, b.arity, b.power)? == diagram_compose(*a, i, *b));
            }
        }
    }
    row(&mut report, "case table", cases);

    let (mut seq, mut par) = (Vec::new(), Vec::new());
    for a in &all {
        for b in &all {
            for c in &all {
                let (x, y, z) = (single(*a), single(*b), single(*c));
                for i in 1..=a.arity {
                    for j in 1..=b.arity {
                        let lhs = compose_comb(&compose_comb(&x, i, &y), i + j - 1, &z);
                        let rhs = compose_comb(&x, i, &compose_comb(&y, j, &z));
                        seq.push(lhs == rhs);
                    }
                    for j in i + 1..=a.arity {
                        let lhs = compose_comb(&compose_comb(&x, i, &y), j + b.arity - 1, &z);
                        let rhs = compose_comb(&compose_comb(&x, j, &z), i, &y);
                        par.push(lhs == rhs);
                    }
                }
            }
        }
    }
    row(&mut report, "sequential associativity", seq);
    row(&mut report, "parallel associativity", par);

    let unit: Comb = kc_unit().into_iter().map(|e| (e, 1)).collect();
    let mut units = Vec::new();
    for a in all.iter().filter(|a| a.arity <= 3) {
        let x = single(*a);
        units.push(compose_comb(&unit, 1, &x) == x);
        for i in 1..=a.arity {
            units.push(compose_comb(&x, i, &unit) == x);
        }
    }
    row(&mut report, "unit", units);

    let table = kc_as_fop(Window::new(Flavor::PlanarCyclic, max_arity + 1))?;
    let ok = table.check().is_ok();
    report.row(vec!["planar-cyclic table".into(), table.compose.len().to_string(), (!ok as usize).to_string()]);
    report.verdict("planar-cyclic table", ok);
    Ok(report)
}
