//! Endomorphism objects built from a finite-dimensional space `A`.

use crate::exactlin::{rat_one, SMat, SVec};
use crate::graphkit::{Flavor, Sig, Window};
use crate::opcore::{ComposeKey, FOpTable, OpError, Rep};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndSpec {
    pub dim_a: usize,
}

impl EndSpec {
    pub fn new(dim_a: usize) -> Result<EndSpec, OpError> {
        if !(1..=3).contains(&dim_a) {
            return Err(OpError::Input(format!("dim A must be between 1 and 3, got {dim_a}")));
        }
        Ok(EndSpec { dim_a })
    }
}

/// Digits of `idx` in base `d`, most significant first.
pub(crate) fn digits(mut idx: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for k in (0..len).rev() {
        out[k] = idx % d;
        idx /= d;
    }
    out
}

pub(crate) fn undigits(ds: &[usize], d: usize) -> usize {
    ds.iter().fold(0, |acc, &x| acc * d + x)
}

/// The tensor power `V^{⊗n}` with slots permuted.
fn tensor_power_rep(flavor: Flavor, s: Sig, d: usize) -> Rep {
    let total = d.pow(s.n as u32);
    Rep::from_fn(flavor, s, total, |p| {
        let cols = (0..total)
            .map(|idx| {
                let old = digits(idx, d, s.n);
                let mut new = vec![0; s.n];
                for k in 0..s.n {
                    new[p[k]] = old[k];
                }
                vec![(undigits(&new, d), rat_one())]
            })
            .collect();
        SMat::from_cols(total, cols)
    })
}

/// Contraction of slot `i` of `x` with slot `j` of `y` by `pair`; result factors follow
/// the glue order of `flavor`.
fn contract(
    flavor: Flavor,
    a: Sig,
    i: usize,
    b: Sig,
    j: usize,
    d: usize,
    pair: impl Fn(usize, usize) -> bool,
) -> SMat {
    let (res, order) = flavor.glue_order(a, i, b, j);
    let (na, nb) = (d.pow(a.n as u32), d.pow(b.n as u32));
    let cols: Vec<SVec> = (0..na * nb)
        .map(|c| {
            let (x, y) = (digits(c / nb, d, a.n), digits(c % nb, d, b.n));
            if !pair(x[i], y[j]) {
                return vec![];
            }
            let out: Vec<usize> = order.iter().map(|&(side, k)| if side == 0 { x[k] } else { y[k] }).collect();
            vec![(undigits(&out, d), rat_one())]
        })
        .collect();
    SMat::from_cols(d.pow(res.n as u32), cols)
}

/// `End_A` as a dioperad: every output slot carries `A`, every input slot `A*`, and
/// composition evaluates the dual basis.
pub fn end_dioperad(spec: EndSpec, window: Window) -> Result<FOpTable, OpError> {
    if window.flavor != Flavor::Dioperad {
        return Err(OpError::Input("End_A is a dioperad".into()));
    }
    let d = spec.dim_a;
    let mut spaces = BTreeMap::new();
    let mut weights = BTreeMap::new();
    for s in window.sigs() {
        let rep = tensor_power_rep(window.flavor, s, d);
        weights.insert(s, vec![0; rep.dim]);
        spaces.insert(s, rep);
    }
    Ok(FOpTable::from_fn(&format!("End_{d}"), window, false, spaces, weights, |key| {
        let ComposeKey::Graft { a, i, b, j } = *key else { unreachable!() };
        contract(Flavor::Dioperad, a, i, b, j, d, |x, y| x == y)
    }))
}

/// Composition of tensors of dual-basis factors for arbitrary biarities, including the
/// unstable ones the window leaves out.
pub fn end_compose(spec: EndSpec, a: Sig, i: usize, b: Sig, j: usize) -> SMat {
    contract(Flavor::Dioperad, a, i, b, j, spec.dim_a, |x, y| x == y)
}

/// Endomorphisms of `A` with the form `<e_x, e_y> = delta_xy`, cyclic or modular; loops
/// contract two slots of one tensor.
pub fn end_with_form(spec: EndSpec, window: Window) -> Result<FOpTable, OpError> {
    if !matches!(window.flavor, Flavor::Cyclic | Flavor::Modular) {
        return Err(OpError::Input("End_A with a form is cyclic or modular".into()));
    }
    let d = spec.dim_a;
    let mut spaces = BTreeMap::new();
    let mut weights = BTreeMap::new();
    for s in window.sigs() {
        let rep = tensor_power_rep(window.flavor, s, d);
        weights.insert(s, vec![0; rep.dim]);
        spaces.insert(s, rep);
    }
    Ok(FOpTable::from_fn(&format!("End_{d}"), window, false, spaces, weights, |key| match *key {
        ComposeKey::Graft { a, i, b, j } => contract(window.flavor, a, i, b, j, d, |x, y| x == y),
        ComposeKey::Loop { a, i, j } => {
            let (res, order) = window.flavor.loop_order(a, i, j);
            let cols = (0..d.pow(a.n as u32))
                .map(|c| {
                    let x = digits(c, d, a.n);
                    if x[i] != x[j] {
                        return vec![];
                    }
                    let out: Vec<usize> = order.iter().map(|&k| x[k]).collect();
                    vec![(undigits(&out, d), rat_one())]
                })
                .collect();
            SMat::from_cols(d.pow(res.n as u32), cols)
        }
    }))
}

/// Cyclic endomorphisms of `d(A) = A ⊕ A*` with `<a + eta, b + xi> = eta(b) + xi(a)`.
/// Basis of `d(A)`: indices `< dim A` are `A`, the rest `A*`.
pub fn doubled_end_cyclic(spec: EndSpec, window: Window) -> Result<FOpTable, OpError> {
    if window.flavor != Flavor::Cyclic {
        return Err(OpError::Input("the doubled endomorphism operad is cyclic".into()));
    }
    let d = spec.dim_a;
    let mut spaces = BTreeMap::new();
    let mut weights = BTreeMap::new();
    for s in window.sigs() {
        let rep = tensor_power_rep(window.flavor, s, 2 * d);
        weights.insert(s, vec![0; rep.dim]);
        spaces.insert(s, rep);
    }
    Ok(FOpTable::from_fn(&format!("End_d({d})"), window, false, spaces, weights, |key| {
        let ComposeKey::Graft { a, i, b, j } = *key else { unreachable!() };
        contract(Flavor::Cyclic, a, i, b, j, 2 * d, |x, y| x + d == y || y + d == x)
    }))
}
