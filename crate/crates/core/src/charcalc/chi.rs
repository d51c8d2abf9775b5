use super::poly::ValencePoly;
use super::series::p_polynomial;
use super::CalcError;
use crate::exactlin::{factorial, rat, serde_rat, Rat};
use crate::graphkit::{Flavor, Sig, VertexRule, Window};
use crate::opcore::{FreeSpace, Rep, VModule};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A monomial `prod_{i in J} v_i` is replaced by `sum_{i in J} weight(i)`.
#[derive(Clone, Copy, Debug)]
pub struct SubstitutionRule {
    pub name: &'static str,
    pub weight: fn(u32) -> Rat,
}

fn pow2(e: i64) -> Rat {
    if e >= 0 {
        Rat::from_integer(num_bigint::BigInt::one() << e as usize)
    } else {
        Rat::one() / Rat::from_integer(num_bigint::BigInt::one() << (-e) as usize)
    }
}

impl SubstitutionRule {
    /// `2^(i-2) - 1`
    pub const A: SubstitutionRule = SubstitutionRule { name: "A", weight: |i| pow2(i as i64 - 2) - Rat::one() };
    /// `2^(i-1) - i`
    pub const B: SubstitutionRule = SubstitutionRule { name: "B", weight: |i| pow2(i as i64 - 1) - rat(i as i64) };
    /// `i - 2`
    pub const C: SubstitutionRule = SubstitutionRule { name: "C", weight: |i| rat(i as i64 - 2) };
}

pub fn substitute(p: &ValencePoly, rule: &SubstitutionRule) -> Rat {
    p.terms().map(|(m, c)| c * m.iter().map(|&i| (rule.weight)(i)).sum::<Rat>()).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiRow {
    pub n: usize,
    #[serde(with = "serde_rat")]
    pub a: Rat,
    #[serde(with = "serde_rat")]
    pub b: Rat,
    #[serde(with = "serde_rat")]
    pub c: Rat,
    #[serde(with = "serde_rat")]
    pub chi_dlcom: Rat,
    #[serde(with = "serde_rat")]
    pub chi_delta: Rat,
}

impl ChiRow {
    pub const COLUMNS: [&'static str; 6] = ["n", "A", "B", "C", "chi_DLCom", "chi_Delta"];
}

/// Rows `n = 3..=n_max`. `chi_Delta = 1 - A` reads the transform as the reduced cochains of
/// the tropical moduli space, so the shift drops out.
pub fn chi_delta_table(n_max: usize) -> Result<Vec<ChiRow>, CalcError> {
    if n_max < 3 {
        return Err(CalcError::Range(format!("table starts at n = 3, got n_max = {n_max}")));
    }
    (3..=n_max)
        .map(|n| {
            let p = p_polynomial(n)?;
            let a = substitute(&p, &SubstitutionRule::A);
            let b = substitute(&p, &SubstitutionRule::B);
            let c = substitute(&p, &SubstitutionRule::C);
            if &a + &a != &b + &c {
                return Err(CalcError::Inconsistent(format!("2A != B + C at n = {n}")));
            }
            let chi_delta = Rat::one() - &a;
            Ok(ChiRow { n, chi_dlcom: a.clone(), a, b, c, chi_delta })
        })
        .collect()
}

/// `1 + (-1)^(n-1) (n-1)!/2`.
pub fn chi_delta_closed_form(n: usize) -> Rat {
    let f = Rat::from_integer(factorial(n as u64 - 1)) / rat(2);
    if n % 2 == 1 {
        Rat::one() + f
    } else {
        Rat::one() - f
    }
}

/// Signed count of labelled graphs with external signature `sig`:
/// `sum_gamma (-1)^edges(gamma) dim (⊗_v k^dims(v))_{Aut gamma}`, with trivial actions on
/// the labels and edges oriented as in the Feynman transform.
pub fn brute_force_chi(flavor: Flavor, dims: &BTreeMap<Sig, usize>, sig: Sig) -> Result<Rat, CalcError> {
    let window = if flavor.modular() { Window::modular(sig.g, sig.n) } else { Window::new(flavor, sig.n) };
    if !window.contains(sig) {
        return Err(CalcError::Range(format!("{} is not a stable signature", flavor.fmt_sig(sig))));
    }
    let mut labels = VModule::new();
    for (&s, &d) in dims {
        if !flavor.valid_sig(s) {
            return Err(CalcError::Range(format!("unstable label signature {}", flavor.fmt_sig(s))));
        }
        if d > 0 && window.contains(s) {
            labels.insert(Rep::trivial(flavor, s, d));
        }
    }
    let space = FreeSpace::build(VertexRule::of(&window), sig, window.top_degree(sig), &labels, true);
    let mut chi = Rat::zero();
    for (d, n) in space.dims_by_degree().into_iter().enumerate() {
        let term = rat(n as i64);
        chi += if d % 2 == 0 { term } else { -term };
    }
    Ok(chi)
}

/// Dimensions of `Com` (`1`) or `Lie` (`(n-2)!`) at the cyclic signatures `((3))..((n_max))`.
pub fn cyclic_dims(name: &str, n_max: usize) -> Result<BTreeMap<Sig, usize>, CalcError> {
    let f: fn(usize) -> usize = match name {
        "Com" => |_| 1,
        "Lie" => |n| (1..=n - 2).product(),
        _ => return Err(CalcError::Range(format!("no dimension table for {name}"))),
    };
    Ok((3..=n_max).map(|n| (Sig::cyc(n), f(n))).collect())
}

/// The modular envelope of `Com`: one dimension at every stable `(g, n)` of the window.
pub fn envelope_com_dims(window: &Window) -> BTreeMap<Sig, usize> {
    window.sigs().into_iter().map(|s| (s, 1)).collect()
}

/// `p_n` evaluated at `v_i = dims(((i)))`.
pub fn p_at_dims(n: usize, dims: &BTreeMap<Sig, usize>) -> Result<Rat, CalcError> {
    let p = p_polynomial(n)?;
    Ok(p.eval(|i| rat(dims.get(&Sig::cyc(i as usize)).copied().unwrap_or(0) as i64)))
}
