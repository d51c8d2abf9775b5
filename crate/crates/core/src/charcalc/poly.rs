use crate::exactlin::{fmt_rat, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial in the valence variables `v_3, v_4, ...`. Monomials are sorted
/// multisets of variable indices; the empty monomial is the constant term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValencePoly {
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl ValencePoly {
    pub fn zero() -> ValencePoly {
        ValencePoly::default()
    }

    pub fn constant(c: Rat) -> ValencePoly {
        ValencePoly::monomial(Vec::new(), c)
    }

    pub fn var(i: u32) -> ValencePoly {
        ValencePoly::monomial(vec![i], Rat::one())
    }

    pub fn monomial(mut vars: Vec<u32>, c: Rat) -> ValencePoly {
        vars.sort_unstable();
        let mut p = ValencePoly::zero();
        if !c.is_zero() {
            p.terms.insert(vars, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, vars: &[u32]) -> Rat {
        let mut key = vars.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, vars: Vec<u32>, c: Rat) {
        let e = self.terms.entry(vars).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, x| !x.is_zero());
        }
    }

    pub fn add(&self, other: &ValencePoly) -> ValencePoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> ValencePoly {
        if c.is_zero() {
            return ValencePoly::zero();
        }
        ValencePoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &ValencePoly) -> ValencePoly {
        let mut out = ValencePoly::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                m.sort_unstable();
                out.add_term(m, a * b);
            }
        }
        out
    }

    /// Ordinary evaluation, `v_i -> value(i)`.
    pub fn eval(&self, value: impl Fn(u32) -> Rat) -> Rat {
        self.terms.iter().map(|(m, c)| m.iter().fold(c.clone(), |acc, &i| acc * value(i))).sum()
    }

    pub fn eval_ones(&self) -> Rat {
        self.eval(|_| Rat::one())
    }
}

impl fmt::Display for ValencePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = match (k, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = c.abs();
            let mut powers: Vec<(u32, usize)> = Vec::new();
            for &i in m {
                match powers.last_mut() {
                    Some((j, e)) if *j == i => *e += 1,
                    _ => powers.push((i, 1)),
                }
            }
            let body: Vec<String> =
                powers.iter().map(|&(i, e)| if e == 1 { format!("v{i}") } else { format!("v{i}^{e}") }).collect();
            let body = body.join("*");
            let text = match (m.is_empty(), mag.is_one()) {
                (true, _) => fmt_rat(&mag),
                (false, true) => body,
                (false, false) => format!("{}*{body}", fmt_rat(&mag)),
            };
            write!(f, "{sign}{text}")?;
        }
        Ok(())
    }
}
