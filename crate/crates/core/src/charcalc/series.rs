use super::poly::ValencePoly;
use super::CalcError;
use crate::exactlin::{factorial, Rat};
use num_traits::One;

/// `sum_n c_n x^n / n!` truncated after `x^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSeries {
    pub order: usize,
    /// `coeffs[n] = c_n`, length `order + 1`
    pub coeffs: Vec<ValencePoly>,
}

fn fact(n: usize) -> Rat {
    Rat::from_integer(factorial(n as u64))
}

type Ordinary = Vec<ValencePoly>;

fn mul_trunc(a: &Ordinary, b: &Ordinary, order: usize) -> Ordinary {
    let mut out = vec![ValencePoly::zero(); order + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// `sum_k a_k g^k` for `g` without constant term.
fn compose_ordinary(a: &Ordinary, g: &Ordinary, order: usize) -> Ordinary {
    let mut out = vec![ValencePoly::zero(); order + 1];
    out[0] = a[0].clone();
    let mut power = g.clone();
    for ak in a.iter().take(order + 1).skip(1) {
        if !ak.is_zero() {
            for (o, p) in out.iter_mut().zip(&power) {
                *o = o.add(&p.mul(ak));
            }
        }
        power = mul_trunc(&power, g, order);
    }
    out
}

impl CharSeries {
    pub fn from_coeffs(coeffs: Vec<ValencePoly>) -> CharSeries {
        assert!(!coeffs.is_empty(), "a series has at least a constant term");
        CharSeries { order: coeffs.len() - 1, coeffs }
    }

    pub fn identity(order: usize) -> CharSeries {
        let mut coeffs = vec![ValencePoly::zero(); order + 1];
        if order >= 1 {
            coeffs[1] = ValencePoly::constant(Rat::one());
        }
        CharSeries { order, coeffs }
    }

    /// `f(x) = x + sum_{n >= 2} v_{n+1} x^n / n!`.
    pub fn valence(order: usize) -> CharSeries {
        let mut f = CharSeries::identity(order);
        for n in 2..=order {
            f.coeffs[n] = ValencePoly::var(n as u32 + 1);
        }
        f
    }

    fn ordinary(&self) -> Ordinary {
        self.coeffs.iter().enumerate().map(|(n, c)| c.scale(&(Rat::one() / fact(n)))).collect()
    }

    fn from_ordinary(a: Ordinary) -> CharSeries {
        let coeffs = a.into_iter().enumerate().map(|(n, c)| c.scale(&fact(n))).collect();
        CharSeries::from_coeffs(coeffs)
    }

    /// `self(g(x))`; `g` must have no constant term.
    pub fn compose(&self, g: &CharSeries) -> Result<CharSeries, CalcError> {
        if !g.coeffs[0].is_zero() {
            return Err(CalcError::NotComposable("inner series has a constant term".into()));
        }
        let order = self.order.min(g.order);
        let (a, b) = (self.ordinary(), g.ordinary());
        Ok(CharSeries::from_ordinary(compose_ordinary(&a[..=order].to_vec(), &b[..=order].to_vec(), order)))
    }

    pub fn is_identity(&self) -> bool {
        *self == CharSeries::identity(self.order)
    }
}

/// The inverse under composition, solved one order at a time and checked by composing
/// both ways.
pub fn compositional_inverse(f: &CharSeries) -> Result<CharSeries, CalcError> {
    let one = ValencePoly::constant(Rat::one());
    if !f.coeffs[0].is_zero() || f.order < 1 || f.coeffs[1] != one {
        return Err(CalcError::NotInvertible("series must be x + O(x^2)".into()));
    }
    let order = f.order;
    let a = f.ordinary();
    let mut g: Ordinary = vec![ValencePoly::zero(); order + 1];
    g[1] = one;
    for n in 2..=order {
        // [x^n] f(g) only sees g up to x^(n-1) apart from the linear term b_n
        let fg = compose_ordinary(&a[..=n].to_vec(), &g[..=n].to_vec(), n);
        g[n] = fg[n].scale(&-Rat::one());
    }
    let inv = CharSeries::from_ordinary(g);
    if !f.compose(&inv)?.is_identity() || !inv.compose(f)?.is_identity() {
        return Err(CalcError::Inconsistent("inverse fails the round trip".into()));
    }
    Ok(inv)
}

/// Coefficient of `x^(n-1)/(n-1)!` in the inverse of the valence series.
pub fn p_polynomial(n: usize) -> Result<ValencePoly, CalcError> {
    if n < 3 {
        return Err(CalcError::Range(format!("p_n needs n >= 3, got {n}")));
    }
    let g = compositional_inverse(&CharSeries::valence(n - 1))?;
    Ok(g.coeffs[n - 1].clone())
}
