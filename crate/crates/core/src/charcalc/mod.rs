//! Euler characteristics in genus one: the valence series, its compositional inverse,
//! the polynomials `p_n`, the A/B/C substitutions and a graph-sum oracle.

mod chi;
mod poly;
mod series;

pub use chi::{
    brute_force_chi, chi_delta_closed_form, chi_delta_table, cyclic_dims, envelope_com_dims, p_at_dims, substitute,
    ChiRow, SubstitutionRule,
};
pub use poly::ValencePoly;
pub use series::{compositional_inverse, p_polynomial, CharSeries};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CalcError {
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("cannot compose: {0}")]
    NotComposable(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}
