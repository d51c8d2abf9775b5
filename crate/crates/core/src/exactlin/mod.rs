//! Exact rational linear algebra: based spaces, sparse maps, finite group actions,
//! coinvariants by averaging, chain complexes.

mod bareiss;
mod echelon;
mod rat;
mod sparse;
mod spaces;

pub use echelon::{image, inverse, kernel, rank_by_echelon, span_of, Echelon};
pub use rat::{factorial, fmt_rat, is_neg, parse_rat, rat, rat_frac, rat_one, rat_to_i64, rat_zero, serde_rat, Rat};
pub use spaces::{
    average_columns, coinvariants, euler_char, homology_dims, rank, reynolds_projector, BasedSpace, ChainComplex,
    Coinvariants, GroupAction, LinError, SignedPerm, SparseMap,
};
pub use sparse::{sv_add, sv_axpy, sv_dot, sv_from_pairs, sv_get, sv_scale, sv_sub, sv_unit, SMat, SVec, SvAcc};
