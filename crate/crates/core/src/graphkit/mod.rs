//! Structured graphs for the graph-based flavors: canonical forms, enumeration of
//! isomorphism classes by one-edge expansion, edge contraction and orientation signs.

mod canon;
mod enumerate;
mod flavor;
mod graph;
pub mod perm;

pub use canon::{
    canonical_form, canonicalize, canonicalize_cached, edge_perm_sign, flag_map_iso, orientation_sign, Canon,
    GraphClass, Iso,
};
pub use enumerate::{
    cache_dir, classes, code_version, enumerate_classes, insertions, one_edge_expansions, set_cache_dir, splits,
    Expansion, VertexRule,
};
pub use flavor::{Flavor, Sig, Window, ALL_FLAVORS};
pub use graph::{Graph, GraphError, NO_LEG};
pub use perm::Perm;
