//! Truncated F-ops: free constructions, quotients, tables of structure maps, quadratic
//! duality and the Feynman transform.

pub mod classspace;
pub mod free;
pub mod quadratic;
pub mod quasifree;
pub mod quotient;
pub mod rep;
pub mod spec;
pub mod table;

pub use classspace::{transport, ClassSpace, FreeSpace, Shape};
pub use free::FreeOp;
pub use quadratic::{koszul_map, quadratic_dual, weight_one_pairing, KoszulMap, KoszulReport, KoszulRow, QuadraticDatum};
pub use quasifree::{feynman_transform, split_composition, split_relabel, QuasiFree, SplitTerm};
pub use quotient::{free_table, quotient, saturate, table_from_ideal, weight_one_range, Quotient, Relations};
pub use rep::{Rep, VModule};
pub use spec::{vmodule_from_spec, DatumSpec, GeneratorSpec, RelationSpec, SignedPermSpec, WindowSpec};
pub use table::{window_keys, word_sign, ComposeKey, FOpTable, Token};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum OpError {
    #[error("unstable generator signature {0}")]
    Unstable(String),
    #[error("relations do not form a submodule: {0}")]
    NotSubmodule(String),
    #[error("structure check failed: {0}")]
    Structure(String),
    #[error("d^2 != 0 in {0} at {1}")]
    DSquared(String, String),
    #[error("malformed input: {0}")]
    Input(String),
}
