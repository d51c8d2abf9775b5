//! The functors `R`, `L`, `L^!`, `R^!` along a closed catalog of forgetful morphisms,
//! and the verifiers for the identities relating them.
//!
//! Every catalog morphism forgets structure on vertices (directions, a root, a planar
//! order, the genus label) and keeps slots in place, so a source signature `w` maps to a
//! target signature `phi(w)` with the same slots and `Aut(w)` sits inside `Aut(phi(w))`
//! as a subgroup of slot permutations.

mod ambidex;
mod decor;
mod kan;
mod lift;
mod pullback;
mod report;
mod verify;

pub use ambidex::{ambidex_check, equivariant_average, lambda_from_psi, psi_from_lambda, small_pairs, vertex_triangles, VertexPair};
pub use decor::{decorations, Decorations, Fiber, FiberPart};
pub use kan::{corolla_coords, pushforward_l, KanExtension};
pub use lift::{
    lift_module, lifted_rep, restrict, restrict_module, shriek_pushforward, shriek_pushforward_in, zero_table,
};
pub use pullback::{shriek_pullback, sigma_relations};
pub use report::FunctorReport;
pub use verify::{
    binomial_check, compose_shriek, dsquared_report, koszul_report, coproper_check, free_preservation, graph_map_matrix, lr_triangles,
    projection_iso, pushforward_datum, verify_intertwining, verify_restriction_intertwining,
};

use crate::graphkit::{Flavor, Graph, Sig, Window};
use crate::opcore::OpError;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MorphismId {
    CyclicToModular,
    DioperadToCyclic,
    OperadToCyclic,
    PlanarOperadToOperad,
    PlanarCyclicToCyclic,
    /// `OperadToCyclic` after `PlanarOperadToOperad`.
    PlanarOperadToCyclic,
}

/// The five primitive morphisms.
pub const CATALOG: [MorphismId; 5] = [
    MorphismId::CyclicToModular,
    MorphismId::DioperadToCyclic,
    MorphismId::OperadToCyclic,
    MorphismId::PlanarOperadToOperad,
    MorphismId::PlanarCyclicToCyclic,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFlags {
    pub admissible: bool,
    pub proper: bool,
    pub coproper: bool,
    pub quadratic_preserving: bool,
}

impl MorphismId {
    pub fn source(self) -> Flavor {
        match self {
            MorphismId::CyclicToModular => Flavor::Cyclic,
            MorphismId::DioperadToCyclic => Flavor::Dioperad,
            MorphismId::OperadToCyclic => Flavor::Operad,
            MorphismId::PlanarOperadToOperad | MorphismId::PlanarOperadToCyclic => Flavor::PlanarOperad,
            MorphismId::PlanarCyclicToCyclic => Flavor::PlanarCyclic,
        }
    }

    pub fn target(self) -> Flavor {
        match self {
            MorphismId::CyclicToModular => Flavor::Modular,
            MorphismId::PlanarOperadToOperad => Flavor::Operad,
            _ => Flavor::Cyclic,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MorphismId::CyclicToModular => "cyclic-to-modular",
            MorphismId::DioperadToCyclic => "dioperad-to-cyclic",
            MorphismId::OperadToCyclic => "operad-to-cyclic",
            MorphismId::PlanarOperadToOperad => "planar-operad-to-operad",
            MorphismId::PlanarCyclicToCyclic => "planar-cyclic-to-cyclic",
            MorphismId::PlanarOperadToCyclic => "planar-operad-to-cyclic",
        }
    }

    pub fn parse(s: &str) -> Option<MorphismId> {
        CATALOG.iter().copied().chain([MorphismId::PlanarOperadToCyclic]).find(|m| m.name() == s)
    }

    /// Recorded properties of each morphism; only those established for the catalog
    /// are set, everything else is `false`.
    pub fn flags(self) -> MorphismFlags {
        let f = |proper, coproper, quadratic_preserving| MorphismFlags {
            admissible: true,
            proper,
            coproper,
            quadratic_preserving,
        };
        match self {
            MorphismId::CyclicToModular => f(false, true, true),
            MorphismId::DioperadToCyclic => f(false, false, true),
            MorphismId::OperadToCyclic => f(false, true, true),
            MorphismId::PlanarOperadToOperad => f(true, false, false),
            MorphismId::PlanarCyclicToCyclic => f(false, true, true),
            MorphismId::PlanarOperadToCyclic => f(false, false, false),
        }
    }

    /// `m2 ∘ m1` when it is in the catalog.
    pub fn then(self, m2: MorphismId) -> Result<MorphismId, OpError> {
        match (self, m2) {
            (MorphismId::PlanarOperadToOperad, MorphismId::OperadToCyclic) => Ok(MorphismId::PlanarOperadToCyclic),
            _ => Err(OpError::Input(format!("{} then {} is not a catalog composite", self.name(), m2.name()))),
        }
    }

    pub fn sig_map(self, w: Sig) -> Sig {
        let outs = if self.target().directed() { w.outs } else { 0 };
        Sig { n: w.n, g: w.g, outs }
    }

    /// A source-flavor graph viewed in the target flavor: same flags, listings and legs.
    pub fn graph_map(self, g: &Graph) -> Graph {
        let mut h = g.clone();
        h.flavor = self.target();
        if !h.flavor.directed() {
            h.out.iter_mut().for_each(|o| *o = false);
        }
        h
    }

    /// Source signatures of `source` lying over `v`.
    pub fn preimages(self, v: Sig, source: &Window) -> Vec<Sig> {
        source.sigs().into_iter().filter(|&w| self.sig_map(w) == v).collect()
    }

    /// The image window of a source window: same flag bound, and for the modular target
    /// the genus-one window of the same total size.
    pub fn image_window(self, source: &Window) -> Window {
        match self.target() {
            Flavor::Modular => Window::modular(1, source.max_flags.saturating_sub(2)),
            t => Window::new(t, source.max_flags),
        }
    }

    /// The largest source window over a target window.
    pub fn source_window(self, target: &Window) -> Window {
        let n = if target.flavor.modular() { 2 * target.max_genus as usize + target.max_flags } else { target.max_flags };
        Window::new(self.source(), n)
    }
}
