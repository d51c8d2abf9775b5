//! Truncated F-ops over graphs: exact linear algebra, graph enumeration, the Feynman
//! transform, quadratic duality, the functors R, L, L^!, R^! for a fixed catalog of
//! morphisms, and the genus-one Euler characteristic calculus.

pub mod exactlin;
pub mod graphkit;
pub mod opcore;
pub mod catalog;
pub mod sixfun;
pub mod charcalc;
