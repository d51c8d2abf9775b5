//! JSON form of V-modules and quadratic data.
//!
//! ```json
//! {
//!   "name": "Lie",
//!   "flavor": "cyclic",
//!   "window": { "max_flags": 5 },
//!   "odd": false,
//!   "generators": [
//!     { "sig": "((3))", "dim": 1,
//!       "action": [ { "perm": [1, 0, 2], "image": [0], "signs": [-1] },
//!                   { "perm": [1, 2, 0], "image": [0], "signs": [1] } ] }
//!   ],
//!   "relations": [ { "sig": "((4))", "vectors": [ [[1, "1"], [2, "1"], [3, "1"]] ] } ]
//! }
//! ```
//!
//! An action lists signed permutations of the basis for generators of the symmetry group
//! (`perm[k]` is the image of slot `k`); a missing action is trivial. Relation vectors are
//! sparse `[index, rational]` pairs in the coordinates of the free object at the relation's
//! signature: classes by degree and then canonical encoding, and within a class the
//! coinvariant basis of the vertex tensor in canonical vertex order.

use super::quadratic::QuadraticDatum;
use super::quotient::Relations;
use super::rep::{Rep, VModule};
use super::OpError;
use crate::exactlin::{fmt_rat, parse_rat, rat, rat_to_i64, SVec};
use crate::graphkit::perm::Perm;
use crate::graphkit::{Flavor, Sig, Window};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub max_flags: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub max_genus: u32,
    #[serde(default, skip_serializing_if = "is_false")]
    pub nonempty_io: bool,
}

fn is_zero(g: &u32) -> bool {
    *g == 0
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPermSpec {
    pub perm: Perm,
    pub image: Vec<usize>,
    pub signs: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub sig: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub action: Vec<SignedPermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSpec {
    pub sig: String,
    pub vectors: Vec<Vec<(usize, String)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumSpec {
    pub name: String,
    pub flavor: String,
    pub window: WindowSpec,
    #[serde(default)]
    pub odd: bool,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
}

fn parse_sig(flavor: Flavor, text: &str) -> Result<Sig, OpError> {
    let s = flavor.parse_sig(text).ok_or_else(|| OpError::Input(format!("bad {} signature {text:?}", flavor.name())))?;
    if !flavor.valid_sig(s) {
        return Err(OpError::Unstable(text.to_string()));
    }
    Ok(s)
}

impl WindowSpec {
    pub fn window(&self, flavor: Flavor) -> Window {
        let w = if flavor.modular() { Window::modular(self.max_genus, self.max_flags) } else { Window::new(flavor, self.max_flags) };
        if self.nonempty_io {
            w.with_nonempty_io()
        } else {
            w
        }
    }
}

fn generator_rep(flavor: Flavor, g: &GeneratorSpec) -> Result<Rep, OpError> {
    let s = parse_sig(flavor, &g.sig)?;
    if g.action.is_empty() {
        return Ok(Rep::trivial(flavor, s, g.dim));
    }
    let mut gens = Vec::new();
    for a in &g.action {
        if a.perm.len() != s.n || a.image.len() != g.dim || a.signs.len() != g.dim {
            return Err(OpError::Input(format!("action at {} has the wrong size", g.sig)));
        }
        if a.image.iter().any(|&i| i >= g.dim) || a.signs.iter().any(|&x| x != 1 && x != -1) {
            return Err(OpError::Input(format!("action at {} is not a signed permutation", g.sig)));
        }
        gens.push((a.perm.clone(), a.image.clone(), a.signs.clone()));
    }
    Rep::from_signed_perms(flavor, s, g.dim, &gens).map_err(|e| OpError::Input(format!("{}: {e}", g.sig)))
}

/// Generators as a V-module.
pub fn vmodule_from_spec(flavor: Flavor, gens: &[GeneratorSpec]) -> Result<VModule, OpError> {
    let mut m = VModule::new();
    for g in gens {
        if g.dim > 0 {
            m.insert(generator_rep(flavor, g)?);
        }
    }
    Ok(m)
}

impl DatumSpec {
    pub fn from_json(text: &str) -> Result<DatumSpec, OpError> {
        serde_json::from_str(text).map_err(|e| OpError::Input(format!("datum spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn to_datum(&self) -> Result<QuadraticDatum, OpError> {
        let flavor = Flavor::parse(&self.flavor).ok_or_else(|| OpError::Input(format!("unknown flavor {}", self.flavor)))?;
        let gens = vmodule_from_spec(flavor, &self.generators)?;
        let mut rels = Relations::new();
        for r in &self.relations {
            let s = parse_sig(flavor, &r.sig)?;
            let vs: Vec<SVec> = r
                .vectors
                .iter()
                .map(|v| {
                    let mut out: SVec = v
                        .iter()
                        .map(|(i, c)| parse_rat(c).map(|c| (*i, c)).ok_or_else(|| OpError::Input(format!("bad rational {c:?}"))))
                        .collect::<Result<_, _>>()?;
                    out.sort_by_key(|e| e.0);
                    out.retain(|(_, c)| *c != rat(0));
                    Ok(out)
                })
                .collect::<Result<_, OpError>>()?;
            rels.entry(s).or_default().extend(vs);
        }
        Ok(QuadraticDatum { name: self.name.clone(), gens, rels, odd: self.odd, window: self.window.window(flavor) })
    }

    /// Fails when an action is not by signed permutations.
    pub fn from_datum(q: &QuadraticDatum) -> Result<DatumSpec, OpError> {
        let flavor = q.window.flavor;
        let mut generators = Vec::new();
        for (s, rep) in &q.gens.reps {
            let mut action = Vec::new();
            for p in flavor.aut_gens(*s) {
                let m = rep.rho(&p);
                let mut image = Vec::with_capacity(rep.dim);
                let mut signs = Vec::with_capacity(rep.dim);
                for c in &m.cols {
                    match c.as_slice() {
                        [(i, x)] if rat_to_i64(x).is_some_and(|v| v == 1 || v == -1) => {
                            image.push(*i);
                            signs.push(rat_to_i64(x).unwrap() as i8);
                        }
                        _ => return Err(OpError::Input(format!("action at {} is not monomial", flavor.fmt_sig(*s)))),
                    }
                }
                action.push(SignedPermSpec { perm: p, image, signs });
            }
            generators.push(GeneratorSpec { sig: flavor.fmt_sig(*s), dim: rep.dim, action });
        }
        let relations = q
            .rels
            .iter()
            .map(|(s, vs)| RelationSpec {
                sig: flavor.fmt_sig(*s),
                vectors: vs.iter().map(|v| v.iter().map(|(i, c)| (*i, fmt_rat(c))).collect()).collect(),
            })
            .collect();
        Ok(DatumSpec {
            name: q.name.clone(),
            flavor: flavor.name().to_string(),
            window: WindowSpec { max_flags: q.window.max_flags, max_genus: q.window.max_genus, nonempty_io: q.window.nonempty_io },
            odd: q.odd,
            generators,
            relations,
        })
    }
}
