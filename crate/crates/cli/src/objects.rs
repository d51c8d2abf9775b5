//! Resolving `--object` values: catalog names, `L!Name` for the exceptional pushforward of a
//! catalog object, or paths to JSON datum specs.

use anyhow::{anyhow, bail, Context};
use feynops::catalog::{self, builtin_table};
use feynops::graphkit::{Flavor, Window};
use feynops::opcore::{DatumSpec, FOpTable, QuadraticDatum};
use feynops::sixfun::{shriek_pushforward_in, MorphismId};
use std::path::Path;

fn read_spec(path: &Path) -> anyhow::Result<DatumSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(DatumSpec::from_json(&text)?)
}

fn is_path(name: &str) -> bool {
    name.ends_with(".json") || Path::new(name).is_file()
}

/// The flavor an object lives in when none is given.
pub fn natural_flavor(name: &str) -> anyhow::Result<Flavor> {
    if is_path(name) {
        let spec = read_spec(Path::new(name))?;
        return Flavor::parse(&spec.flavor).ok_or_else(|| anyhow!("unknown flavor {}", spec.flavor));
    }
    Ok(match name {
        "Nil" => Flavor::PlanarOperad,
        "BiLie" => Flavor::Dioperad,
        "KC" => Flavor::PlanarCyclic,
        _ => Flavor::Cyclic,
    })
}

/// A quadratic datum in `window`; a spec file keeps its generators and relations but is
/// truncated to `window`.
pub fn datum(name: &str, window: Window) -> anyhow::Result<QuadraticDatum> {
    if is_path(name) {
        let mut q = read_spec(Path::new(name))?.to_datum()?;
        if q.window.flavor != window.flavor {
            bail!("{name} is a {} datum, expected {}", q.window.flavor.name(), window.flavor.name());
        }
        q.window = window;
        q.rels.retain(|s, _| window.contains(*s));
        q.gens.reps.retain(|s, _| window.contains(*s));
        return Ok(q);
    }
    let window = if name == "BiLie" { window.with_nonempty_io() } else { window };
    Ok(catalog::builtin_datum(name, window)?)
}

pub fn table(name: &str, window: Window, dim_a: usize) -> anyhow::Result<FOpTable> {
    if is_path(name) || catalog::BUILTINS.contains(&name) {
        return Ok(datum(name, window)?.presented()?.0);
    }
    Ok(builtin_table(name, window, dim_a)?)
}

/// An object of the target flavor of `m`; `L!Name` pushes the source object `Name` forward.
pub fn target_table(m: MorphismId, name: &str, source: Window, target: Window, dim_a: usize) -> anyhow::Result<FOpTable> {
    if let Some(inner) = name.strip_prefix("L!") {
        let p = table(inner, source, dim_a)?;
        return Ok(shriek_pushforward_in(m, &p, &target)?);
    }
    table(name, target, dim_a)
}
