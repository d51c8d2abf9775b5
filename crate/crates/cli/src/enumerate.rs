use crate::{Format, Outcome};
use anyhow::{anyhow, bail};
use clap::Args;
use feynops::graphkit::{enumerate_classes, Flavor, Sig, Window};
use serde::Serialize;
use serde_json::json;

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub flavor: String,
    /// Number of legs (for operads: inputs plus the output).
    #[arg(long)]
    pub flags: usize,
    #[arg(long, default_value_t = 0)]
    pub genus: u32,
    /// Outputs of a dioperad signature.
    #[arg(long, default_value_t = 1)]
    pub outs: usize,
    /// A single degree (edge count); all degrees when omitted.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Only graphs whose vertices all have an input and an output (dioperads).
    #[arg(long)]
    pub nonempty_io: bool,
    #[arg(long)]
    pub dump: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Serialize)]
struct DegreeCount {
    degree: usize,
    classes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    encodings: Option<Vec<String>>,
}

fn signature(flavor: Flavor, a: &EnumerateArgs) -> anyhow::Result<Sig> {
    Ok(match flavor {
        Flavor::Modular => Sig::modular(a.genus, a.flags),
        Flavor::Operad | Flavor::PlanarOperad => {
            Sig::operad(a.flags.checked_sub(1).ok_or_else(|| anyhow!("an operad signature has at least one flag"))?)
        }
        Flavor::Dioperad => {
            Sig::di(a.flags.checked_sub(a.outs).ok_or_else(|| anyhow!("more outputs than flags"))?, a.outs)
        }
        _ => Sig::cyc(a.flags),
    })
}

fn encoding(key: &[u32]) -> String {
    key.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(".")
}

pub fn run(a: &EnumerateArgs) -> anyhow::Result<Outcome> {
    let flavor = Flavor::parse(&a.flavor).ok_or_else(|| anyhow!("unknown flavor {}", a.flavor))?;
    let s = signature(flavor, a)?;
    if !flavor.valid_sig(s) {
        bail!("unstable signature {}", flavor.fmt_sig(s));
    }
    let window = if flavor.modular() { Window::modular(s.g, s.n) } else { Window::new(flavor, s.n) };
    let degrees: Vec<usize> = match a.degree {
        Some(d) => vec![d],
        None => (0..=window.top_degree(s)).collect(),
    };
    let mut counts = Vec::new();
    for d in degrees {
        let list = enumerate_classes(flavor, s, d, a.nonempty_io)?;
        let encodings = a.dump.then(|| list.iter().map(|c| encoding(&c.key)).collect());
        counts.push(DegreeCount { degree: d, classes: list.len(), encodings });
    }
    let sig = flavor.fmt_sig(s);
    let stdout = match a.format {
        Format::Json => serde_json::to_string_pretty(&json!({"flavor": flavor.name(), "sig": sig, "degrees": counts}))? + "\n",
        Format::Tsv => {
            let mut out = String::from("degree\tclasses\n");
            for c in &counts {
                out += &format!("{}\t{}\n", c.degree, c.classes);
                for e in c.encodings.iter().flatten() {
                    out += &format!("#class\t{}\t{e}\n", c.degree);
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in &counts {
                out += &format!("{} {sig} degree {}: {}\n", flavor.name(), c.degree, c.classes);
                for e in c.encodings.iter().flatten() {
                    out += &format!("  {e}\n");
                }
            }
            out
        }
    };
    Ok(Outcome { stdout, failures: json!(null), failed: false })
}
