use crate::objects;
use crate::{Format, Outcome};
use anyhow::{anyhow, bail};
use clap::{Args, ValueEnum};
use feynops::catalog::{kc_check, EndSpec};
use feynops::graphkit::{Flavor, Window};
use feynops::sixfun::{
    ambidex_check, binomial_check, compose_shriek, coproper_check, dsquared_report, free_preservation, koszul_report,
    projection_iso, pushforward_datum, pushforward_l, verify_intertwining, verify_restriction_intertwining,
    FunctorReport, MorphismId,
};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Intertwine,
    Projection,
    Binomial,
    KcOperad,
    Dsquared,
    Ambidex,
    Coproper,
    ComposeShriek,
    KoszulMap,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Check,
    /// Flavor of the object (dsquared, koszul-map); inferred from the object otherwise.
    #[arg(long)]
    pub flavor: Option<String>,
    /// Catalog name (Com, Lie, As, Nil, BiLie, I, End, DoubledEnd, KC) or a JSON spec path.
    #[arg(long)]
    pub object: Option<String>,
    /// Target-flavor object for `projection`; `L!Name` pushes a source object forward.
    #[arg(long)]
    pub target_object: Option<String>,
    #[arg(long)]
    pub morphism: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub max_flags: usize,
    #[arg(long, default_value_t = 1)]
    pub max_genus: u32,
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub max_arity: usize,
    /// Dimension of A for endomorphism objects.
    #[arg(long, default_value_t = 1)]
    pub dim_a: usize,
    /// Random instances for `ambidex`.
    #[arg(long, default_value_t = 50)]
    pub instances: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Treat warnings (such as truncation of L) as failures.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl VerifyArgs {
    fn window(&self, flavor: Flavor) -> Window {
        let w = if flavor.modular() { Window::modular(self.max_genus, self.max_flags) } else { Window::new(flavor, self.max_flags) };
        match self.max_degree {
            Some(d) => w.with_max_degree(d),
            None => w,
        }
    }

    fn morphism(&self, default: MorphismId) -> anyhow::Result<MorphismId> {
        match &self.morphism {
            None => Ok(default),
            Some(name) => MorphismId::parse(name).ok_or_else(|| anyhow!("unknown morphism {name}")),
        }
    }

    fn object_or<'a>(&'a self, default: &'a str) -> &'a str {
        self.object.as_deref().unwrap_or(default)
    }

    fn flavor_of(&self, object: &str) -> anyhow::Result<Flavor> {
        match &self.flavor {
            Some(f) => Flavor::parse(f).ok_or_else(|| anyhow!("unknown flavor {f}")),
            None => objects::natural_flavor(object),
        }
    }

    /// Target window from the flags; the source window is large enough for every
    /// composite in the target window.
    fn windows(&self, m: MorphismId) -> (Window, Window) {
        let target = self.window(m.target());
        let mut source = m.source_window(&target);
        source.max_degree = self.max_degree;
        (source, target)
    }
}

fn reports(a: &VerifyArgs) -> anyhow::Result<Vec<FunctorReport>> {
    Ok(match a.check {
        Check::Dsquared => {
            let name = a.object_or("Com");
            let p = objects::table(name, a.window(a.flavor_of(name)?), a.dim_a)?;
            vec![dsquared_report(&p)?]
        }
        Check::KoszulMap => {
            let name = a.object_or("Com");
            vec![koszul_report(&objects::datum(name, a.window(a.flavor_of(name)?))?)?]
        }
        Check::KcOperad => vec![kc_check(a.max_arity)?],
        Check::Ambidex => vec![ambidex_check(a.instances, 6, a.seed)?],
        Check::Binomial => vec![binomial_check(EndSpec::new(a.dim_a)?, a.max_flags)?],
        Check::Intertwine => {
            let m = a.morphism(MorphismId::CyclicToModular)?;
            let (source, target) = a.windows(m);
            let default = if m.source() == Flavor::Dioperad { "End" } else { "Com" };
            let p = objects::table(a.object_or(default), source, a.dim_a)?;
            let mut out = vec![verify_intertwining(m, &p, &target)?];
            if m == MorphismId::CyclicToModular {
                let lp = pushforward_l(m, &p, &target)?;
                let mut r = verify_restriction_intertwining(m, &lp.table, &source)?;
                r.warnings.extend(lp.warnings);
                out.push(r);
            }
            out
        }
        Check::Projection => {
            let m = a.morphism(MorphismId::CyclicToModular)?;
            let (source, target) = a.windows(m);
            let (p_default, o_default) = match m {
                MorphismId::CyclicToModular => ("Lie", "L!Com"),
                MorphismId::DioperadToCyclic => ("End", "DoubledEnd"),
                _ => bail!("no default objects for {}; pass --object and --target-object", m.name()),
            };
            let p = objects::table(a.object_or(p_default), source, a.dim_a)?;
            let o = objects::target_table(m, a.target_object.as_deref().unwrap_or(o_default), source, target, a.dim_a)?;
            vec![projection_iso(m, &o, &p)?]
        }
        Check::Coproper => {
            let m = a.morphism(MorphismId::CyclicToModular)?;
            let (source, target) = a.windows(m);
            let q = pushforward_datum(m, &objects::datum(a.object_or("Com"), source)?, &target);
            vec![coproper_check(m, &q, &source)?, free_preservation(m, &q.gens, &target, &source, q.odd)?]
        }
        Check::ComposeShriek => {
            let p = objects::table(a.object_or("Nil"), a.window(Flavor::PlanarOperad), a.dim_a)?;
            vec![compose_shriek(MorphismId::PlanarOperadToOperad, MorphismId::OperadToCyclic, &p)?]
        }
    })
}

pub fn run(a: &VerifyArgs) -> anyhow::Result<Outcome> {
    let reports = reports(a)?;
    let mut failures = Vec::new();
    let mut warnings = Vec::new();
    for r in &reports {
        failures.extend(r.failures().into_iter().map(|f| format!("{}: {f}", r.title)));
        warnings.extend(r.warnings.iter().cloned());
    }
    if a.strict && !warnings.is_empty() {
        failures.push(format!("{} warning(s) under --strict", warnings.len()));
    }
    let stdout = match a.format {
        Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
        Format::Tsv => reports.iter().map(|r| format!("#report\t{}\n{}", r.title, r.to_tsv())).collect(),
        Format::Text => reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n"),
    };
    let failed = !failures.is_empty();
    let check = a.check.to_possible_value().expect("no skipped variants").get_name().to_string();
    Ok(Outcome { stdout, failures: json!({"command": "verify", "check": check, "failures": failures, "warnings": warnings}), failed })
}
