use crate::{Format, Outcome};
use clap::Args;
use feynops::charcalc::{brute_force_chi, chi_delta_closed_form, chi_delta_table, envelope_com_dims, ChiRow};
use feynops::exactlin::{fmt_rat, serde_rat, Rat};
use feynops::graphkit::{Flavor, Sig, Window};
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Args, Debug)]
pub struct ChiArgs {
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Also compute A by summing over graphs, for n up to this bound.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = 5)]
    pub oracle_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChiLine {
    #[serde(flatten)]
    pub row: ChiRow,
    #[serde(with = "serde_rat")]
    pub expected_chi_delta: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_a: Option<String>,
}

pub fn run(args: &ChiArgs) -> anyhow::Result<Outcome> {
    let rows = match chi_delta_table(args.n_max) {
        Ok(r) => r,
        Err(e @ feynops::charcalc::CalcError::Inconsistent(_)) => {
            return Ok(Outcome { stdout: String::new(), failures: json!({"command": "chi", "failures": [e.to_string()]}), failed: true })
        }
        Err(e) => return Err(e.into()),
    };
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    for row in rows {
        let expected = chi_delta_closed_form(row.n);
        if row.chi_delta != expected {
            failures.push(json!({"n": row.n, "quantity": "chi_Delta", "expected": fmt_rat(&expected), "computed": fmt_rat(&row.chi_delta)}));
        }
        if &row.a + &row.a != &row.b + &row.c {
            failures.push(json!({"n": row.n, "quantity": "2A - B - C", "expected": "0", "computed": fmt_rat(&(&row.a + &row.a - &row.b - &row.c))}));
        }
        let oracle_a = if args.oracle && row.n <= args.oracle_max {
            let sig = Sig::modular(1, row.n);
            let brute = brute_force_chi(Flavor::Modular, &envelope_com_dims(&Window::modular(1, row.n)), sig)?;
            if brute != row.a {
                failures.push(json!({"n": row.n, "quantity": "A (graph sum)", "expected": fmt_rat(&row.a), "computed": fmt_rat(&brute)}));
            }
            Some(fmt_rat(&brute))
        } else {
            None
        };
        lines.push(ChiLine { row, expected_chi_delta: expected, oracle_a });
    }
    let stdout = render(&lines, args.format, args.oracle);
    let failed = !failures.is_empty();
    Ok(Outcome { stdout, failures: json!({"command": "chi", "failures": failures}), failed })
}

fn render(lines: &[ChiLine], format: Format, oracle: bool) -> String {
    if format == Format::Json {
        return serde_json::to_string_pretty(lines).expect("plain data") + "\n";
    }
    let mut header: Vec<String> = ChiRow::COLUMNS.iter().map(|c| c.to_string()).collect();
    header.push("expected_chi_Delta".into());
    if oracle {
        header.push("oracle_A".into());
    }
    let mut table = vec![header];
    for l in lines {
        let r = &l.row;
        let mut cells = vec![r.n.to_string()];
        cells.extend([&r.a, &r.b, &r.c, &r.chi_dlcom, &r.chi_delta, &l.expected_chi_delta].map(fmt_rat));
        if oracle {
            cells.push(l.oracle_a.clone().unwrap_or_else(|| "-".into()));
        }
        table.push(cells);
    }
    if format == Format::Tsv {
        return table.iter().map(|r| r.join("\t") + "\n").collect();
    }
    let widths: Vec<usize> = (0..table[0].len()).map(|k| table.iter().map(|r| r[k].len()).max().unwrap()).collect();
    table
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}", w = *w)).collect();
            cells.join("  ") + "\n"
        })
        .collect()
}
