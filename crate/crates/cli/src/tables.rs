use std::ops::RangeInclusive;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use quadbetti_core::bounds::{self, BoundQuery, DegreeSequence};
use quadbetti_core::rational::Rational;
use quadbetti_core::Verdict;
use serde_json::{json, Value};

use crate::args::{parse_range, Format};
use crate::emit;

#[derive(Args)]
pub struct BoundsArgs {
    /// Number of inequalities: N or A..B
    #[arg(long, value_parser = parse_range)]
    s: RangeInclusive<usize>,
    /// Ambient dimension: N or A..B
    #[arg(long, value_parser = parse_range)]
    k: RangeInclusive<usize>,
    /// Homology degree: N or A..B (default: every degree below k)
    #[arg(long, value_parser = parse_range)]
    i: Option<RangeInclusive<usize>>,
    /// Emit the aggregate bounds per (s, k) instead of per-degree rows
    #[arg(long)]
    aggregate: bool,
    /// Append (2s)^k and k^s with unit constants, for illustration only
    #[arg(long)]
    compare_classical: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn num_den(r: &Rational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

fn frac(r: &Rational) -> String {
    quadbetti_core::rational::to_string(r)
}

pub fn bounds(a: &BoundsArgs) -> Result<Verdict> {
    if a.aggregate {
        return aggregate(a);
    }
    let mut header = vec!["s", "k", "i", "bound_num", "bound_den"];
    if a.compare_classical {
        header.extend(["nonrigorous_sd_k", "nonrigorous_k_s"]);
    }
    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    for s in a.s.clone() {
        for k in a.k.clone() {
            let degrees = a.i.clone().unwrap_or(0..=k.saturating_sub(1));
            for i in degrees {
                let Ok(q) = BoundQuery::new(s as u32, k as u32, i as u32) else {
                    continue;
                };
                let b = bounds::bound_betti(q);
                let (n, d) = num_den(&b);
                let mut row = vec![s.to_string(), k.to_string(), i.to_string(), n, d];
                let mut obj = json!({"s": s, "k": k, "i": i, "bound": frac(&b)});
                if a.compare_classical {
                    let (sd_k, k_s) = bounds::classical_reference(s as u32, k as u32);
                    row.extend([sd_k.to_string(), k_s.to_string()]);
                    obj["nonrigorous_sd_k"] = json!(sd_k.to_string());
                    obj["nonrigorous_k_s"] = json!(k_s.to_string());
                }
                csv_rows.push(row);
                json_rows.push(obj);
            }
        }
    }
    if csv_rows.is_empty() {
        bail!("no (s, k, i) in the requested ranges satisfies 1 <= s <= k and i < k");
    }
    let mut doc = json!({"table": "bounds", "rows": json_rows});
    if a.compare_classical {
        doc["nonrigorous_note"] = json!("illustrative, non-rigorous: unit constants");
    }
    emit_table(a.format, a.output.as_deref(), &header, &csv_rows, &doc)
}

fn aggregate(a: &BoundsArgs) -> Result<Verdict> {
    let header = [
        "s",
        "k",
        "simple_num",
        "simple_den",
        "exp_form_approx",
        "total_num",
        "total_den",
    ];
    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    for s in a.s.clone() {
        for k in a.k.clone() {
            let Ok(agg) = bounds::bound_aggregate(s as u32, k as u32) else {
                continue;
            };
            let (sn, sd) = agg.simple.as_ref().map(num_den).unwrap_or_default();
            let (tn, td) = agg.total.as_ref().map(num_den).unwrap_or_default();
            let e = agg.exp_form.map(|x| format!("{x:e}")).unwrap_or_default();
            csv_rows.push(vec![s.to_string(), k.to_string(), sn, sd, e, tn, td]);
            json_rows.push(json!({
                "s": s,
                "k": k,
                "simple": agg.simple.as_ref().map(frac),
                "exp_form_approx": agg.exp_form,
                "total": agg.total.as_ref().map(frac),
            }));
        }
    }
    if csv_rows.is_empty() {
        bail!("no (s, k) in the requested ranges satisfies 1 <= s <= k");
    }
    let doc = json!({"table": "aggregate", "rows": json_rows});
    emit_table(a.format, a.output.as_deref(), &header, &csv_rows, &doc)
}

#[derive(Args)]
pub struct CiArgs {
    /// Number of hypersurfaces: N or A..B
    #[arg(long, value_parser = parse_range)]
    j: RangeInclusive<usize>,
    /// Projective dimension: N or A..B
    #[arg(long, value_parser = parse_range)]
    k: RangeInclusive<usize>,
    /// Degrees d_1,...,d_j; a single value is repeated j times
    #[arg(long, value_delimiter = ',', default_value = "2")]
    degrees: Vec<u32>,
    /// Use the quadric-only recurrence (all degrees 2)
    #[arg(long)]
    quad: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

pub fn ci(a: &CiArgs) -> Result<Verdict> {
    if a.quad && a.degrees.iter().any(|&d| d != 2) {
        bail!("--quad takes degree 2 only");
    }
    let header = ["j", "k", "degrees", "betti_total"];
    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    for j in a.j.clone() {
        let degrees = match a.degrees.len() {
            1 => vec![a.degrees[0]; j],
            n if n == j => a.degrees.clone(),
            n => bail!("{n} degrees given for j = {j}"),
        };
        let d = DegreeSequence::new(degrees.clone())?;
        for k in a.k.clone() {
            if j > k {
                continue;
            }
            let total = if a.quad {
                bounds::b_quad(j, k)?
            } else {
                bounds::b_ci(j, k, &d)?
            };
            let joined: Vec<String> = degrees.iter().map(u32::to_string).collect();
            csv_rows.push(vec![
                j.to_string(),
                k.to_string(),
                joined.join(";"),
                total.to_string(),
            ]);
            json_rows.push(json!({"j": j, "k": k, "degrees": degrees, "betti_total": total.to_string()}));
        }
    }
    if csv_rows.is_empty() {
        bail!("no (j, k) in the requested ranges satisfies j <= k");
    }
    let doc = json!({"table": "ci", "rows": json_rows});
    emit_table(a.format, a.output.as_deref(), &header, &csv_rows, &doc)
}

fn emit_table(
    format: Format,
    path: Option<&std::path::Path>,
    header: &[&str],
    rows: &[Vec<String>],
    doc: &Value,
) -> Result<Verdict> {
    let text = match format {
        Format::Csv => emit::csv(header, rows)?,
        Format::Json => emit::json(doc),
    };
    emit::write(path, &text)?;
    Ok(Verdict::Pass)
}
