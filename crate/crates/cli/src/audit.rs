use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use quadbetti_core::cubical::shapes::box_boundary;
use quadbetti_core::cubical::{close_under_faces, BettiVector};
use quadbetti_core::grid::GridSpec;
use quadbetti_core::harness::*;
use quadbetti_core::mayer_vietoris::{mayer_vietoris_audit, SubsetFamily};
use quadbetti_core::quadratic::QuadraticPoly;
use quadbetti_core::rational::{self, int, Rational};
use quadbetti_core::Verdict;
use serde_json::{json, Value};

use crate::args::{named_scenario, parse_list, parse_rational, Format};
use crate::{emit, system};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AuditName {
    Bound,
    Smith,
    DoubleCover,
    Deformation,
    Mv,
    Alexander,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Oracle,
    Grid,
}

#[derive(Args)]
pub struct AuditArgs {
    #[arg(long, value_enum)]
    name: AuditName,
    /// Built-in scenario: products-K, shell-K or empty-K
    #[arg(long, conflicts_with = "system")]
    scenario: Option<String>,
    /// Quadratic system document (JSON)
    #[arg(long)]
    system: Option<PathBuf>,
    /// Where Betti numbers come from in the bound audit
    #[arg(long, value_enum)]
    source: Option<Source>,
    /// Grid cell width
    #[arg(long, value_parser = parse_rational)]
    resolution: Option<Rational>,
    /// Box LO,HI used on every axis for a custom system
    #[arg(long = "box", value_parser = parse_rational, value_delimiter = ',', allow_hyphen_values = true)]
    bbox: Option<Vec<Rational>>,
    #[arg(long, value_parser = parse_rational)]
    r_in: Option<Rational>,
    #[arg(long, value_parser = parse_rational)]
    r_out: Option<Rational>,
    /// Sphere radius for the Smith audit
    #[arg(long, value_parser = parse_rational, default_value = "1")]
    radius: Rational,
    /// Zero-band threshold for the Smith audit (default: twice the resolution)
    #[arg(long, value_parser = parse_rational)]
    tau: Option<Rational>,
    #[arg(long, value_parser = parse_rational, default_value = "1/10")]
    eps: Rational,
    #[arg(long, value_parser = parse_rational, default_value = "1/1000")]
    delta: Rational,
    /// Deformation times (default: 0,delta)
    #[arg(long, value_parser = parse_rational, value_delimiter = ',')]
    t: Option<Vec<Rational>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lifting-grid cells per sphere radius
    #[arg(long, default_value_t = 20)]
    cells_per_radius: u32,
    /// Betti numbers of the union, b_0,b_1,...
    #[arg(long, value_delimiter = ',')]
    union: Option<Vec<usize>>,
    /// Intersection Betti numbers, MEMBERS:BETTI, e.g. 1,2:1,0
    #[arg(long)]
    piece: Vec<String>,
    /// Single degree to check (default: every degree of the union)
    #[arg(long)]
    degree: Option<usize>,
    /// Side of the cubical sphere for the duality audit
    #[arg(long, default_value_t = 6)]
    size: i64,
    /// Heights of the circles z = h on the cubical sphere
    #[arg(long, value_delimiter = ',', default_value = "3")]
    heights: Vec<i64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

pub fn run(a: &AuditArgs) -> Result<Verdict> {
    let (verdict, doc, table) = match a.name {
        AuditName::Bound => bound(a)?,
        AuditName::Smith => smith(a)?,
        AuditName::DoubleCover => double_cover(a)?,
        AuditName::Deformation => deformation(a)?,
        AuditName::Mv => mv(a)?,
        AuditName::Alexander => alexander(a)?,
    };
    let text = match a.format {
        Format::Json => emit::json(&doc),
        Format::Csv => match table {
            Some((header, rows)) => emit::csv(&header, &rows)?,
            None => {
                let rows: Vec<Vec<String>> = doc
                    .as_object()
                    .expect("reports are objects")
                    .iter()
                    .map(|(k, v)| {
                        vec![
                            k.clone(),
                            v.as_str().map_or_else(|| v.to_string(), str::to_string),
                        ]
                    })
                    .collect();
                emit::csv(&["field", "value"], &rows)?
            }
        },
    };
    emit::write(a.output.as_deref(), &text)?;
    Ok(verdict)
}

type Report = (Verdict, Value, Option<(Vec<&'static str>, Vec<Vec<String>>)>);

fn frac(r: &Rational) -> Value {
    json!(rational::to_string(r))
}

fn grid_json(g: &GridSpec) -> Value {
    json!({
        "lo": g.lo().iter().map(frac).collect::<Vec<_>>(),
        "hi": g.hi().iter().map(frac).collect::<Vec<_>>(),
        "resolution": frac(g.resolution()),
        "rule": "center",
    })
}

fn betti_json(b: &BettiVector) -> Value {
    json!(b.as_slice())
}

fn scenario(a: &AuditArgs) -> Result<Scenario> {
    let mut sc = match (&a.scenario, &a.system) {
        (Some(name), None) => named_scenario(name, a.r_in.as_ref(), a.r_out.as_ref())?,
        (None, Some(path)) => {
            let polys = system::load(path)?;
            let k = polys
                .first()
                .map(QuadraticPoly::vars)
                .context("system has no polynomials")?;
            let b = a.bbox.as_ref().context("--box LO,HI is required with --system")?;
            let [lo, hi] = b.as_slice() else {
                bail!("--box takes exactly two values");
            };
            let res = a
                .resolution
                .clone()
                .context("--resolution is required with --system")?;
            let stem = path
                .file_stem()
                .map_or("system".into(), |s| s.to_string_lossy().into_owned());
            Scenario::custom(stem, polys, GridSpec::cube(k, lo.clone(), hi.clone(), res)?)?
        }
        _ => bail!("give exactly one of --scenario or --system"),
    };
    if let (Some(res), Some(_)) = (&a.resolution, &a.scenario) {
        sc.grid = GridSpec::new(sc.grid.lo().to_vec(), sc.grid.hi().to_vec(), res.clone())?;
    }
    Ok(sc)
}

fn bound(a: &AuditArgs) -> Result<Report> {
    let sc = scenario(a)?;
    let source = match a.source {
        Some(Source::Oracle) => BettiSource::Oracle,
        Some(Source::Grid) => BettiSource::Grid(sc.grid.clone()),
        None if sc.oracle.is_some() => BettiSource::Oracle,
        None => BettiSource::Grid(sc.grid.clone()),
    };
    let r = bound_audit(&sc, &source)?;
    let row = |row: &BoundRow| {
        json!({
            "i": row.i,
            "betti": row.betti,
            "bound_num": row.bound.numer().to_string(),
            "bound_den": row.bound.denom().to_string(),
            "verdict": row.verdict.as_str(),
        })
    };
    let mut doc = json!({
        "scenario": r.scenario,
        "s": r.s,
        "k": r.k,
        "rows": r.rows.iter().map(row).collect::<Vec<_>>(),
        "overall": r.overall.as_str(),
        "source": match &r.source { BettiSource::Oracle => "oracle", BettiSource::Grid(_) => "grid" },
        "betti": betti_json(&r.betti),
        "total": row(&r.total),
        "notes": r.notes,
    });
    if let Some(simple) = &r.simple {
        doc["simple"] = row(simple);
    }
    if let BettiSource::Grid(g) = &r.source {
        doc["params"] = json!({"grid": grid_json(g)});
    }
    let rows = r
        .rows
        .iter()
        .map(|row| {
            vec![
                row.i.to_string(),
                row.betti.to_string(),
                row.bound.numer().to_string(),
                row.bound.denom().to_string(),
                row.verdict.as_str().to_string(),
            ]
        })
        .collect();
    Ok((
        r.overall,
        doc,
        Some((vec!["i", "betti", "bound_num", "bound_den", "verdict"], rows)),
    ))
}

fn smith(a: &AuditArgs) -> Result<Report> {
    let path = a
        .system
        .as_ref()
        .context("--system is required for the smith audit")?;
    let forms = system::load(path)?;
    let n = forms
        .first()
        .map(QuadraticPoly::vars)
        .context("system has no polynomials")?;
    let h = a.resolution.clone().unwrap_or_else(|| rational::ratio(1, 10));
    let half = &a.radius + &h * int(2);
    let spec = GridSpec::cube(n, -half.clone(), half, h.clone())?;
    let tau = a.tau.clone().unwrap_or_else(|| &h * int(2));
    let r = smith_audit(&forms, &a.radius, &spec, &tau)?;
    let probe = r.probe.as_ref().map(|p| {
        json!({
            "zeros_found": p.zeros_found,
            "min_singular_value": p.min_singular_value,
            "verdict": format!("{:?}", p.verdict),
        })
    });
    let doc = json!({
        "audit": "smith",
        "j": r.j,
        "k": r.k,
        "sphere_betti": betti_json(&r.sphere_betti),
        "sphere_total": r.sphere_total,
        "projective_total": r.projective_total,
        "complex_total": r.complex_total.to_string(),
        "probe": probe,
        "overall": r.verdict.as_str(),
        "params": {"grid": grid_json(&spec), "radius": frac(&a.radius), "tau": frac(&tau)},
        "notes": r.notes,
    });
    Ok((r.verdict, doc, None))
}

fn lifting(a: &AuditArgs, sc: &Scenario) -> Result<(DeformationParams, GridSpec)> {
    let params = DeformationParams::new(a.eps.clone(), a.delta.clone(), int(0))?;
    let spec = lifted_grid(sc.k, &params, a.cells_per_radius)?;
    Ok((params, spec))
}

fn params_json(p: &DeformationParams, spec: &GridSpec) -> Value {
    json!({"eps": frac(p.eps()), "delta": frac(p.delta()), "grid": grid_json(spec)})
}

fn double_cover(a: &AuditArgs) -> Result<Report> {
    let sc = scenario(a)?;
    let (params, spec) = lifting(a, &sc)?;
    let r = double_cover_audit(&sc, &params, &spec)?;
    let doc = json!({
        "audit": "double-cover",
        "scenario": r.scenario,
        "base": betti_json(&r.base),
        "lifted": betti_json(&r.lifted),
        "oracle": r.oracle.as_ref().map(betti_json),
        "overall": r.verdict.as_str(),
        "params": params_json(&params, &spec),
        "notes": r.notes,
    });
    Ok((r.verdict, doc, None))
}

fn deformation(a: &AuditArgs) -> Result<Report> {
    let sc = scenario(a)?;
    let (params, spec) = lifting(a, &sc)?;
    let t =
        a.t.clone()
            .unwrap_or_else(|| vec![int(0), params.delta().clone()]);
    let r = deformation_audit(&sc, &params, &t, &spec, a.seed)?;
    let samples: Vec<Value> = r
        .samples
        .iter()
        .map(|(t, b)| json!({"t": frac(t), "betti": betti_json(b)}))
        .collect();
    let mut p = params_json(&params, &spec);
    p["seed"] = json!(a.seed);
    let doc = json!({
        "audit": "deformation",
        "scenario": r.scenario,
        "samples": samples,
        "constant": r.constant,
        "overall": r.verdict.as_str(),
        "params": p,
        "notes": r.notes,
    });
    Ok((r.verdict, doc, None))
}

fn parse_piece(s: &str) -> Result<(Vec<usize>, BettiVector)> {
    let (members, betti) = s
        .split_once(':')
        .with_context(|| format!("piece {s:?} is not MEMBERS:BETTI"))?;
    let members = parse_list::<usize>(members).map_err(anyhow::Error::msg)?;
    let betti = parse_list::<usize>(betti).map_err(anyhow::Error::msg)?;
    Ok((members, BettiVector(betti)))
}

fn mv(a: &AuditArgs) -> Result<Report> {
    let union = BettiVector(a.union.clone().context("--union is required for the mv audit")?);
    let pieces: Vec<_> = a.piece.iter().map(|p| parse_piece(p)).collect::<Result<_>>()?;
    let l = pieces
        .iter()
        .flat_map(|(m, _)| m.iter().copied())
        .max()
        .context("at least one --piece is required")?;
    let mut family = SubsetFamily::new(l)?;
    for (m, b) in pieces {
        family.insert(&m, b)?;
    }
    let degrees: Vec<usize> = match a.degree {
        Some(i) => vec![i],
        None => (0..union.len()).collect(),
    };
    let checks = degrees
        .iter()
        .map(|&i| mayer_vietoris_audit(&union, &family, i))
        .collect::<quadbetti_core::Result<Vec<_>>>()?;
    let overall = Verdict::all(checks.iter().map(|c| c.verdict));
    let doc = json!({
        "audit": "mayer-vietoris",
        "pieces": l,
        "checks": checks.iter().map(|c| json!({
            "degree": c.degree,
            "union_betti": c.union_betti,
            "bound": c.bound,
            "verdict": c.verdict.as_str(),
        })).collect::<Vec<_>>(),
        "overall": overall.as_str(),
    });
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                c.degree.to_string(),
                c.union_betti.to_string(),
                c.bound.to_string(),
                c.verdict.as_str().to_string(),
            ]
        })
        .collect();
    Ok((
        overall,
        doc,
        Some((vec!["degree", "union_betti", "bound", "verdict"], rows)),
    ))
}

fn alexander(a: &AuditArgs) -> Result<Report> {
    if a.size < 2 {
        bail!("--size must be at least 2");
    }
    if let Some(h) = a.heights.iter().find(|&&h| h <= 0 || h >= a.size) {
        bail!("height {h} is not strictly inside 0..{}", a.size);
    }
    let n = a.size;
    let sphere = box_boundary(&[0, 0, 0], &[n, n, n]);
    let cells: Vec<_> = sphere
        .cells(1)
        .iter()
        .filter(|c| a.heights.iter().any(|&z| c.doubled()[2] == 2 * z))
        .cloned()
        .collect();
    let circles = close_under_faces(3, cells)?;
    let r = alexander_duality_audit(&sphere, &circles)?;
    let doc = json!({
        "audit": "alexander",
        "sphere_dim": r.sphere_dim,
        "complement_reduced": r.complement_reduced,
        "dual_reduced": r.dual_reduced,
        "overall": r.verdict.as_str(),
    });
    Ok((r.verdict, doc, None))
}
