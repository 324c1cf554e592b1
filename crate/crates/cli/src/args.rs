use std::ops::RangeInclusive;

use anyhow::{bail, Context, Result};
use quadbetti_core::harness::{scenario_empty, scenario_products, scenario_shell, Scenario};
use quadbetti_core::rational::{self, int, ratio, Rational};

/// `N` or `A..B` (inclusive).
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad integer {t:?}: {e}"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => {
            let n = num(s)?;
            Ok(n..=n)
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<T>().map_err(|e| format!("bad entry {t:?}: {e}")))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `products-K`, `shell-K` or `empty-K`.
pub fn named_scenario(name: &str, r_in: Option<&Rational>, r_out: Option<&Rational>) -> Result<Scenario> {
    let (family, k) = name
        .rsplit_once('-')
        .with_context(|| format!("scenario {name:?} is not of the form FAMILY-K"))?;
    let k: usize = k.parse().with_context(|| format!("bad dimension in {name:?}"))?;
    let sc = match family {
        "products" => scenario_products(k)?,
        "shell" => {
            let half = ratio(1, 2);
            let one = int(1);
            scenario_shell(k, r_in.unwrap_or(&half), r_out.unwrap_or(&one))?
        }
        "empty" => scenario_empty(k)?,
        _ => bail!("unknown scenario family {family:?} (products, shell, empty)"),
    };
    Ok(sc)
}
