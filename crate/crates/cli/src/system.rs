//! Quadratic system documents:
//!
//! ```json
//! {"k": 2, "polys": [{"quad": [["1", "0"], ["0", "1"]], "lin": ["0", "0"], "const": "-1"}]}
//! ```
//!
//! Each poly is `x^T quad x + lin . x + const`. Coefficients are strings
//! `"p/q"` or `"p"`; JSON integers are accepted, floats are not. `lin` and
//! `const` default to zero.

use std::path::Path;

use anyhow::{bail, Context, Result};
use quadbetti_core::quadratic::QuadraticPoly;
use quadbetti_core::rational::{self, int, Rational};
#[cfg(test)]
use serde_json::json;
use serde_json::Value;

fn coeff(v: &Value, at: &str) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s).with_context(|| format!("{at}: {s:?}")),
        Value::Number(n) => match n.as_i64() {
            Some(i) if !n.to_string().contains(['.', 'e', 'E']) => Ok(int(i)),
            _ => bail!("{at}: {n} is not an exact rational; write it as \"p/q\""),
        },
        _ => bail!("{at}: expected a rational string"),
    }
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().with_context(|| format!("{at}: expected a list"))
}

pub fn parse(text: &str) -> Result<Vec<QuadraticPoly>> {
    let doc: Value = serde_json::from_str(text).context("system document is not valid JSON")?;
    let k = doc
        .get("k")
        .and_then(Value::as_u64)
        .context("missing integer field k")? as usize;
    if k == 0 {
        bail!("k must be positive");
    }
    let polys = array(doc.get("polys").context("missing field polys")?, "polys")?;
    let mut out = Vec::with_capacity(polys.len());
    for (n, p) in polys.iter().enumerate() {
        let at = format!("polys[{n}]");
        let quad = match p.get("quad") {
            None => vec![vec![int(0); k]; k],
            Some(q) => {
                let rows = array(q, &format!("{at}.quad"))?;
                if rows.len() != k {
                    bail!("{at}.quad: expected {k} rows, got {}", rows.len());
                }
                let mut m = Vec::with_capacity(k);
                for (r, row) in rows.iter().enumerate() {
                    let row = array(row, &format!("{at}.quad[{r}]"))?;
                    if row.len() != k {
                        bail!("{at}.quad[{r}]: expected {k} entries, got {}", row.len());
                    }
                    m.push(
                        row.iter()
                            .enumerate()
                            .map(|(c, v)| coeff(v, &format!("{at}.quad[{r}][{c}]")))
                            .collect::<Result<Vec<_>>>()?,
                    );
                }
                m
            }
        };
        let lin = match p.get("lin") {
            None => vec![int(0); k],
            Some(l) => {
                let l = array(l, &format!("{at}.lin"))?;
                if l.len() != k {
                    bail!("{at}.lin: expected {k} entries, got {}", l.len());
                }
                l.iter()
                    .enumerate()
                    .map(|(c, v)| coeff(v, &format!("{at}.lin[{c}]")))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        let constant = match p.get("const") {
            None => int(0),
            Some(c) => coeff(c, &format!("{at}.const"))?,
        };
        out.push(QuadraticPoly::new(quad, lin, constant).with_context(|| at.clone())?);
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Vec<QuadraticPoly>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}

#[cfg(test)]
pub fn to_json(k: usize, polys: &[QuadraticPoly]) -> Value {
    let s = |r: &Rational| json!(rational::to_string(r));
    json!({
        "k": k,
        "polys": polys.iter().map(|p| json!({
            "quad": p.quad().iter().map(|row| row.iter().map(s).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "lin": p.lin().iter().map(s).collect::<Vec<_>>(),
            "const": s(p.constant()),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadbetti_core::rational::ratio;

    #[test]
    fn round_trip() {
        let text = r#"{"k": 2, "polys": [{"quad": [["1", "1/2"], ["1/2", "0"]], "lin": [0, "-3"], "const": "7/4"}]}"#;
        let polys = parse(text).unwrap();
        assert_eq!(polys[0].constant(), &ratio(7, 4));
        assert_eq!(polys[0].quad()[0][1], ratio(1, 2));
        let again = parse(&to_json(2, &polys).to_string()).unwrap();
        assert_eq!(again, polys);
    }

    #[test]
    fn rejects_floats_and_bad_shapes() {
        assert!(parse(r#"{"k": 1, "polys": [{"const": 0.5}]}"#).is_err());
        assert!(parse(r#"{"k": 1, "polys": [{"const": "0.5"}]}"#).is_err());
        assert!(parse(r#"{"k": 1, "polys": [{"const": 1e3}]}"#).is_err());
        assert!(parse(r#"{"k": 2, "polys": [{"lin": ["1"]}]}"#).is_err());
        assert!(parse(r#"{"k": 2, "polys": [{"quad": [["0", "1"], ["0", "0"]]}]}"#).is_err());
        assert!(parse(r#"{"polys": []}"#).is_err());
    }
}
