//! Curated scenarios with independently known topology.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::cubical::BettiVector;
use crate::error::{domain, Result};
use crate::grid::GridSpec;
use crate::quadratic::QuadraticPoly;
use crate::rational::{self, int, ratio, Rational};

/// Ground-truth Betti numbers together with where they come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub betti: BettiVector,
    pub provenance: &'static str,
}

/// A set `S = {P_1 >= 0, ..., P_s >= 0}` in `R^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub system: Vec<QuadraticPoly>,
    pub k: usize,
    pub oracle: Option<Oracle>,
    /// Grid on which the center rule reproduces the oracle.
    pub grid: GridSpec,
    /// Squared radius of a ball outside of which the topology of `S` does
    /// not change; `None` when unknown.
    pub extent_sq: Option<Rational>,
}

impl Scenario {
    pub fn s(&self) -> usize {
        self.system.len()
    }

    /// A user-supplied system without an oracle.
    pub fn custom(name: impl Into<String>, system: Vec<QuadraticPoly>, grid: GridSpec) -> Result<Self> {
        let k = grid.dim();
        if let Some(p) = system.iter().find(|p| p.vars() != k) {
            return Err(crate::Error::DimensionMismatch {
                expected: k,
                got: p.vars(),
            });
        }
        Ok(Scenario {
            name: name.into(),
            system,
            k,
            oracle: None,
            grid,
            extent_sq: None,
        })
    }
}

fn unit_betti(k: usize, b0: usize) -> BettiVector {
    let mut v = vec![0; k + 1];
    v[0] = b0;
    BettiVector(v)
}

/// `X_1 (X_1 - 1) >= 0, ..., X_k (X_k - 1) >= 0`: `2^k` contractible
/// pieces. The grid `[-1, 2]^k` at resolution 1/4 reproduces them exactly
/// since no cell center lands on `0` or `1`.
pub fn scenario_products(k: usize) -> Result<Scenario> {
    if !(1..=6).contains(&k) {
        return Err(domain(format!("products scenario needs 1 <= k <= 6, got {k}")));
    }
    let system = (0..k)
        .map(|i| {
            QuadraticPoly::zero(k)
                .with_monomial(i, i, int(1))
                .with_linear(i, int(-1))
        })
        .collect();
    Ok(Scenario {
        name: format!("products_k{k}"),
        system,
        k,
        oracle: Some(Oracle {
            // product of k copies of two disjoint half-lines
            betti: unit_betti(k, 1 << k),
            provenance: "product of k two-component sets {x <= 0} u {x >= 1}",
        }),
        grid: GridSpec::cube(k, int(-1), int(2), ratio(1, 4))?,
        extent_sq: Some(int(k as i64)),
    })
}

/// `r_out^2 - |x|^2 >= 0, |x|^2 - r_in^2 >= 0`: a spherical shell,
/// homotopy equivalent to the `(k-1)`-sphere.
pub fn scenario_shell(k: usize, r_in: &Rational, r_out: &Rational) -> Result<Scenario> {
    if !(2..=3).contains(&k) {
        return Err(domain(format!("shell scenario needs k in 2..=3, got {k}")));
    }
    if !r_in.is_positive() || r_in >= r_out {
        return Err(domain("shell needs 0 < r_in < r_out"));
    }
    let outer = QuadraticPoly::norm_squared(k).neg().with_constant(r_out * r_out);
    let inner = QuadraticPoly::norm_squared(k).with_constant(-(r_in * r_in));
    let cells_across = if k == 2 { 10 } else { 5 };
    let res = (r_out - r_in) / int(cells_across);
    let half = rational::from_big(rational::floor(&(r_out / &res)) + 3) * &res;
    let mut betti = vec![0; k + 1];
    betti[0] = 1;
    betti[k - 1] += 1;
    Ok(Scenario {
        name: format!(
            "shell_k{k}_{}_{}",
            rational::to_string(r_in),
            rational::to_string(r_out)
        ),
        system: vec![outer, inner],
        k,
        oracle: Some(Oracle {
            // radial deformation retraction onto the middle sphere
            betti: BettiVector(betti),
            provenance: "shell retracts radially onto a (k-1)-sphere",
        }),
        grid: GridSpec::cube(k, -half.clone(), half, res)?,
        extent_sq: Some(r_out * r_out),
    })
}

/// No inequalities: `S = R^k`.
pub fn scenario_empty(k: usize) -> Result<Scenario> {
    if k == 0 {
        return Err(domain("need k >= 1"));
    }
    Ok(Scenario {
        name: format!("empty_k{k}"),
        system: Vec::new(),
        k,
        oracle: Some(Oracle {
            betti: unit_betti(k, 1),
            provenance: "affine space is contractible",
        }),
        grid: GridSpec::cube(k, int(-1), int(1), ratio(1, 2))?,
        extent_sq: Some(Rational::zero()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::grid_complex;

    #[test]
    fn product_oracles() {
        assert_eq!(
            scenario_products(1).unwrap().oracle.unwrap().betti,
            BettiVector(vec![2, 0])
        );
        assert_eq!(
            scenario_products(3).unwrap().oracle.unwrap().betti,
            BettiVector(vec![8, 0, 0, 0])
        );
        assert!(scenario_products(0).is_err());
        assert!(scenario_products(7).is_err());
    }

    #[test]
    fn product_grid_k2() {
        let sc = scenario_products(2).unwrap();
        let c = grid_complex(&sc.system, &sc.grid).unwrap();
        assert_eq!(c.betti(), BettiVector(vec![4, 0, 0]));
    }

    #[test]
    fn shell_oracles_and_grids() {
        let sc = scenario_shell(2, &ratio(1, 2), &int(1)).unwrap();
        assert_eq!(sc.oracle.as_ref().unwrap().betti, BettiVector(vec![1, 1, 0]));
        assert_eq!(sc.grid.resolution(), &ratio(1, 20));
        assert_eq!(sc.s(), 2);
        let sc3 = scenario_shell(3, &ratio(1, 2), &int(1)).unwrap();
        assert_eq!(sc3.oracle.as_ref().unwrap().betti, BettiVector(vec![1, 0, 1, 0]));
        assert_eq!(sc3.grid.resolution(), &ratio(1, 10));
        assert!(scenario_shell(2, &int(1), &int(1)).is_err());
        assert!(scenario_shell(2, &int(0), &int(1)).is_err());
        assert!(scenario_shell(4, &ratio(1, 2), &int(1)).is_err());
    }
}
