//! Closed formulas and recurrences for Betti numbers.
//!
//! Two families live here:
//!
//! * totals of Z/2 Betti numbers of nonsingular complex complete
//!   intersections of codimension `j` in projective `k`-space, as a function
//!   of the degree sequence ([`c_ci`], [`b_ci`]) and the all-quadric
//!   specialisation ([`q_quad`], [`b_quad`]);
//! * upper bounds on the Betti numbers of a set in `R^k` cut out by `s`
//!   inequalities of degree at most two ([`bound_betti`],
//!   [`bound_aggregate`]).
//!
//! Everything is evaluated with arbitrary-precision integers. Halved bounds
//! are returned as exact rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::rational::{self, Rational};

/// Degrees `(d_1, ..., d_j)` of the hypersurfaces cutting out a complete
/// intersection. Every entry is at least one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.contains(&0) {
            return Err(domain("degrees must be at least 1"));
        }
        Ok(DegreeSequence(degrees))
    }

    /// `(2, 2, ..., 2)` of length `j`.
    pub fn quadrics(j: usize) -> Self {
        DegreeSequence(vec![2; j])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }
}

/// Hypotheses of the per-degree bound: `1 <= s <= k`, `0 <= i <= k - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundQuery {
    s: u32,
    k: u32,
    i: u32,
}

impl BoundQuery {
    pub fn new(s: u32, k: u32, i: u32) -> Result<Self> {
        if s < 1 || s > k {
            return Err(domain(alloc::format!("need 1 <= s <= k, got s={s}, k={k}")));
        }
        if i >= k {
            return Err(domain(alloc::format!("need 0 <= i <= k-1, got i={i}, k={k}")));
        }
        Ok(BoundQuery { s, k, i })
    }

    pub fn s(&self) -> u32 {
        self.s
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn i(&self) -> u32 {
        self.i
    }
}

pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for t in 0..r {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

fn check_jk(j: usize, k: usize) -> Result<()> {
    if j > k {
        return Err(domain(alloc::format!("need 0 <= j <= k, got j={j}, k={k}")));
    }
    Ok(())
}

fn parity_branch(j: usize, k: usize, c: BigInt) -> BigInt {
    if (k - j) % 2 == 0 {
        c
    } else {
        BigInt::from(2 * (k - j + 1)) - c
    }
}

/// `q(j, k)`: `k + 1` for `j = 0`, `2^j` for `j = k`, otherwise
/// `2 q(j-1, k-1) - q(j, k-1)`. May be negative.
pub fn q_quad(j: usize, k: usize) -> Result<BigInt> {
    check_jk(j, k)?;
    // row[jj] holds q(jj, kk) for the current kk
    let mut row: Vec<BigInt> = Vec::with_capacity(j + 1);
    for kk in 0..=k {
        let top = j.min(kk);
        let mut next = Vec::with_capacity(top + 1);
        for jj in 0..=top {
            let v = if jj == 0 {
                BigInt::from(kk + 1)
            } else if jj == kk {
                BigInt::one() << jj
            } else {
                (&row[jj - 1] << 1usize) - &row[jj]
            };
            next.push(v);
        }
        row = next;
    }
    Ok(row.swap_remove(j))
}

/// Total Betti number of a nonsingular complete intersection of `j`
/// quadrics in complex projective `k`-space.
pub fn b_quad(j: usize, k: usize) -> Result<BigInt> {
    let q = q_quad(j, k)?;
    Ok(parity_branch(j, k, q))
}

/// `c(j, k, d)`: `k + 1` for `j = 0`, `d_1 ... d_j` for `j = k`, otherwise
/// `d_j c(j-1, k-1, (d_1..d_{j-1})) - (d_j - 1) c(j, k-1, d)`.
pub fn c_ci(j: usize, k: usize, d: &DegreeSequence) -> Result<BigInt> {
    check_jk(j, k)?;
    if d.len() != j {
        return Err(domain(alloc::format!(
            "degree sequence has length {}, expected j={j}",
            d.len()
        )));
    }
    let degs = d.degrees();
    // row[jj] holds c(jj, kk, (d_1..d_jj)) for the current kk
    let mut row: Vec<BigInt> = Vec::with_capacity(j + 1);
    let mut prefix_products = Vec::with_capacity(j + 1);
    prefix_products.push(BigInt::one());
    for &deg in degs {
        let p = prefix_products.last().unwrap() * BigInt::from(deg);
        prefix_products.push(p);
    }
    for kk in 0..=k {
        let top = j.min(kk);
        let mut next = Vec::with_capacity(top + 1);
        for jj in 0..=top {
            let v = if jj == 0 {
                BigInt::from(kk + 1)
            } else if jj == kk {
                prefix_products[jj].clone()
            } else {
                let dj = BigInt::from(degs[jj - 1]);
                &dj * &row[jj - 1] - (&dj - 1) * &row[jj]
            };
            next.push(v);
        }
        row = next;
    }
    Ok(row.swap_remove(j))
}

/// Total Z/2 Betti number of a nonsingular complete intersection with
/// degree sequence `d` in complex projective `k`-space.
pub fn b_ci(j: usize, k: usize, d: &DegreeSequence) -> Result<BigInt> {
    let c = c_ci(j, k, d)?;
    Ok(parity_branch(j, k, c))
}

fn halved_sum(s: u32, k: u32, upper: u32) -> BigInt {
    let mut sum = BigInt::zero();
    for j in 0..=upper.min(s) {
        sum += (binomial(s as u64, j as u64) * binomial(k as u64 + 1, j as u64)) << j as usize;
    }
    sum
}

/// `1/2 * sum_{j=0}^{min(s, k-i)} C(s,j) C(k+1,j) 2^j`, unrounded.
pub fn bound_betti(q: BoundQuery) -> Rational {
    let sum = halved_sum(q.s, q.k, q.k - q.i);
    Rational::new(sum, BigInt::from(2))
}

/// Integer part of [`bound_betti`]; Betti numbers are integers so this is
/// the effective bound.
pub fn bound_betti_floor(q: BoundQuery) -> BigInt {
    rational::floor(&bound_betti(q))
}

/// Aggregate forms of the bound. Each field is present only when its own
/// hypotheses hold.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregateBound {
    /// `1/2 * 3^s * C(k+1, s)`, for `2 <= s <= k/2`.
    pub simple: Option<Rational>,
    /// `1/2 * (3e(k+1)/s)^s` in floating point, for `2 <= s <= k/2`.
    /// Not exact.
    pub exp_form: Option<f64>,
    /// Bound on the total Betti number:
    /// `1/2 * k * sum_{j=0}^{s} C(s,j) C(k+1,j) 2^j`, for `1 <= s <= k`.
    pub total: Option<Rational>,
}

pub fn bound_aggregate(s: u32, k: u32) -> Result<AggregateBound> {
    let total_ok = 1 <= s && s <= k;
    let simple_ok = 2 <= s && 2 * s <= k;
    if !total_ok {
        return Err(domain(alloc::format!("need 1 <= s <= k, got s={s}, k={k}")));
    }
    let total = Rational::new(BigInt::from(k) * halved_sum(s, k, s), BigInt::from(2));
    let (simple, exp_form) = if simple_ok {
        let simple = Rational::new(
            num_traits::pow(BigInt::from(3), s as usize) * binomial(k as u64 + 1, s as u64),
            BigInt::from(2),
        );
        let base = 3.0 * core::f64::consts::E * (k as f64 + 1.0) / s as f64;
        (Some(simple), Some(0.5 * libm::pow(base, s as f64)))
    } else {
        (None, None)
    };
    Ok(AggregateBound {
        simple,
        exp_form,
        total: Some(total),
    })
}

/// Reference curves from the classical general-degree and Barvinok-type
/// bounds with every hidden constant set to 1: `(s d)^k` with `d = 2`, and
/// `k^s`. Illustrative only; these are not rigorous bounds.
pub fn classical_reference(s: u32, k: u32) -> (BigInt, BigInt) {
    let sd_k = num_traits::pow(BigInt::from(2 * s), k as usize);
    let k_s = num_traits::pow(BigInt::from(k), s as usize);
    (sd_k, k_s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn degs(d: &[u32]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec()).unwrap()
    }

    #[test]
    fn q_quad_examples() {
        assert_eq!(q_quad(0, 5).unwrap(), big(6));
        assert_eq!(q_quad(3, 3).unwrap(), big(8));
        assert_eq!(q_quad(2, 3).unwrap(), big(0));
        assert!(q_quad(4, 3).is_err());
    }

    #[test]
    fn b_quad_examples() {
        assert_eq!(b_quad(1, 3).unwrap(), big(4));
        assert_eq!(b_quad(2, 3).unwrap(), big(4));
        assert_eq!(b_quad(4, 4).unwrap(), big(16));
    }

    #[test]
    fn c_ci_examples() {
        assert_eq!(c_ci(0, 7, &DegreeSequence::default()).unwrap(), big(8));
        assert_eq!(c_ci(2, 2, &degs(&[2, 2])).unwrap(), big(4));
        assert_eq!(c_ci(1, 3, &degs(&[4])).unwrap(), big(24));
    }

    #[test]
    fn b_ci_examples() {
        assert_eq!(b_ci(1, 2, &degs(&[3])).unwrap(), big(4));
        assert_eq!(b_ci(1, 3, &degs(&[2])).unwrap(), big(4));
        assert_eq!(b_ci(3, 3, &degs(&[2, 2, 2])).unwrap(), big(8));
    }

    #[test]
    fn c_ci_rejects_bad_shapes() {
        assert!(c_ci(2, 3, &degs(&[2])).is_err());
        assert!(c_ci(3, 2, &degs(&[2, 2, 2])).is_err());
        assert!(c_ci(0, 3, &degs(&[2])).is_err());
        assert!(DegreeSequence::new(alloc::vec![2, 0]).is_err());
    }

    #[test]
    fn bound_betti_examples() {
        let b = |s, k, i| bound_betti(BoundQuery::new(s, k, i).unwrap());
        assert_eq!(b(1, 1, 0), ratio(5, 2));
        assert_eq!(b(2, 4, 0), ratio(61, 2));
        assert_eq!(b(3, 6, 5), ratio(43, 2));
        assert_eq!(bound_betti_floor(BoundQuery::new(2, 4, 0).unwrap()), big(30));
    }

    #[test]
    fn bound_query_domain() {
        assert!(BoundQuery::new(0, 3, 0).is_err());
        assert!(BoundQuery::new(4, 3, 0).is_err());
        assert!(BoundQuery::new(2, 3, 3).is_err());
        assert!(BoundQuery::new(3, 3, 2).is_ok());
    }

    #[test]
    fn aggregate_examples() {
        let a = bound_aggregate(2, 4).unwrap();
        assert_eq!(a.simple, Some(ratio(45, 1)));
        assert_eq!(bound_aggregate(1, 2).unwrap().total, Some(ratio(7, 1)));
        assert_eq!(bound_aggregate(1, 2).unwrap().simple, None);
        assert_eq!(bound_aggregate(2, 5).unwrap().simple, Some(ratio(135, 2)));
        assert!(bound_aggregate(0, 5).is_err());
        assert!(bound_aggregate(6, 5).is_err());
    }

    #[test]
    fn binomials_past_u64() {
        // C(100, 50) has 30 digits
        let c = binomial(100, 50);
        assert_eq!(alloc::format!("{c}"), "100891344545564193334812497256");
        assert_eq!(binomial(3, 5), big(0));
    }
}
