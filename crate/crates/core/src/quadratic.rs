//! Exact polynomials of degree at most two and quadratic forms.
//!
//! A [`QuadraticPoly`] in `k` variables is `x^T A x + b^T x + c` with `A`
//! symmetric. A [`QuadraticForm`] in `n` variables is `x^T M x`. Both carry
//! exact rational coefficients; a mixed term `X_i X_j` with coefficient `a`
//! shows up as `a/2` in both off-diagonal entries.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};

use crate::error::{domain, Error, Result};
use crate::rational::{int, Rational};

pub type Matrix = Vec<Vec<Rational>>;

fn zero_matrix(n: usize) -> Matrix {
    vec![vec![Rational::zero(); n]; n]
}

fn check_square_symmetric(m: &Matrix, n: usize) -> Result<()> {
    if m.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m.len(),
        });
    }
    for row in m {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(domain("quadratic part must be symmetric"));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticPoly {
    quad: Matrix,
    lin: Vec<Rational>,
    constant: Rational,
}

impl QuadraticPoly {
    pub fn new(quad: Matrix, lin: Vec<Rational>, constant: Rational) -> Result<Self> {
        let k = lin.len();
        check_square_symmetric(&quad, k)?;
        Ok(QuadraticPoly { quad, lin, constant })
    }

    pub fn zero(k: usize) -> Self {
        QuadraticPoly {
            quad: zero_matrix(k),
            lin: vec![Rational::zero(); k],
            constant: Rational::zero(),
        }
    }

    pub fn constant_poly(k: usize, c: Rational) -> Self {
        let mut p = Self::zero(k);
        p.constant = c;
        p
    }

    /// `sum_i X_i^2`.
    pub fn norm_squared(k: usize) -> Self {
        let mut p = Self::zero(k);
        for i in 0..k {
            p.quad[i][i] = Rational::one();
        }
        p
    }

    /// Adds `coeff * X_i * X_j` (0-based indices).
    pub fn with_monomial(mut self, i: usize, j: usize, coeff: Rational) -> Self {
        if i == j {
            self.quad[i][i] += coeff;
        } else {
            let half = coeff / int(2);
            self.quad[i][j] += half.clone();
            self.quad[j][i] += half;
        }
        self
    }

    /// Adds `coeff * X_i`.
    pub fn with_linear(mut self, i: usize, coeff: Rational) -> Self {
        self.lin[i] += coeff;
        self
    }

    pub fn with_constant(mut self, coeff: Rational) -> Self {
        self.constant += coeff;
        self
    }

    pub fn vars(&self) -> usize {
        self.lin.len()
    }

    pub fn quad(&self) -> &Matrix {
        &self.quad
    }

    pub fn lin(&self) -> &[Rational] {
        &self.lin
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    /// Total degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<u32> {
        if self.quad.iter().flatten().any(|a| !a.is_zero()) {
            Some(2)
        } else if self.lin.iter().any(|a| !a.is_zero()) {
            Some(1)
        } else if !self.constant.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.vars(), "point has wrong dimension");
        let mut acc = self.constant.clone();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            let mut row = self.lin[i].clone();
            for j in 0..x.len() {
                if !self.quad[i][j].is_zero() {
                    row += &self.quad[i][j] * &x[j];
                }
            }
            acc += row * &x[i];
        }
        acc
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        QuadraticPoly {
            quad: self
                .quad
                .iter()
                .map(|r| r.iter().map(|a| a * factor).collect())
                .collect(),
            lin: self.lin.iter().map(|a| a * factor).collect(),
            constant: &self.constant * factor,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.vars() != other.vars() {
            return Err(Error::DimensionMismatch {
                expected: self.vars(),
                got: other.vars(),
            });
        }
        Ok(QuadraticPoly {
            quad: self
                .quad
                .iter()
                .zip(&other.quad)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
            lin: self.lin.iter().zip(&other.lin).map(|(x, y)| x + y).collect(),
            constant: &self.constant + &other.constant,
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// `(1 - t) self + t other`.
    pub fn lerp(&self, other: &Self, t: &Rational) -> Result<Self> {
        self.scale(&(Rational::one() - t)).add(&other.scale(t))
    }

    /// Degree-two homogenization in `k + 1` variables: linear terms pick up
    /// `X_{k+1}`, the constant becomes a multiple of `X_{k+1}^2`.
    pub fn homogenize(&self) -> QuadraticForm {
        let k = self.vars();
        let mut m = zero_matrix(k + 1);
        for i in 0..k {
            for j in 0..k {
                m[i][j] = self.quad[i][j].clone();
            }
            let half = &self.lin[i] / int(2);
            m[i][k] = half.clone();
            m[k][i] = half;
        }
        m[k][k] = self.constant.clone();
        QuadraticForm { m }
    }

    /// Substitutes `x = offset + scale * y` and returns the polynomial in `y`.
    pub fn affine_substitute(&self, offset: &[Rational], scale: &Rational) -> QuadraticPoly {
        let k = self.vars();
        assert_eq!(offset.len(), k);
        // x^T A x = s^2 y^T A y + 2 s (A o)^T y + o^T A o
        let a_o: Vec<Rational> = (0..k)
            .map(|i| (0..k).map(|j| &self.quad[i][j] * &offset[j]).sum())
            .collect();
        let quad = self
            .quad
            .iter()
            .map(|r| r.iter().map(|a| a * scale * scale).collect())
            .collect();
        let lin = (0..k)
            .map(|i| (&a_o[i] * int(2) + &self.lin[i]) * scale)
            .collect();
        let constant = self.eval(offset);
        QuadraticPoly { quad, lin, constant }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    m: Matrix,
}

impl QuadraticForm {
    pub fn new(m: Matrix) -> Result<Self> {
        let n = m.len();
        check_square_symmetric(&m, n)?;
        Ok(QuadraticForm { m })
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = zero_matrix(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[i][i] = e.clone();
        }
        QuadraticForm { m }
    }

    /// `sum_i X_i^2` in `n` variables.
    pub fn sum_of_squares(n: usize) -> Self {
        Self::diagonal(&vec![Rational::one(); n])
    }

    pub fn vars(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.to_poly().eval(x)
    }

    pub fn to_poly(&self) -> QuadraticPoly {
        let n = self.vars();
        QuadraticPoly {
            quad: self.m.clone(),
            lin: vec![Rational::zero(); n],
            constant: Rational::zero(),
        }
    }

    /// Sets the last variable to 1, giving a polynomial in `n - 1`
    /// variables. Inverse of [`QuadraticPoly::homogenize`].
    pub fn dehomogenize(&self) -> QuadraticPoly {
        let n = self.vars();
        assert!(n >= 1, "cannot dehomogenize a form in zero variables");
        let k = n - 1;
        let quad = (0..k).map(|i| self.m[i][..k].to_vec()).collect();
        let lin = (0..k).map(|i| &self.m[i][k] * int(2)).collect();
        QuadraticPoly {
            quad,
            lin,
            constant: self.m[k][k].clone(),
        }
    }

    /// Leading principal minors `det M[..1][..1], ..., det M`.
    pub fn leading_principal_minors(&self) -> Vec<Rational> {
        (1..=self.vars())
            .map(|r| {
                determinant(
                    &self.m[..r]
                        .iter()
                        .map(|row| row[..r].to_vec())
                        .collect::<Vec<_>>(),
                )
            })
            .collect()
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.m)
    }
}

impl TryFrom<&QuadraticPoly> for QuadraticForm {
    type Error = Error;

    /// Accepts only polynomials with no linear or constant part.
    fn try_from(p: &QuadraticPoly) -> Result<Self> {
        if p.lin.iter().any(|a| !a.is_zero()) || !p.constant.is_zero() {
            return Err(domain(
                "not a quadratic form: polynomial has linear or constant terms",
            ));
        }
        Ok(QuadraticForm { m: p.quad.clone() })
    }
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// `(2/eps)^2 - sum_{i=1}^{k+1} X_i^2`, a polynomial in `k + 1` variables
/// whose zero set is the sphere of radius `2/eps`.
pub fn make_p_eps(eps: &Rational, k: usize) -> Result<QuadraticPoly> {
    if !eps.is_positive() {
        return Err(domain("eps must be positive"));
    }
    let r = int(2) / eps;
    Ok(QuadraticPoly::norm_squared(k + 1).neg().with_constant(&r * &r))
}

/// Seeded positive definite form `G^T G + I` where `G` has integer entries
/// drawn uniformly from `-3..=3`.
pub fn random_pd_form(n: usize, seed: u64) -> Result<QuadraticForm> {
    if n < 1 {
        return Err(domain("need at least one variable"));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let g: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-3i64..=3)).collect())
        .collect();
    let mut m = zero_matrix(n);
    for i in 0..n {
        for j in 0..n {
            let dot: i64 = (0..n).map(|r| g[r][i] * g[r][j]).sum();
            m[i][j] = int(dot + i64::from(i == j));
        }
    }
    Ok(QuadraticForm { m })
}

/// `(1 - t) q + t h`, coefficientwise.
pub fn deform(q: &QuadraticForm, h: &QuadraticForm, t: &Rational) -> Result<QuadraticForm> {
    if q.vars() != h.vars() {
        return Err(Error::DimensionMismatch {
            expected: q.vars(),
            got: h.vars(),
        });
    }
    if t.is_negative() || *t > Rational::one() {
        return Err(domain("deformation time must lie in [0, 1]"));
    }
    let s = Rational::one() - t;
    let m =
        q.m.iter()
            .zip(&h.m)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x * &s + y * t).collect())
            .collect();
    Ok(QuadraticForm { m })
}

/// All leading principal minors strictly positive.
pub fn is_positive_definite(f: &QuadraticForm) -> bool {
    f.vars() > 0 && f.leading_principal_minors().iter().all(|d| d.is_positive())
}

/// A quadric hypersurface `x^T M x = 0` is smooth iff `M` is invertible.
pub fn is_nonsingular_quadric(f: &QuadraticForm) -> bool {
    !f.determinant().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        int(n)
    }

    #[test]
    fn homogenize_examples() {
        // X1^2 - X1 + 1 -> X1^2 - X1 X2 + X2^2
        let p = QuadraticPoly::zero(1)
            .with_monomial(0, 0, r(1))
            .with_linear(0, r(-1))
            .with_constant(r(1));
        let h = p.homogenize();
        let expect = QuadraticPoly::zero(2)
            .with_monomial(0, 0, r(1))
            .with_monomial(0, 1, r(-1))
            .with_monomial(1, 1, r(1));
        assert_eq!(h.to_poly(), expect);

        let hom = QuadraticPoly::zero(2).with_monomial(0, 1, r(3));
        let hh = hom.homogenize();
        assert_eq!(hh.matrix()[0][1], ratio(3, 2));
        assert!(hh.matrix()[2].iter().all(|a| a.is_zero()));

        let one = QuadraticPoly::constant_poly(2, r(1));
        assert_eq!(one.homogenize(), QuadraticForm::diagonal(&[r(0), r(0), r(1)]));
    }

    #[test]
    fn p_eps_example() {
        let p = make_p_eps(&ratio(1, 10), 1).unwrap();
        assert_eq!(p.vars(), 2);
        assert_eq!(p.eval(&[r(0), r(0)]), r(400));
        assert_eq!(p.eval(&[r(20), r(0)]), r(0));
        assert_eq!(p.eval(&[r(12), r(16)]), r(0));
        assert!(make_p_eps(&r(0), 1).is_err());
        assert!(make_p_eps(&r(-1), 1).is_err());
    }

    #[test]
    fn pd_examples() {
        assert!(is_positive_definite(&QuadraticForm::sum_of_squares(4)));
        assert!(!is_positive_definite(&QuadraticForm::diagonal(&[r(1), r(-1)])));
        let f = QuadraticForm::new(alloc::vec![alloc::vec![r(2), r(1)], alloc::vec![r(1), r(2)]]).unwrap();
        assert_eq!(f.leading_principal_minors(), alloc::vec![r(2), r(3)]);
        assert!(is_positive_definite(&f));
    }

    #[test]
    fn nonsingular_examples() {
        assert!(is_nonsingular_quadric(&QuadraticForm::sum_of_squares(3)));
        let xy = QuadraticForm::try_from(&QuadraticPoly::zero(2).with_monomial(0, 1, r(1))).unwrap();
        assert_eq!(xy.determinant(), ratio(-1, 4));
        assert!(is_nonsingular_quadric(&xy));
        for n in 2..5 {
            let mut d = alloc::vec![r(0); n];
            d[0] = r(1);
            assert!(!is_nonsingular_quadric(&QuadraticForm::diagonal(&d)));
        }
    }

    #[test]
    fn random_pd_forms() {
        let a = random_pd_form(2, 0).unwrap();
        assert!(is_positive_definite(&a));
        assert_eq!(a, random_pd_form(2, 0).unwrap());
        assert_ne!(random_pd_form(3, 1).unwrap(), random_pd_form(3, 2).unwrap());
        assert!(random_pd_form(0, 0).is_err());
    }

    #[test]
    fn deform_examples() {
        let q = QuadraticForm::diagonal(&[r(1), r(0)]);
        let h = QuadraticForm::diagonal(&[r(0), r(1)]);
        assert_eq!(deform(&q, &h, &r(0)).unwrap(), q);
        assert_eq!(deform(&q, &h, &r(1)).unwrap(), h);
        assert_eq!(
            deform(&q, &h, &ratio(1, 2)).unwrap(),
            QuadraticForm::diagonal(&[ratio(1, 2), ratio(1, 2)])
        );
        assert!(deform(&q, &QuadraticForm::sum_of_squares(3), &r(0)).is_err());
        assert!(deform(&q, &h, &r(2)).is_err());
    }

    #[test]
    fn rejects_nonsymmetric_and_linear() {
        let m = alloc::vec![alloc::vec![r(1), r(2)], alloc::vec![r(0), r(1)]];
        assert!(QuadraticForm::new(m).is_err());
        let x3 = QuadraticPoly::zero(3).with_linear(2, r(1));
        assert!(QuadraticForm::try_from(&x3).is_err());
        assert_eq!(x3.degree(), Some(1));
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..6).prop_map(|(n, d)| ratio(n, d))
    }

    fn arb_poly(k: usize) -> impl Strategy<Value = QuadraticPoly> {
        (
            proptest::collection::vec(arb_rat(), k * k),
            proptest::collection::vec(arb_rat(), k),
            arb_rat(),
        )
            .prop_map(move |(q, l, c)| {
                let mut p = QuadraticPoly::zero(k).with_constant(c);
                for i in 0..k {
                    p = p.with_linear(i, l[i].clone());
                    for j in i..k {
                        p = p.with_monomial(i, j, q[i * k + j].clone());
                    }
                }
                p
            })
    }

    proptest! {
        #[test]
        fn homogenize_then_dehomogenize_is_identity(p in arb_poly(3)) {
            prop_assert_eq!(p.homogenize().dehomogenize(), p);
        }

        #[test]
        fn homogenized_value_at_last_one(p in arb_poly(2), x in proptest::collection::vec(arb_rat(), 2)) {
            let mut y = x.clone();
            y.push(r(1));
            prop_assert_eq!(p.homogenize().eval(&y), p.eval(&x));
        }

        #[test]
        fn affine_substitution_matches_eval(
            p in arb_poly(2),
            o in proptest::collection::vec(arb_rat(), 2),
            s in arb_rat(),
            y in proptest::collection::vec(arb_rat(), 2),
        ) {
            let x: Vec<Rational> = o.iter().zip(&y).map(|(a, b)| a + &s * b).collect();
            prop_assert_eq!(p.affine_substitute(&o, &s).eval(&y), p.eval(&x));
        }

        #[test]
        fn deform_is_affine_in_t(seed in any::<u64>(), a in 0i64..=8, b in 0i64..=8) {
            let q = random_pd_form(3, seed).unwrap();
            let h = random_pd_form(3, seed.wrapping_add(1)).unwrap();
            let (ta, tb) = (ratio(a, 8), ratio(b, 8));
            let mid = deform(&q, &h, &((&ta + &tb) / int(2))).unwrap();
            let fa = deform(&q, &h, &ta).unwrap();
            let fb = deform(&q, &h, &tb).unwrap();
            let avg = deform(&fa, &fb, &ratio(1, 2)).unwrap();
            prop_assert_eq!(mid, avg);
        }

        #[test]
        fn random_pd_is_pd_and_nonsingular(n in 1usize..6, seed in any::<u64>()) {
            let f = random_pd_form(n, seed).unwrap();
            prop_assert!(is_positive_definite(&f));
            prop_assert!(is_nonsingular_quadric(&f));
        }
    }
}
