//! Cubical approximation of sets cut out by quadratic inequalities.
//!
//! A [`GridSpec`] tiles an axis-aligned box with cubes of side
//! `resolution`. A cube is kept when its center satisfies every inequality,
//! evaluated exactly; the complex is the face closure of the kept cubes, in
//! lattice coordinates (cube `m` spans `[m, m + 1]` on each axis).
//!
//! The center rule carries no homotopy guarantee. It is reliable on sets
//! whose features are several cells wide, which is what the harness
//! scenarios are built around.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::cubical::{close_under_faces, CubicalComplex, ElementaryCube};
use crate::error::{domain, Error, Result};
use crate::quadratic::{QuadraticForm, QuadraticPoly};
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MembershipRule {
    /// A cell belongs to the set when its center does.
    #[default]
    CenterPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    lo: Vec<Rational>,
    hi: Vec<Rational>,
    resolution: Rational,
    rule: MembershipRule,
    counts: Vec<usize>,
}

impl GridSpec {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>, resolution: Rational) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        if !resolution.is_positive() {
            return Err(domain("grid resolution must be positive"));
        }
        let mut counts = Vec::with_capacity(lo.len());
        for (axis, (a, b)) in lo.iter().zip(&hi).enumerate() {
            if b <= a {
                return Err(domain("grid box must have positive width on every axis"));
            }
            let cells = (b - a) / &resolution;
            if !cells.is_integer() {
                return Err(Error::GridNotDivisible { axis });
            }
            let n = cells
                .to_integer()
                .to_usize()
                .ok_or_else(|| domain("grid is too large"))?;
            counts.push(n);
        }
        Ok(GridSpec {
            lo,
            hi,
            resolution,
            rule: MembershipRule::CenterPoint,
            counts,
        })
    }

    /// `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: Rational, hi: Rational, resolution: Rational) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim], resolution)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[Rational] {
        &self.lo
    }

    pub fn hi(&self) -> &[Rational] {
        &self.hi
    }

    pub fn resolution(&self) -> &Rational {
        &self.resolution
    }

    pub fn rule(&self) -> MembershipRule {
        self.rule
    }

    /// Cells per axis.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total_cells(&self) -> usize {
        self.counts.iter().product()
    }

    /// Same box at half the cell width.
    pub fn refined(&self) -> Self {
        let mut g = self.clone();
        g.resolution = &self.resolution / int(2);
        g.counts.iter_mut().for_each(|c| *c *= 2);
        g
    }

    pub fn cell_center(&self, index: &[usize]) -> Vec<Rational> {
        index
            .iter()
            .zip(&self.lo)
            .map(|(&m, lo)| {
                lo + &self.resolution
                    * (Rational::from_integer(BigInt::from(m)) + Rational::new(1.into(), 2.into()))
            })
            .collect()
    }

    /// Whether the box contains the closed ball of the given radius about
    /// the origin.
    pub fn contains_ball(&self, radius: &Rational) -> bool {
        self.lo.iter().all(|a| *a <= -radius.clone()) && self.hi.iter().all(|b| b >= radius)
    }
}

/// A polynomial in the lattice index `m` with integer coefficients whose
/// sign at `m` equals the sign of the source polynomial at the center of
/// cell `m`.
#[derive(Clone, Debug)]
enum LatticePoly {
    Small {
        quad: Vec<i128>,
        lin: Vec<i128>,
        constant: i128,
    },
    Big {
        quad: Vec<BigInt>,
        lin: Vec<BigInt>,
        constant: BigInt,
    },
}

impl LatticePoly {
    fn new(p: &QuadraticPoly, spec: &GridSpec) -> Self {
        let h = spec.resolution();
        let half = h / int(2);
        let offset: Vec<Rational> = spec.lo().iter().map(|a| a + &half).collect();
        let q = p.affine_substitute(&offset, h);
        let all: Vec<&Rational> = q
            .quad()
            .iter()
            .flatten()
            .chain(q.lin())
            .chain(core::iter::once(q.constant()))
            .collect();
        let lcm = all.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let scaled = |r: &Rational| -> BigInt { r.numer() * (&lcm / r.denom()) };
        let quad: Vec<BigInt> = q.quad().iter().flatten().map(scaled).collect();
        let lin: Vec<BigInt> = q.lin().iter().map(scaled).collect();
        let constant = scaled(q.constant());

        let n_max = BigInt::from(spec.counts().iter().copied().max().unwrap_or(0));
        let magnitude: BigInt = quad.iter().map(|a| a.abs() * &n_max * &n_max).sum::<BigInt>()
            + lin.iter().map(|a| a.abs() * &n_max).sum::<BigInt>()
            + constant.abs();
        if magnitude < (BigInt::one() << 120usize) {
            let conv = |v: &BigInt| v.to_i128().expect("bounded above");
            LatticePoly::Small {
                quad: quad.iter().map(conv).collect(),
                lin: lin.iter().map(conv).collect(),
                constant: conv(&constant),
            }
        } else {
            LatticePoly::Big { quad, lin, constant }
        }
    }

    fn nonnegative_at(&self, m: &[i128]) -> bool {
        let k = m.len();
        match self {
            LatticePoly::Small { quad, lin, constant } => {
                let mut acc = *constant;
                for i in 0..k {
                    let mut row = lin[i];
                    for j in 0..k {
                        row += quad[i * k + j] * m[j];
                    }
                    acc += row * m[i];
                }
                acc >= 0
            }
            LatticePoly::Big { quad, lin, constant } => {
                let mut acc = constant.clone();
                for i in 0..k {
                    let mut row = lin[i].clone();
                    for j in 0..k {
                        row += &quad[i * k + j] * m[j];
                    }
                    acc += row * m[i];
                }
                !acc.is_negative()
            }
        }
    }
}

/// Indices of the cells whose centers satisfy `p >= 0` for every `p` in
/// `system`.
pub fn grid_cells(system: &[QuadraticPoly], spec: &GridSpec) -> Result<Vec<Vec<usize>>> {
    let dim = spec.dim();
    if let Some(p) = system.iter().find(|p| p.vars() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: p.vars(),
        });
    }
    let lattice: Vec<LatticePoly> = system.iter().map(|p| LatticePoly::new(p, spec)).collect();
    let counts = spec.counts();
    let mut out = Vec::new();
    if dim == 0 || counts.contains(&0) {
        return Ok(out);
    }
    let mut idx = vec![0usize; dim];
    let mut m = vec![0i128; dim];
    loop {
        for (a, &i) in idx.iter().enumerate() {
            m[a] = i as i128;
        }
        if lattice.iter().all(|p| p.nonnegative_at(&m)) {
            out.push(idx.clone());
        }
        let mut a = 0;
        while a < dim {
            idx[a] += 1;
            if idx[a] < counts[a] {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
        if a == dim {
            break;
        }
    }
    Ok(out)
}

fn complex_from_cells(dim: usize, cells: &[Vec<usize>]) -> Result<CubicalComplex> {
    close_under_faces(
        dim,
        cells.iter().map(|c| {
            let corner: Vec<i64> = c.iter().map(|&v| v as i64).collect();
            ElementaryCube::unit(&corner)
        }),
    )
}

/// Face closure of the grid cells whose centers satisfy every inequality
/// `p >= 0` of `system`.
pub fn grid_complex(system: &[QuadraticPoly], spec: &GridSpec) -> Result<CubicalComplex> {
    let cells = grid_cells(system, spec)?;
    complex_from_cells(spec.dim(), &cells)
}

/// `(r + w)^2 - |x|^2 >= 0` and, when `r > w`, `|x|^2 - (r - w)^2 >= 0`: the
/// shell of half-width `w` around the sphere of radius `r`.
pub fn sphere_band(dim: usize, radius: &Rational, half_width: &Rational) -> Vec<QuadraticPoly> {
    let outer = radius + half_width;
    let mut out = vec![QuadraticPoly::norm_squared(dim)
        .neg()
        .with_constant(&outer * &outer)];
    if radius > half_width {
        let inner = radius - half_width;
        out.push(QuadraticPoly::norm_squared(dim).with_constant(-(&inner * &inner)));
    }
    out
}

/// `tau - Q >= 0` and `tau + Q >= 0`.
pub fn zero_band(form: &QuadraticForm, tau: &Rational) -> [QuadraticPoly; 2] {
    let p = form.to_poly();
    [p.neg().with_constant(tau.clone()), p.with_constant(tau.clone())]
}

/// Cells near the sphere of radius `radius` (within one cell width) on which
/// every form satisfies `|Q| <= tau`. A thickened model of the common zero
/// set of the forms on the sphere; `tau` must scale with the resolution,
/// roughly `resolution * |grad Q|` on the sphere.
pub fn sphere_zero_complex(
    forms: &[QuadraticForm],
    radius: &Rational,
    spec: &GridSpec,
    tau: &Rational,
) -> Result<CubicalComplex> {
    sphere_region_complex(forms, &[], radius, spec, tau)
}

/// [`sphere_zero_complex`] further cut by the inequalities `extra >= 0`.
pub fn sphere_region_complex(
    forms: &[QuadraticForm],
    extra: &[QuadraticPoly],
    radius: &Rational,
    spec: &GridSpec,
    tau: &Rational,
) -> Result<CubicalComplex> {
    let dim = spec.dim();
    if let Some(f) = forms.iter().find(|f| f.vars() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: f.vars(),
        });
    }
    if !radius.is_positive() || !tau.is_positive() {
        return Err(domain("radius and tau must be positive"));
    }
    if !spec.contains_ball(radius) {
        return Err(domain("grid box does not contain the sphere"));
    }
    let mut system = sphere_band(dim, radius, spec.resolution());
    for f in forms {
        system.extend(zero_band(f, tau));
    }
    system.extend(extra.iter().cloned());
    grid_complex(&system, spec)
}
