//! Cubical complexes and their homology with Z/2 coefficients.
//!
//! An elementary cube is a product of intervals, each either degenerate
//! `[m, m]` or unit `[m, m + 1]`. Cubes are stored in doubled coordinates:
//! `[m, m]` becomes `2m` and `[m, m + 1]` becomes `2m + 1`, so the dimension
//! of a cube is the number of odd coordinates and its codimension-one faces
//! are obtained by moving one odd coordinate by one.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf2::SparseColumns;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interval {
    /// `[m, m]`
    Degenerate(i64),
    /// `[m, m + 1]`
    Unit(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryCube(Box<[i64]>);

impl ElementaryCube {
    pub fn new(intervals: &[Interval]) -> Self {
        ElementaryCube(
            intervals
                .iter()
                .map(|iv| match *iv {
                    Interval::Degenerate(m) => 2 * m,
                    Interval::Unit(m) => 2 * m + 1,
                })
                .collect(),
        )
    }

    pub fn from_doubled(coords: impl Into<Box<[i64]>>) -> Self {
        ElementaryCube(coords.into())
    }

    pub fn vertex(point: &[i64]) -> Self {
        ElementaryCube(point.iter().map(|m| 2 * m).collect())
    }

    /// The full unit cube `[m_1, m_1 + 1] x ... x [m_n, m_n + 1]`.
    pub fn unit(corner: &[i64]) -> Self {
        ElementaryCube(corner.iter().map(|m| 2 * m + 1).collect())
    }

    pub fn doubled(&self) -> &[i64] {
        &self.0
    }

    pub fn ambient(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        self.0.iter().filter(|c| c.rem_euclid(2) == 1).count()
    }

    pub fn intervals(&self) -> Vec<Interval> {
        self.0
            .iter()
            .map(|&c| {
                if c.rem_euclid(2) == 1 {
                    Interval::Unit(c.div_euclid(2))
                } else {
                    Interval::Degenerate(c.div_euclid(2))
                }
            })
            .collect()
    }

    /// Codimension-one faces, two per nondegenerate axis.
    pub fn facets(&self) -> impl Iterator<Item = ElementaryCube> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| c.rem_euclid(2) == 1)
            .flat_map(move |(axis, _)| {
                [-1i64, 1].into_iter().map(move |delta| {
                    let mut f = self.0.clone();
                    f[axis] += delta;
                    ElementaryCube(f)
                })
            })
    }

    /// Every face including the cube itself (`3^dim` of them).
    pub fn all_faces(&self) -> Vec<ElementaryCube> {
        let mut out = vec![self.clone()];
        for (axis, &c) in self.0.iter().enumerate() {
            if c.rem_euclid(2) != 1 {
                continue;
            }
            let n = out.len();
            for i in 0..n {
                for delta in [-1i64, 1] {
                    let mut f = out[i].0.clone();
                    f[axis] += delta;
                    out.push(ElementaryCube(f));
                }
            }
        }
        out
    }

    /// Vertices of the closure.
    pub fn vertices(&self) -> Vec<ElementaryCube> {
        self.all_faces().into_iter().filter(|f| f.dim() == 0).collect()
    }
}

/// A finite, face-closed set of elementary cubes in a fixed ambient
/// dimension. Cells of each dimension are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalComplex {
    ambient: usize,
    cells: Vec<Vec<ElementaryCube>>,
}

/// Smallest face-closed complex containing `cubes`.
pub fn close_under_faces<I>(ambient: usize, cubes: I) -> Result<CubicalComplex>
where
    I: IntoIterator<Item = ElementaryCube>,
{
    let mut cells: Vec<Vec<ElementaryCube>> = vec![Vec::new(); ambient + 1];
    for cube in cubes {
        if cube.ambient() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: cube.ambient(),
            });
        }
        for f in cube.all_faces() {
            let d = f.dim();
            cells[d].push(f);
        }
    }
    for list in &mut cells {
        list.sort_unstable();
        list.dedup();
    }
    Ok(CubicalComplex { ambient, cells })
}

impl CubicalComplex {
    pub fn empty(ambient: usize) -> Self {
        CubicalComplex {
            ambient,
            cells: vec![Vec::new(); ambient + 1],
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn cells(&self, dim: usize) -> &[ElementaryCube] {
        self.cells.get(dim).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.cells(dim).len()
    }

    pub fn len(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(Vec::is_empty)
    }

    /// Highest dimension carrying a cell.
    pub fn top_dim(&self) -> Option<usize> {
        (0..=self.ambient).rev().find(|&d| !self.cells[d].is_empty())
    }

    pub fn contains(&self, cube: &ElementaryCube) -> bool {
        cube.ambient() == self.ambient && self.index_of(cube.dim(), cube).is_some()
    }

    fn index_of(&self, dim: usize, cube: &ElementaryCube) -> Option<usize> {
        self.cells[dim].binary_search(cube).ok()
    }

    pub fn is_face_closed(&self) -> bool {
        (1..=self.ambient).all(|d| {
            self.cells[d]
                .iter()
                .all(|c| c.facets().all(|f| self.index_of(d - 1, &f).is_some()))
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &ElementaryCube> {
        self.cells.iter().flatten()
    }

    pub fn union(&self, other: &CubicalComplex) -> Result<CubicalComplex> {
        self.check_ambient(other)?;
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| {
                let mut v: Vec<ElementaryCube> = a.iter().chain(b).cloned().collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        Ok(CubicalComplex {
            ambient: self.ambient,
            cells,
        })
    }

    pub fn intersection(&self, other: &CubicalComplex) -> Result<CubicalComplex> {
        self.check_ambient(other)?;
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| a.iter().filter(|c| b.binary_search(c).is_ok()).cloned().collect())
            .collect();
        Ok(CubicalComplex {
            ambient: self.ambient,
            cells,
        })
    }

    fn check_ambient(&self, other: &CubicalComplex) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        Ok(())
    }

    /// Closure of the top-dimensional cells of `self` that share no vertex
    /// with `a`. For a subcomplex `a` this is a deformation-retract model of
    /// the complement `|self| \ |a|` once the subdivision is fine enough.
    pub fn complement_of(&self, a: &CubicalComplex) -> Result<CubicalComplex> {
        self.check_ambient(a)?;
        let Some(top) = self.top_dim() else {
            return Ok(CubicalComplex::empty(self.ambient));
        };
        let kept = self.cells[top]
            .iter()
            .filter(|c| c.vertices().iter().all(|v| !a.contains(v)))
            .cloned()
            .collect::<Vec<_>>();
        close_under_faces(self.ambient, kept)
    }

    /// `sum (-1)^d * #d-cells`.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, v)| {
                if d % 2 == 0 {
                    v.len() as i64
                } else {
                    -(v.len() as i64)
                }
            })
            .sum()
    }

    /// Boundary map from `dim`-cells to `(dim - 1)`-cells. Columns follow
    /// the sorted order of `cells(dim)`, rows that of `cells(dim - 1)`.
    pub fn boundary_matrix(&self, dim: usize) -> SparseColumns {
        assert!(dim >= 1 && dim <= self.ambient, "boundary dimension out of range");
        let rows = self.cells[dim - 1].len();
        let columns = self.cells[dim]
            .iter()
            .map(|c| {
                let mut col: Vec<u32> = c
                    .facets()
                    .map(|f| self.index_of(dim - 1, &f).expect("complex is not face-closed") as u32)
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        SparseColumns::new(rows, columns)
    }

    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex {
            boundaries: (1..=self.ambient).map(|d| self.boundary_matrix(d)).collect(),
            cell_counts: self.cells.iter().map(Vec::len).collect(),
        }
    }

    pub fn betti(&self) -> BettiVector {
        self.chain_complex().betti()
    }
}

/// Boundary matrices `d_1 .. d_n`; `boundaries[d - 1]` maps `d`-chains to
/// `(d - 1)`-chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    boundaries: Vec<SparseColumns>,
    cell_counts: Vec<usize>,
}

impl ChainComplex {
    pub fn new(cell_counts: Vec<usize>, boundaries: Vec<SparseColumns>) -> Result<Self> {
        if boundaries.len() + 1 != cell_counts.len() {
            return Err(Error::DimensionMismatch {
                expected: cell_counts.len().saturating_sub(1),
                got: boundaries.len(),
            });
        }
        for (d, b) in boundaries.iter().enumerate() {
            if b.rows() != cell_counts[d] || b.cols() != cell_counts[d + 1] {
                return Err(Error::DimensionMismatch {
                    expected: cell_counts[d + 1],
                    got: b.cols(),
                });
            }
        }
        Ok(ChainComplex {
            boundaries,
            cell_counts,
        })
    }

    pub fn boundary(&self, dim: usize) -> &SparseColumns {
        &self.boundaries[dim - 1]
    }

    pub fn cell_counts(&self) -> &[usize] {
        &self.cell_counts
    }

    /// `true` when every composite `d_d d_{d+1}` vanishes.
    pub fn is_chain_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| {
            let (lower, upper) = (&w[0], &w[1]);
            (0..upper.cols()).all(|c| {
                let mut acc: Vec<u32> = upper
                    .column(c)
                    .iter()
                    .flat_map(|&r| lower.column(r as usize).iter().copied())
                    .collect();
                acc.sort_unstable();
                pairs_cancel(&acc)
            })
        })
    }

    /// Betti numbers via column reduction from the top dimension down,
    /// skipping columns already known to reduce to zero.
    pub fn betti(&self) -> BettiVector {
        let n = self.cell_counts.len();
        let mut ranks = vec![0usize; n + 1];
        let mut cleared: Option<Vec<bool>> = None;
        for d in (1..n).rev() {
            let m = &self.boundaries[d - 1];
            let pivots = m.reduce(cleared.as_deref());
            ranks[d] = pivots.len();
            let mut next = vec![false; m.rows()];
            for p in pivots {
                next[p as usize] = true;
            }
            cleared = Some(next);
        }
        BettiVector(
            (0..n)
                .map(|d| self.cell_counts[d] - ranks[d] - ranks[d + 1])
                .collect(),
        )
    }

    /// Same numbers as [`ChainComplex::betti`] through dense bit-packed
    /// elimination of each boundary matrix independently.
    pub fn betti_dense(&self) -> BettiVector {
        let n = self.cell_counts.len();
        let mut ranks = vec![0usize; n + 1];
        for d in 1..n {
            ranks[d] = self.boundaries[d - 1].to_dense().rank();
        }
        BettiVector(
            (0..n)
                .map(|d| self.cell_counts[d] - ranks[d] - ranks[d + 1])
                .collect(),
        )
    }
}

fn pairs_cancel(sorted: &[u32]) -> bool {
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            return false;
        }
        i = j;
    }
    true
}

/// Z/2 Betti numbers `b_0, ..., b_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn new(values: Vec<usize>) -> Self {
        BettiVector(values)
    }

    pub fn zeros(len: usize) -> Self {
        BettiVector(vec![0; len])
    }

    /// `b_i`, zero past the stored length.
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `b = sum b_i`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Reduced Betti numbers: `b_0 - 1` in degree zero for a nonempty space.
    pub fn reduced(&self) -> BettiVector {
        let mut v = self.0.clone();
        if let Some(b0) = v.first_mut() {
            *b0 = b0.saturating_sub(1);
        }
        BettiVector(v)
    }

    /// Componentwise sum, padding the shorter vector with zeros.
    pub fn add(&self, other: &BettiVector) -> BettiVector {
        let n = self.len().max(other.len());
        BettiVector((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }

    pub fn scale(&self, factor: usize) -> BettiVector {
        BettiVector(self.0.iter().map(|b| b * factor).collect())
    }
}

impl From<Vec<usize>> for BettiVector {
    fn from(v: Vec<usize>) -> Self {
        BettiVector(v)
    }
}

impl core::fmt::Display for BettiVector {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

/// Hand-built complexes used by tests, the harness and the duality audit.
pub mod shapes {
    use super::*;

    /// Closure of the axis-aligned box of unit cells with lower corner
    /// `lo` and extents `size`.
    pub fn solid_box(lo: &[i64], size: &[i64]) -> CubicalComplex {
        let n = lo.len();
        let mut cubes = Vec::new();
        let mut idx = vec![0i64; n];
        if size.iter().all(|&s| s > 0) {
            loop {
                let corner: Vec<i64> = (0..n).map(|a| lo[a] + idx[a]).collect();
                cubes.push(ElementaryCube::unit(&corner));
                let mut a = 0;
                while a < n {
                    idx[a] += 1;
                    if idx[a] < size[a] {
                        break;
                    }
                    idx[a] = 0;
                    a += 1;
                }
                if a == n {
                    break;
                }
            }
        }
        close_under_faces(n, cubes).expect("uniform ambient")
    }

    /// All proper faces of a box: the boundary sphere.
    pub fn box_boundary(lo: &[i64], size: &[i64]) -> CubicalComplex {
        let solid = solid_box(lo, size);
        let n = lo.len();
        let on_boundary = |c: &ElementaryCube| {
            (0..n).any(|a| {
                let v = c.doubled()[a];
                v == 2 * lo[a] || v == 2 * (lo[a] + size[a])
            })
        };
        let faces = solid.cells(n - 1).iter().filter(|c| on_boundary(c)).cloned();
        close_under_faces(n, faces).expect("uniform ambient")
    }

    /// Hollow `side x side` square in the plane with lower corner `lo`.
    pub fn square_loop(lo: [i64; 2], side: i64) -> CubicalComplex {
        box_boundary(&lo, &[side, side])
    }
}

#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;
    use proptest::prelude::*;

    fn bv(v: &[usize]) -> BettiVector {
        BettiVector(v.to_vec())
    }

    #[test]
    fn closure_of_square() {
        let c = close_under_faces(2, [ElementaryCube::unit(&[0, 0])]).unwrap();
        assert_eq!((c.count(0), c.count(1), c.count(2)), (4, 4, 1));
        assert!(c.is_face_closed());
    }

    #[test]
    fn closure_of_nothing_and_points() {
        let e = close_under_faces(1, []).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.betti(), bv(&[0, 0]));
        let pts = close_under_faces(1, [ElementaryCube::vertex(&[0]), ElementaryCube::vertex(&[2])]).unwrap();
        assert_eq!(pts.count(0), 2);
        assert_eq!(pts.count(1), 0);
        assert_eq!(pts.betti(), bv(&[2, 0]));
    }

    #[test]
    fn closure_rejects_mixed_ambient() {
        let r = close_under_faces(2, [ElementaryCube::vertex(&[0, 0]), ElementaryCube::vertex(&[1])]);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn interval_round_trip() {
        let c = ElementaryCube::new(&[Interval::Unit(-3), Interval::Degenerate(5)]);
        assert_eq!(c.dim(), 1);
        assert_eq!(
            c.intervals(),
            alloc::vec![Interval::Unit(-3), Interval::Degenerate(5)]
        );
        assert_eq!(c.facets().count(), 2);
        assert_eq!(c.all_faces().len(), 3);
    }

    #[test]
    fn hollow_square_is_a_circle() {
        let sq = square_loop([0, 0], 1);
        assert_eq!((sq.count(0), sq.count(1), sq.count(2)), (4, 4, 0));
        assert_eq!(sq.betti(), bv(&[1, 1, 0]));
    }

    #[test]
    fn solid_square_is_contractible() {
        assert_eq!(solid_box(&[0, 0], &[1, 1]).betti(), bv(&[1, 0, 0]));
    }

    #[test]
    fn cube_surface_is_a_sphere() {
        let s = box_boundary(&[0, 0, 0], &[1, 1, 1]);
        assert_eq!(s.betti(), bv(&[1, 0, 1, 0]));
        let big = box_boundary(&[0, 0, 0], &[3, 2, 4]);
        assert_eq!(big.betti(), bv(&[1, 0, 1, 0]));
    }

    #[test]
    fn single_cube_closures_are_contractible() {
        for d in 0..=4usize {
            let corner = alloc::vec![0i64; d.max(1)];
            let c = if d == 0 {
                close_under_faces(1, [ElementaryCube::vertex(&[0])]).unwrap()
            } else {
                close_under_faces(d, [ElementaryCube::unit(&corner[..d])]).unwrap()
            };
            let mut expect = alloc::vec![0usize; c.ambient() + 1];
            expect[0] = 1;
            assert_eq!(c.betti(), BettiVector(expect), "d = {d}");
        }
    }

    #[test]
    fn torus_surface() {
        // boundary of a solid torus: box minus a core column, then its surface
        let outer = box_boundary(&[0, 0, 0], &[3, 3, 1]);
        let inner = box_boundary(&[1, 1, 0], &[1, 1, 1]);
        // remove top and bottom faces of the hole and glue: build as union of
        // the outer shell and inner shell, minus the two hole caps
        let cap_lo = ElementaryCube::new(&[Interval::Unit(1), Interval::Unit(1), Interval::Degenerate(0)]);
        let cap_hi = ElementaryCube::new(&[Interval::Unit(1), Interval::Unit(1), Interval::Degenerate(1)]);
        let squares: Vec<_> = outer
            .cells(2)
            .iter()
            .chain(inner.cells(2))
            .filter(|c| **c != cap_lo && **c != cap_hi)
            .cloned()
            .collect();
        let torus = close_under_faces(3, squares).unwrap();
        assert_eq!(torus.betti(), bv(&[1, 2, 1, 0]));
    }

    #[test]
    fn union_intersection_and_complement() {
        let a = square_loop([0, 0], 1);
        let b = square_loop([1, 1], 1);
        let u = a.union(&b).unwrap();
        assert_eq!(u.betti(), bv(&[1, 2, 0]));
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.betti(), bv(&[1, 0, 0]));
        assert!(u.is_face_closed() && i.is_face_closed());

        let sphere = box_boundary(&[0, 0, 0], &[4, 4, 4]);
        let equator: Vec<_> = sphere
            .cells(1)
            .iter()
            .filter(|c| c.doubled()[2] == 4)
            .cloned()
            .collect();
        let a = close_under_faces(3, equator).unwrap();
        assert_eq!(a.betti(), bv(&[1, 1, 0, 0]));
        let comp = sphere.complement_of(&a).unwrap();
        assert_eq!(comp.betti(), bv(&[2, 0, 0, 0]));
    }

    #[test]
    fn dense_and_sparse_agree_on_shapes() {
        for c in [
            square_loop([0, 0], 2),
            box_boundary(&[0, 0, 0], &[2, 1, 2]),
            solid_box(&[0, 0], &[3, 2]),
        ] {
            let cc = c.chain_complex();
            assert!(cc.is_chain_complex());
            assert_eq!(cc.betti(), cc.betti_dense());
        }
    }

    fn arb_cubes(ambient: usize) -> impl Strategy<Value = Vec<ElementaryCube>> {
        proptest::collection::vec(proptest::collection::vec(0i64..7, ambient), 0..25)
            .prop_map(|v| v.into_iter().map(ElementaryCube::from_doubled).collect())
    }

    proptest! {
        #[test]
        fn random_complexes_are_consistent(cubes in arb_cubes(3)) {
            let c = close_under_faces(3, cubes).unwrap();
            prop_assert!(c.is_face_closed());
            let cc = c.chain_complex();
            prop_assert!(cc.is_chain_complex());
            let b = cc.betti();
            prop_assert_eq!(&b, &cc.betti_dense());
            prop_assert_eq!(b.euler_characteristic(), c.euler_characteristic());
        }

        #[test]
        fn disjoint_union_adds(a in arb_cubes(2), b in arb_cubes(2)) {
            let ca = close_under_faces(2, a).unwrap();
            let shifted = b.into_iter().map(|c| {
                let mut d = c.doubled().to_vec();
                d[0] += 40;
                ElementaryCube::from_doubled(d)
            });
            let cb = close_under_faces(2, shifted).unwrap();
            let u = ca.union(&cb).unwrap();
            prop_assert_eq!(u.betti(), ca.betti().add(&cb.betti()));
        }
    }
}
