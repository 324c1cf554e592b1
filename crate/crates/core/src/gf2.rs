//! Linear algebra over the two-element field.
//!
//! [`BitMatrix`] is a dense row-major matrix with rows packed into `u64`
//! words; [`BitMatrix::rank`] is plain Gaussian elimination with the first
//! nonzero entry of each column as pivot. [`SparseColumns`] stores each
//! column as a sorted list of row indices and is what the homology code uses
//! on large boundary matrices.

use alloc::vec;
use alloc::vec::Vec;

const WORD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            for (j, &v) in r.as_ref().iter().enumerate() {
                m.set(i, j, v & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.words_per_row + c / WORD] >> (c % WORD)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.words_per_row + c / WORD];
        let bit = 1u64 << (c % WORD);
        if v {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.words_per_row + c / WORD] ^= 1u64 << (c % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let src = &rhs.data[k * rhs.words_per_row..(k + 1) * rhs.words_per_row];
                    let dst = &mut out.data[r * out.words_per_row..(r + 1) * out.words_per_row];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for i in 0..w {
            self.data.swap(a * w + i, b * w + i);
        }
    }

    /// `row[dst] ^= row[src]`, touching words from `from_word` on.
    fn xor_row_into(&mut self, src: usize, dst: usize, from_word: usize) {
        let w = self.words_per_row;
        let (s, d) = (src * w, dst * w);
        for i in from_word..w {
            let v = self.data[s + i];
            self.data[d + i] ^= v;
        }
    }

    /// Rank over GF(2). Consumes a copy; the receiver is unchanged.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rank_in_place()
    }

    pub fn rank_in_place(&mut self) -> usize {
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let word = c / WORD;
            let bit = 1u64 << (c % WORD);
            let Some(p) = (rank..self.rows).find(|&r| self.data[r * self.words_per_row + word] & bit != 0)
            else {
                continue;
            };
            self.swap_rows(p, rank);
            for r in rank + 1..self.rows {
                if self.data[r * self.words_per_row + word] & bit != 0 {
                    self.xor_row_into(rank, r, word);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Column-sparse GF(2) matrix; each column is a strictly increasing list of
/// row indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseColumns {
    rows: usize,
    columns: Vec<Vec<u32>>,
}

impl SparseColumns {
    pub fn new(rows: usize, columns: Vec<Vec<u32>>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.windows(2).all(|w| w[0] < w[1]) && c.iter().all(|&r| (r as usize) < rows)));
        SparseColumns { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[u32] {
        &self.columns[c]
    }

    pub fn to_dense(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, self.columns.len());
        for (c, col) in self.columns.iter().enumerate() {
            for &r in col {
                m.set(r as usize, c, true);
            }
        }
        m
    }

    /// Column reduction. Columns flagged in `skip` are treated as zero
    /// (clearing). Returns the pivot row of every nonzero reduced column.
    pub fn reduce(&self, skip: Option<&[bool]>) -> Vec<u32> {
        const NONE: u32 = u32::MAX;
        let mut owner = vec![NONE; self.rows];
        let mut reduced: Vec<Vec<u32>> = vec![Vec::new(); self.columns.len()];
        let mut pivots = Vec::new();
        let mut scratch = Vec::new();
        for c in 0..self.columns.len() {
            if skip.is_some_and(|s| s[c]) {
                continue;
            }
            let mut col = self.columns[c].clone();
            while let Some(&low) = col.last() {
                let o = owner[low as usize];
                if o == NONE {
                    break;
                }
                symmetric_difference(&col, &reduced[o as usize], &mut scratch);
                core::mem::swap(&mut col, &mut scratch);
            }
            if let Some(&low) = col.last() {
                owner[low as usize] = c as u32;
                pivots.push(low);
                reduced[c] = col;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.reduce(None).len()
    }
}

fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Rank of a dense GF(2) matrix.
pub fn gf2_rank(m: &BitMatrix) -> usize {
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(gf2_rank(&BitMatrix::identity(3)), 3);
        assert_eq!(gf2_rank(&BitMatrix::from_rows(&[[1u8, 1], [1, 1]])), 1);
        assert_eq!(gf2_rank(&BitMatrix::zeros(4, 7)), 0);
        assert_eq!(gf2_rank(&BitMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn rank_over_gf2_not_reals() {
        // rank 3 over the reals, 2 over GF(2): rows sum to zero mod 2
        let m = BitMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1], [1, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn wide_matrix_crosses_word_boundary() {
        let mut m = BitMatrix::zeros(3, 200);
        m.set(0, 150, true);
        m.set(1, 150, true);
        m.set(1, 199, true);
        m.set(2, 63, true);
        m.set(2, 64, true);
        assert_eq!(m.rank(), 3);
        m.flip(1, 199);
        assert_eq!(m.rank(), 2);
    }

    fn arb_matrix() -> impl Strategy<Value = (usize, usize, Vec<bool>)> {
        (0usize..12, 0usize..80)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(any::<bool>(), r * c)))
    }

    fn build(r: usize, c: usize, bits: &[bool]) -> BitMatrix {
        let mut m = BitMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, bits[i * c + j]);
            }
        }
        m
    }

    proptest! {
        #[test]
        fn rank_invariant_under_permutations(
            (r, c, bits) in arb_matrix(),
            seed in any::<u64>(),
        ) {
            use rand::{seq::SliceRandom, SeedableRng};
            let m = build(r, c, &bits);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rp: Vec<usize> = (0..r).collect();
            let mut cp: Vec<usize> = (0..c).collect();
            rp.shuffle(&mut rng);
            cp.shuffle(&mut rng);
            let mut p = BitMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    p.set(i, j, m.get(rp[i], cp[j]));
                }
            }
            prop_assert_eq!(m.rank(), p.rank());
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn sparse_and_dense_ranks_agree((r, c, bits) in arb_matrix()) {
            let m = build(r, c, &bits);
            let cols: Vec<Vec<u32>> = (0..c)
                .map(|j| (0..r).filter(|&i| m.get(i, j)).map(|i| i as u32).collect())
                .collect();
            let s = SparseColumns::new(r, cols);
            prop_assert_eq!(s.rank(), m.rank());
            prop_assert_eq!(s.to_dense(), m);
        }
    }
}
