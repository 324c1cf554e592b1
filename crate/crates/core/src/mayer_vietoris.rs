//! Mayer-Vietoris inequality for a union of `l` pieces:
//!
//! `b_i(X_1 u ... u X_l) <= sum_{j=1}^{i+1} sum_{|J|=j} b_{i-j+1}(X_J)`
//!
//! where `X_J` is the intersection of the pieces indexed by `J`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::cubical::{BettiVector, CubicalComplex};
use crate::error::{domain, Error, Result};
use crate::Verdict;

/// Betti vectors of the intersections `X_J`, keyed by the bitmask of `J`
/// (bit `p` set means piece `p + 1` is in `J`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubsetFamily {
    pieces: usize,
    entries: BTreeMap<u64, BettiVector>,
}

impl SubsetFamily {
    pub fn new(pieces: usize) -> Result<Self> {
        if pieces == 0 || pieces > 63 {
            return Err(domain("number of pieces must be in 1..=63"));
        }
        Ok(SubsetFamily {
            pieces,
            entries: BTreeMap::new(),
        })
    }

    pub fn pieces(&self) -> usize {
        self.pieces
    }

    /// `members` are 1-based piece indices.
    pub fn insert(&mut self, members: &[usize], betti: BettiVector) -> Result<()> {
        let mask = self.mask(members)?;
        self.entries.insert(mask, betti);
        Ok(())
    }

    pub fn get(&self, members: &[usize]) -> Option<&BettiVector> {
        self.mask(members).ok().and_then(|m| self.entries.get(&m))
    }

    fn mask(&self, members: &[usize]) -> Result<u64> {
        let mut mask = 0u64;
        for &p in members {
            if p == 0 || p > self.pieces {
                return Err(domain(format!("piece index {p} outside 1..={}", self.pieces)));
            }
            mask |= 1 << (p - 1);
        }
        if mask == 0 {
            return Err(domain("empty index set"));
        }
        Ok(mask)
    }

    /// Computes every intersection of the given complexes.
    pub fn from_complexes(pieces: &[CubicalComplex]) -> Result<Self> {
        let mut fam = SubsetFamily::new(pieces.len())?;
        for mask in 1u64..(1 << pieces.len()) {
            let mut members = (0..pieces.len()).filter(|p| mask >> p & 1 == 1);
            let first = members.next().unwrap();
            let mut acc = pieces[first].clone();
            for p in members {
                acc = acc.intersection(&pieces[p])?;
            }
            fam.entries.insert(mask, acc.betti());
        }
        Ok(fam)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MayerVietorisCheck {
    pub degree: usize,
    pub union_betti: usize,
    pub bound: usize,
    pub verdict: Verdict,
}

/// Checks the inequality in degree `i`. Every `J` with `1 <= |J| <= i + 1`
/// must be present; otherwise the result is [`Error::Missing`].
pub fn mayer_vietoris_audit(
    union_betti: &BettiVector,
    family: &SubsetFamily,
    i: usize,
) -> Result<MayerVietorisCheck> {
    let l = family.pieces;
    let mut bound = 0usize;
    for mask in 1u64..(1u64 << l) {
        let j = mask.count_ones() as usize;
        if j > i + 1 {
            continue;
        }
        let entry = family.entries.get(&mask).ok_or_else(|| {
            let members: Vec<usize> = (0..l).filter(|p| mask >> p & 1 == 1).map(|p| p + 1).collect();
            Error::Missing(format!("no Betti vector for intersection {members:?}"))
        })?;
        bound += entry.get(i + 1 - j);
    }
    let ub = union_betti.get(i);
    Ok(MayerVietorisCheck {
        degree: i,
        union_betti: ub,
        bound,
        verdict: if ub <= bound {
            Verdict::Pass
        } else {
            Verdict::Violation
        },
    })
}

/// Runs the check in every degree `0..=max_degree` on actual complexes.
pub fn audit_complexes(pieces: &[CubicalComplex], max_degree: usize) -> Result<Vec<MayerVietorisCheck>> {
    let first = pieces.first().ok_or_else(|| domain("need at least one piece"))?;
    let mut union = first.clone();
    for p in &pieces[1..] {
        union = union.union(p)?;
    }
    let family = SubsetFamily::from_complexes(pieces)?;
    let ub = union.betti();
    (0..=max_degree)
        .map(|i| mayer_vietoris_audit(&ub, &family, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::shapes::square_loop;

    fn bv(v: &[usize]) -> BettiVector {
        BettiVector(v.to_vec())
    }

    fn wedge_family() -> SubsetFamily {
        let mut f = SubsetFamily::new(2).unwrap();
        f.insert(&[1], bv(&[1, 1])).unwrap();
        f.insert(&[2], bv(&[1, 1])).unwrap();
        f.insert(&[1, 2], bv(&[1, 0])).unwrap();
        f
    }

    #[test]
    fn wedge_of_circles_passes() {
        let r = mayer_vietoris_audit(&bv(&[1, 2]), &wedge_family(), 1).unwrap();
        assert_eq!(r.bound, 3);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn disjoint_circles_pass_in_degree_zero() {
        let mut f = SubsetFamily::new(2).unwrap();
        f.insert(&[1], bv(&[1, 1])).unwrap();
        f.insert(&[2], bv(&[1, 1])).unwrap();
        let r = mayer_vietoris_audit(&bv(&[2, 2]), &f, 0).unwrap();
        assert_eq!(r.bound, 2);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn fabricated_union_is_a_violation() {
        let r = mayer_vietoris_audit(&bv(&[1, 10]), &wedge_family(), 1).unwrap();
        assert_eq!(r.verdict, Verdict::Violation);
    }

    #[test]
    fn missing_subset_is_an_error() {
        let mut f = SubsetFamily::new(2).unwrap();
        f.insert(&[1], bv(&[1, 1])).unwrap();
        f.insert(&[2], bv(&[1, 1])).unwrap();
        let r = mayer_vietoris_audit(&bv(&[1, 2]), &f, 1);
        assert!(matches!(r, Err(Error::Missing(_))));
        // degree 0 only needs singletons
        assert!(mayer_vietoris_audit(&bv(&[1, 2]), &f, 0).is_ok());
    }

    #[test]
    fn wedge_complexes() {
        let checks = audit_complexes(&[square_loop([0, 0], 1), square_loop([1, 1], 1)], 1).unwrap();
        assert!(checks.iter().all(|c| c.verdict == Verdict::Pass));
        assert_eq!(checks[1].union_betti, 2);
        assert_eq!(checks[1].bound, 3);
    }

    #[test]
    fn bad_indices() {
        let mut f = SubsetFamily::new(2).unwrap();
        assert!(f.insert(&[3], bv(&[1])).is_err());
        assert!(f.insert(&[], bv(&[1])).is_err());
        assert!(SubsetFamily::new(0).is_err());
    }
}
