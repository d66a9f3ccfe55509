//! Pair tests applied before two vertices are combined.

use crate::linalg::{rank_of_columns, IntVector};
use crate::zeroset::{superset_words, GroupMasks, ZeroSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Adjacency {
    Combinatorial,
    Algebraic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prefilter {
    Off,
    /// `|Z(u) ∩ Z(w)| + (hyperplanes processed) >= d - 2`
    Basic,
    /// `|Z(u) ∩ Z(w)| + (pseudo-separating hyperplanes processed) >= d - 2`
    Extended,
}

/// Whether `u + w` still satisfies every group constraint.
#[inline]
pub fn compatible(u: &ZeroSet, w: &ZeroSet, groups: &GroupMasks) -> bool {
    groups.satisfied_by_pair(u.words(), w.words())
}

/// Necessary condition for adjacency in the polytope built from the
/// hyperplanes processed so far. `processed` and `sep` are the counts
/// before the current hyperplane.
#[inline]
pub fn dim_prefilter(
    common_zeros: usize,
    dim: usize,
    processed: usize,
    sep: usize,
    mode: Prefilter,
) -> bool {
    match mode {
        Prefilter::Off => true,
        Prefilter::Basic => common_zeros + processed + 2 >= dim,
        Prefilter::Extended => common_zeros + sep + 2 >= dim,
    }
}

/// Zero sets of one vertex set packed contiguously for the witness scan.
#[derive(Clone, Debug)]
pub struct ZeroTable {
    stride: usize,
    words: Vec<u64>,
}

impl ZeroTable {
    pub fn new<'a>(stride: usize, sets: impl IntoIterator<Item = &'a ZeroSet>) -> Self {
        let mut words = Vec::new();
        for z in sets {
            debug_assert_eq!(z.words().len(), stride);
            words.extend_from_slice(z.words());
        }
        ZeroTable { stride, words }
    }

    pub fn len(&self) -> usize {
        self.words.len().checked_div(self.stride).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// True iff no vertex other than `skip_a` and `skip_b` has a zero set
    /// containing `common`. Exits on the first witness.
    pub fn no_witness(&self, common: &[u64], skip_a: usize, skip_b: usize) -> bool {
        if self.stride == 0 {
            return self.len() <= 2;
        }
        !self
            .words
            .chunks_exact(self.stride)
            .enumerate()
            .any(|(i, z)| i != skip_a && i != skip_b && superset_words(z, common))
    }
}

/// Combinatorial test: `u` and `w` (at positions `u_idx`, `w_idx` of
/// `vertices`) are adjacent iff no other vertex's zero set contains
/// `Z(u) ∩ Z(w)`.
pub fn adjacent_combinatorial(vertices: &[ZeroSet], u_idx: usize, w_idx: usize) -> bool {
    let common = vertices[u_idx].intersect_unchecked(&vertices[w_idx]);
    !vertices
        .iter()
        .enumerate()
        .any(|(i, z)| i != u_idx && i != w_idx && superset_words(z.words(), common.words()))
}

/// Algebraic test: the processed hyperplanes together with `x_k = 0` for
/// `k ∈ Z(u) ∩ Z(w)` cut out a two-dimensional subspace.
pub fn adjacent_algebraic(common: &ZeroSet, processed: &[&IntVector]) -> bool {
    let support = common.complement_indices();
    if support.len() < 2 {
        return false;
    }
    rank_of_columns(processed, &support) + 2 == support.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector;
    use crate::zeroset::ConstraintGroup;

    fn set(dim: usize, idx: &[usize]) -> ZeroSet {
        ZeroSet::from_indices(dim, idx.iter().copied())
    }

    #[test]
    fn compatibility() {
        let groups = GroupMasks::new(&[ConstraintGroup::new(vec![4, 5, 6]).unwrap()]);
        // Both supported on quad 4 only.
        let u = set(7, &[0, 5, 6]);
        let w = set(7, &[1, 5, 6]);
        assert!(compatible(&u, &w, &groups));
        let w = set(7, &[1, 4, 6]);
        assert!(!compatible(&u, &w, &groups));
        assert!(compatible(
            &ZeroSet::empty(7),
            &ZeroSet::empty(7),
            &GroupMasks::default()
        ));
    }

    #[test]
    fn prefilter() {
        assert!(dim_prefilter(1, 3, 1, 0, Prefilter::Basic));
        assert!(!dim_prefilter(10, 63, 40, 0, Prefilter::Extended));
        assert!(dim_prefilter(10, 63, 40, 0, Prefilter::Off));
        for common in 0..10 {
            for processed in 0..6 {
                for sep in 0..=processed {
                    if dim_prefilter(common, 12, processed, sep, Prefilter::Extended) {
                        assert!(dim_prefilter(common, 12, processed, sep, Prefilter::Basic));
                    }
                }
            }
        }
    }

    #[test]
    fn combinatorial() {
        let units: Vec<ZeroSet> = (0..3)
            .map(|j| {
                set(
                    3,
                    &[0, 1, 2]
                        .iter()
                        .copied()
                        .filter(|&k| k != j)
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        assert!(adjacent_combinatorial(&units, 0, 1));
        assert!(adjacent_combinatorial(&units[..2], 0, 1));
        // A duplicate of u is still a witness: only the identities are skipped.
        let dup = vec![units[0].clone(), units[1].clone(), units[0].clone()];
        assert!(!adjacent_combinatorial(&dup, 0, 1));
        let table = ZeroTable::new(1, &units);
        assert!(table.no_witness(units[0].intersect_unchecked(&units[1]).words(), 0, 1));
        // A square cone: rays a, b, c, d around; a and c are not adjacent.
        let square = vec![
            set(4, &[0, 1]),
            set(4, &[1, 2]),
            set(4, &[2, 3]),
            set(4, &[3, 0]),
        ];
        assert!(adjacent_combinatorial(&square, 0, 1));
        assert!(!adjacent_combinatorial(&square, 0, 2));
    }

    #[test]
    fn algebraic() {
        assert!(adjacent_algebraic(&ZeroSet::empty(2), &[]));
        let row = int_vector(&[1, -1, 0]);
        // (1,1,0) and (0,0,1) in the cone x0 = x1: no common zeros, rank 1 = 3 - 2.
        assert!(adjacent_algebraic(&ZeroSet::empty(3), &[&row]));
        // A vertex paired with itself keeps all its zeros: rank d - 1.
        assert!(!adjacent_algebraic(&set(3, &[2]), &[&row]));
    }
}
