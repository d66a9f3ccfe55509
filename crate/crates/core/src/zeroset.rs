//! Zero sets stored as packed 64-bit bitmasks.
//!
//! A zero set records which coordinate facets `x_k = 0` a vector lies on.
//! Every set operation the engine needs (intersection, superset test,
//! cardinality and the group constraint check) is word-parallel.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(dim: usize) -> usize {
    dim.div_ceil(WORD_BITS)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroSet {
    bits: Vec<u64>,
    dim: usize,
}

impl ZeroSet {
    pub fn empty(dim: usize) -> Self {
        ZeroSet {
            bits: vec![0; words_for(dim)],
            dim,
        }
    }

    pub fn full(dim: usize) -> Self {
        let mut z = ZeroSet {
            bits: vec![!0; words_for(dim)],
            dim,
        };
        z.clear_tail();
        z
    }

    pub fn from_indices(dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut z = ZeroSet::empty(dim);
        for k in indices {
            z.insert(k);
        }
        z
    }

    /// Zero set of an integer vector: bit `k` is set iff `v[k] == 0`.
    pub fn of(v: &[BigInt]) -> Self {
        ZeroSet::from_indices(
            v.len(),
            v.iter()
                .enumerate()
                .filter(|(_, x)| x.is_zero())
                .map(|(k, _)| k),
        )
    }

    #[cfg(test)]
    pub(crate) fn from_words(dim: usize, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), words_for(dim));
        let mut z = ZeroSet { bits, dim };
        z.clear_tail();
        z
    }

    fn clear_tail(&mut self) {
        let rem = self.dim % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn insert(&mut self, k: usize) {
        assert!(
            k < self.dim,
            "index {k} out of range for dimension {}",
            self.dim
        );
        self.bits[k / WORD_BITS] |= 1u64 << (k % WORD_BITS);
    }

    pub fn remove(&mut self, k: usize) {
        assert!(
            k < self.dim,
            "index {k} out of range for dimension {}",
            self.dim
        );
        self.bits[k / WORD_BITS] &= !(1u64 << (k % WORD_BITS));
    }

    #[inline]
    pub fn contains(&self, k: usize) -> bool {
        k < self.dim && self.bits[k / WORD_BITS] >> (k % WORD_BITS) & 1 == 1
    }

    fn check_dim(&self, other: &ZeroSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &ZeroSet) -> Result<ZeroSet> {
        self.check_dim(other)?;
        Ok(self.intersect_unchecked(other))
    }

    #[inline]
    pub(crate) fn intersect_unchecked(&self, other: &ZeroSet) -> ZeroSet {
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & b)
            .collect();
        ZeroSet {
            bits,
            dim: self.dim,
        }
    }

    /// True iff every member of `other` is also in `self`.
    pub fn is_superset(&self, other: &ZeroSet) -> Result<bool> {
        self.check_dim(other)?;
        Ok(superset_words(&self.bits, &other.bits))
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim).filter(move |&k| self.contains(k))
    }

    /// Indices *not* in the set, i.e. the support of any vector with this zero set.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.dim).filter(|&k| !self.contains(k)).collect()
    }

    pub fn group_satisfied(&self, groups: &GroupMasks) -> bool {
        groups.satisfied_by(&self.bits)
    }

    /// Bytes used by the packed words.
    pub fn storage_bytes(&self) -> usize {
        self.bits.len() * std::mem::size_of::<u64>()
    }
}

#[inline]
pub(crate) fn superset_words(sup: &[u64], sub: &[u64]) -> bool {
    sup.iter().zip(sub).all(|(a, b)| b & !a == 0)
}

impl fmt::Debug for ZeroSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Indices of which at most one coordinate may be non-zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstraintGroup {
    indices: Vec<usize>,
}

impl ConstraintGroup {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::Problem("empty constraint group".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Problem(format!(
                "group indices {indices:?} not strictly increasing"
            )));
        }
        Ok(ConstraintGroup { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Checks that a list of groups is valid for dimension `dim`: indices in
/// range and groups pairwise disjoint.
pub fn validate_groups(groups: &[ConstraintGroup], dim: usize) -> Result<()> {
    let mut seen = ZeroSet::empty(dim);
    for g in groups {
        for &k in g.indices() {
            if k >= dim {
                return Err(Error::Problem(format!(
                    "group index {k} out of range for dimension {dim}"
                )));
            }
            if seen.contains(k) {
                return Err(Error::Problem(format!(
                    "index {k} appears in more than one group"
                )));
            }
            seen.insert(k);
        }
    }
    Ok(())
}

/// Constraint groups compiled to per-word masks.
///
/// A zero set satisfies a group when at most one of the group's indices is
/// missing from it, i.e. `popcount(z & mask) >= |G| - 1`.
#[derive(Clone, Debug, Default)]
pub struct GroupMasks {
    // (word, mask) pieces per group; a group may straddle a word boundary.
    groups: Vec<Vec<(usize, u64)>>,
    sizes: Vec<u32>,
}

impl GroupMasks {
    pub fn new(groups: &[ConstraintGroup]) -> Self {
        let mut compiled = Vec::with_capacity(groups.len());
        let mut sizes = Vec::with_capacity(groups.len());
        for g in groups {
            let mut pieces: Vec<(usize, u64)> = Vec::new();
            for &k in g.indices() {
                let (w, bit) = (k / WORD_BITS, 1u64 << (k % WORD_BITS));
                match pieces.iter_mut().find(|(pw, _)| *pw == w) {
                    Some((_, m)) => *m |= bit,
                    None => pieces.push((w, bit)),
                }
            }
            compiled.push(pieces);
            sizes.push(g.len() as u32);
        }
        GroupMasks {
            groups: compiled,
            sizes,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn satisfied_by(&self, words: &[u64]) -> bool {
        self.groups.iter().zip(&self.sizes).all(|(pieces, &size)| {
            let present: u32 = pieces
                .iter()
                .map(|&(w, m)| (words[w] & m).count_ones())
                .sum();
            present + 1 >= size
        })
    }

    /// Compatibility of two zero sets without materializing the intersection.
    #[inline]
    pub fn satisfied_by_pair(&self, a: &[u64], b: &[u64]) -> bool {
        self.groups.iter().zip(&self.sizes).all(|(pieces, &size)| {
            let present: u32 = pieces
                .iter()
                .map(|&(w, m)| (a[w] & b[w] & m).count_ones())
                .sum();
            present + 1 >= size
        })
    }
}

/// Convenience wrapper over [`GroupMasks`] for one-off checks.
pub fn group_satisfied(z: &ZeroSet, groups: &[ConstraintGroup]) -> bool {
    GroupMasks::new(groups).satisfied_by(z.words())
}
