//! Brute-force extreme ray enumeration for small instances.
//!
//! Every candidate zero set `S` is tried directly: if the equations together
//! with `x_k = 0` for `k ∈ S` leave a one-dimensional solution space whose
//! generator is non-negative, that generator is a candidate ray. Shares only
//! the exact linear algebra with the engine.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;
use rayon::prelude::*;

use crate::engine::Ray;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector};
use crate::problem::EnumerationProblem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimit {
    pub max_dim: usize,
    pub max_subsets: u128,
}

impl Default for OracleLimit {
    fn default() -> Self {
        OracleLimit {
            max_dim: 14,
            max_subsets: 1 << 14,
        }
    }
}

impl OracleLimit {
    pub fn new(max_dim: usize, max_subsets: u128) -> Result<Self> {
        if max_dim == 0 || max_subsets == 0 {
            return Err(Error::Problem("oracle limits must be positive".into()));
        }
        Ok(OracleLimit {
            max_dim,
            max_subsets,
        })
    }
}

/// Smallest zero set size worth visiting: the equations plus `|S|` unit rows
/// can only have nullity 1 when `rank + |S| >= d - 1`.
fn min_subset_size(p: &EnumerationProblem) -> usize {
    let r = p.equation_matrix().rank();
    p.dim().saturating_sub(2 + r)
}

fn subsets_examined(dim: usize, min_size: usize) -> u128 {
    (min_size..=dim)
        .map(|k| binomial(dim as u128, k as u128))
        .sum()
}

pub fn brute_force_rays(p: &EnumerationProblem) -> Result<Vec<Ray>> {
    brute_force_rays_with(p, OracleLimit::default())
}

pub fn brute_force_rays_with(p: &EnumerationProblem, limit: OracleLimit) -> Result<Vec<Ray>> {
    let d = p.dim();
    if d > limit.max_dim || d >= 64 {
        return Err(Error::OracleLimit {
            dim: d,
            limit: limit.max_dim,
        });
    }
    let min_size = min_subset_size(p);
    let count = subsets_examined(d, min_size);
    if count > limit.max_subsets {
        return Err(Error::OracleSubsets {
            count,
            limit: limit.max_subsets,
        });
    }
    let eqs = p.equations();
    let candidates: BTreeSet<IntVector> = (0u64..1 << d)
        .into_par_iter()
        .filter(|s| s.count_ones() as usize >= min_size)
        .filter_map(|s| {
            let support: Vec<usize> = (0..d).filter(|&k| s >> k & 1 == 0).collect();
            let x = IntMatrix::select_columns(eqs, &support)
                .nullspace_ray()
                .ok()?;
            let mut coords = vec![BigInt::zero(); d];
            for (&j, v) in support.iter().zip(x) {
                coords[j] = v;
            }
            Some(coords)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(candidates
        .into_iter()
        .filter(|r| p.is_extreme(r))
        .map(Ray::new)
        .collect())
}

/// Extreme rays that satisfy the group constraints.
pub fn brute_force_filtered(p: &EnumerationProblem) -> Result<Vec<Ray>> {
    brute_force_filtered_with(p, OracleLimit::default())
}

pub fn brute_force_filtered_with(p: &EnumerationProblem, limit: OracleLimit) -> Result<Vec<Ray>> {
    Ok(brute_force_rays_with(p, limit)?
        .into_iter()
        .filter(|r| p.admissible(&r.coords))
        .collect())
}
