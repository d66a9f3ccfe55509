//! Exact integer linear algebra on unbounded integers.
//!
//! Rank and nullspace use fraction-free (Bareiss) elimination so that every
//! intermediate value stays an integer; no rationals are ever formed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntVector = Vec<BigInt>;

pub fn int_vector(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(m: &[BigInt], v: &[BigInt]) -> Result<BigInt> {
    if m.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: m.len(),
            found: v.len(),
        });
    }
    Ok(dot_unchecked(m, v))
}

#[inline]
pub(crate) fn dot_unchecked(m: &[BigInt], v: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (a, b) in m.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b;
        }
    }
    acc
}

/// Gcd of the absolute values of all entries (zero for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in v {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Divides out the content; negates when no entry is positive.
pub fn gcd_normalize(v: &[BigInt]) -> Result<IntVector> {
    let mut out = v.to_vec();
    normalize_in_place(&mut out)?;
    Ok(out)
}

pub(crate) fn normalize_in_place(v: &mut [BigInt]) -> Result<()> {
    let g = content(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    if v.iter().all(|x| !x.is_positive()) {
        for x in v.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<IntVector>,
    cols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<IntVector>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(IntMatrix { rows, cols })
    }

    pub fn from_i64(rows: &[&[i64]], cols: usize) -> Result<Self> {
        IntMatrix::new(rows.iter().map(|r| int_vector(r)).collect(), cols)
    }

    /// The submatrix keeping only the listed columns (in the given order).
    pub fn select_columns<'a>(
        rows: impl IntoIterator<Item = &'a IntVector>,
        columns: &[usize],
    ) -> Self {
        let rows = rows
            .into_iter()
            .map(|r| columns.iter().map(|&c| r[c].clone()).collect())
            .collect();
        IntMatrix {
            rows,
            cols: columns.len(),
        }
    }

    /// Appends a unit row `e_k`.
    pub fn push_unit_row(&mut self, k: usize) {
        let mut row = vec![BigInt::zero(); self.cols];
        row[k] = BigInt::one();
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        Echelon::reduce(self.rows.clone(), self.cols).pivots.len()
    }

    /// Integer generator of a one-dimensional nullspace, gcd 1, non-negative.
    pub fn nullspace_ray(&self) -> Result<IntVector> {
        let ech = Echelon::reduce(self.rows.clone(), self.cols);
        let nullity = self.cols - ech.pivots.len();
        if nullity != 1 {
            return Err(Error::Nullity(nullity));
        }
        let mut is_pivot = vec![false; self.cols];
        for &(_, c) in &ech.pivots {
            is_pivot[c] = true;
        }
        let free = is_pivot.iter().position(|p| !p).expect("one free column");

        let mut x = vec![BigInt::zero(); self.cols];
        x[free] = BigInt::one();
        for &(r, c) in ech.pivots.iter().rev() {
            let row = &ech.rows[r];
            let s: BigInt = ((c + 1)..self.cols)
                .filter(|&j| !row[j].is_zero() && !x[j].is_zero())
                .map(|j| &row[j] * &x[j])
                .sum();
            if s.is_zero() {
                continue;
            }
            let p = &row[c];
            let g = s.gcd(p);
            let scale = p.abs() / &g;
            if !scale.is_one() {
                for xi in x.iter_mut() {
                    if !xi.is_zero() {
                        *xi *= &scale;
                    }
                }
            }
            x[c] = -(&s * &scale) / p;
        }
        normalize_in_place(&mut x)?;
        if x.iter().any(|v| v.is_negative()) {
            return Err(Error::MixedSign);
        }
        Ok(x)
    }
}

pub fn rank(m: &IntMatrix) -> usize {
    m.rank()
}

/// Rank of the submatrix of `rows` on `columns`. Eliminates in checked
/// machine integers first and redoes the work on big integers only when an
/// entry or intermediate value overflows.
pub fn rank_of_columns(rows: &[&IntVector], columns: &[usize]) -> usize {
    let small: Option<Vec<Vec<i64>>> = rows
        .iter()
        .map(|r| columns.iter().map(|&c| r[c].to_i64()).collect())
        .collect();
    if let Some(rank) = small.and_then(|a| small_rank(a, columns.len())) {
        return rank;
    }
    IntMatrix::select_columns(rows.iter().copied(), columns).rank()
}

/// Bareiss rank on `i64`, `None` on overflow.
fn small_rank(mut a: Vec<Vec<i64>>, cols: usize) -> Option<usize> {
    let m = a.len();
    let mut prev = 1i64;
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in (c + 1)..cols {
                let v = piv
                    .checked_mul(row[j])?
                    .checked_sub(lead.checked_mul(pivot_row[j])?)?;
                row[j] = v / prev;
            }
        }
        prev = piv;
        r += 1;
    }
    Some(r)
}

pub fn nullspace_ray(m: &IntMatrix) -> Result<IntVector> {
    m.nullspace_ray()
}

/// Row echelon form produced by Bareiss elimination.
struct Echelon {
    rows: Vec<IntVector>,
    // (row, column) of each pivot, top to bottom
    pivots: Vec<(usize, usize)>,
}

impl Echelon {
    fn reduce(mut a: Vec<IntVector>, cols: usize) -> Echelon {
        let m = a.len();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (top, rest) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let piv = &pivot_row[c];
            for row in rest.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                for j in (c + 1)..cols {
                    let mut v = piv * &row[j];
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        v -= &lead * &pivot_row[j];
                    }
                    if !prev.is_one() && !v.is_zero() {
                        debug_assert!((&v % &prev).is_zero(), "inexact Bareiss division");
                        v /= &prev;
                    }
                    row[j] = v;
                }
            }
            prev = a[r][c].clone();
            pivots.push((r, c));
            r += 1;
        }
        Echelon { rows: a, pivots }
    }
}
