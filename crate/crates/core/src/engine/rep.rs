//! The two interchangeable vertex representations.
//!
//! [`FullRay`] stores coordinates. [`InnerRay`] stores only the inner
//! products with the hyperplanes not yet processed; its coordinates are
//! recovered from the zero set once enumeration is finished.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{content, dot_unchecked, normalize_in_place, IntMatrix, IntVector};
use crate::problem::EnumerationProblem;
use crate::zeroset::ZeroSet;

/// A final extreme ray: gcd-normalized, non-negative coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    pub coords: IntVector,
    pub zeros: ZeroSet,
}

impl Ray {
    pub fn new(coords: IntVector) -> Self {
        let zeros = ZeroSet::of(&coords);
        Ray { coords, zeros }
    }
}

/// Read-only view the representations need of the running engine.
pub struct StageContext<'a> {
    pub problem: &'a EnumerationProblem,
    /// Unprocessed hyperplane indices, aligned with [`InnerRay::products`].
    pub remaining: &'a [usize],
}

pub trait VertexRep: Clone + Send + Sync + Sized {
    const NAME: &'static str;

    /// The `d` unit vectors.
    fn init(ctx: &StageContext<'_>) -> Vec<Self>;

    fn zeros(&self) -> &ZeroSet;

    /// `m^(k) . v`, where `pos` is the position of `k` in `ctx.remaining`.
    fn product(&self, ctx: &StageContext<'_>, k: usize, pos: usize) -> BigInt;

    /// The point on the hyperplane between `u` (above, `pu > 0`) and `w`
    /// (below, `pw < 0`): `pu * w - pw * u`, normalized.
    fn combine(
        u: &Self,
        w: &Self,
        pu: &BigInt,
        pw: &BigInt,
        ctx: &StageContext<'_>,
        pos: usize,
    ) -> Result<Self>;

    /// Copy of a vertex lying on the hyperplane at `pos`, for the next stage.
    fn carry(&self, pos: usize) -> Self;

    /// Logical storage in bytes: 8 per integer limb plus the bitmask.
    fn memory_bytes(&self) -> usize;

    fn into_ray(self, problem: &EnumerationProblem) -> Result<Ray>;
}

fn limbs(x: &BigInt) -> usize {
    (x.bits() as usize).div_ceil(64).max(1)
}

fn integer_bytes(v: &[BigInt]) -> usize {
    v.iter().map(limbs).sum::<usize>() * 8
}

fn unit_zeros(dim: usize, j: usize) -> ZeroSet {
    let mut z = ZeroSet::full(dim);
    z.remove(j);
    z
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullRay {
    pub coords: IntVector,
    pub zeros: ZeroSet,
}

impl VertexRep for FullRay {
    const NAME: &'static str = "full";

    fn init(ctx: &StageContext<'_>) -> Vec<Self> {
        let d = ctx.problem.dim();
        (0..d)
            .map(|j| {
                let mut coords = vec![BigInt::zero(); d];
                coords[j] = BigInt::one();
                FullRay {
                    coords,
                    zeros: unit_zeros(d, j),
                }
            })
            .collect()
    }

    #[inline]
    fn zeros(&self) -> &ZeroSet {
        &self.zeros
    }

    fn product(&self, ctx: &StageContext<'_>, k: usize, _pos: usize) -> BigInt {
        dot_unchecked(&ctx.problem.equations()[k], &self.coords)
    }

    fn combine(
        u: &Self,
        w: &Self,
        pu: &BigInt,
        pw: &BigInt,
        _ctx: &StageContext<'_>,
        _pos: usize,
    ) -> Result<Self> {
        if !pu.is_positive() || !pw.is_negative() {
            return Err(Error::Internal(
                "combine called on a pair not straddling the hyperplane".into(),
            ));
        }
        let mut coords: IntVector = u
            .coords
            .iter()
            .zip(&w.coords)
            .map(|(a, b)| {
                let mut x = BigInt::zero();
                if !b.is_zero() {
                    x += pu * b;
                }
                if !a.is_zero() {
                    x -= pw * a;
                }
                x
            })
            .collect();
        normalize_in_place(&mut coords)?;
        let zeros = u.zeros.intersect_unchecked(&w.zeros);
        if ZeroSet::of(&coords) != zeros {
            return Err(Error::Internal(
                "combined zero set differs from the intersection of its parents".into(),
            ));
        }
        Ok(FullRay { coords, zeros })
    }

    fn carry(&self, _pos: usize) -> Self {
        self.clone()
    }

    fn memory_bytes(&self) -> usize {
        integer_bytes(&self.coords) + self.zeros.storage_bytes()
    }

    fn into_ray(self, _problem: &EnumerationProblem) -> Result<Ray> {
        Ok(Ray {
            coords: self.coords,
            zeros: self.zeros,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerRay {
    pub products: IntVector,
    pub zeros: ZeroSet,
}

impl VertexRep for InnerRay {
    const NAME: &'static str = "inner";

    fn init(ctx: &StageContext<'_>) -> Vec<Self> {
        let d = ctx.problem.dim();
        let eqs = ctx.problem.equations();
        (0..d)
            .map(|j| InnerRay {
                products: ctx.remaining.iter().map(|&k| eqs[k][j].clone()).collect(),
                zeros: unit_zeros(d, j),
            })
            .collect()
    }

    #[inline]
    fn zeros(&self) -> &ZeroSet {
        &self.zeros
    }

    fn product(&self, _ctx: &StageContext<'_>, _k: usize, pos: usize) -> BigInt {
        self.products[pos].clone()
    }

    fn combine(
        u: &Self,
        w: &Self,
        pu: &BigInt,
        pw: &BigInt,
        _ctx: &StageContext<'_>,
        pos: usize,
    ) -> Result<Self> {
        if !pu.is_positive() || !pw.is_negative() {
            return Err(Error::Internal(
                "combine called on a pair not straddling the hyperplane".into(),
            ));
        }
        let mut products: IntVector = u
            .products
            .iter()
            .zip(&w.products)
            .enumerate()
            .filter(|&(j, _)| j != pos)
            .map(|(_, (a, b))| {
                let mut x = BigInt::zero();
                if !b.is_zero() {
                    x += pu * b;
                }
                if !a.is_zero() {
                    x -= pw * a;
                }
                x
            })
            .collect();
        let g = content(&products);
        if !g.is_zero() && !g.is_one() {
            for x in products.iter_mut() {
                *x /= &g;
            }
        }
        Ok(InnerRay {
            products,
            zeros: u.zeros.intersect_unchecked(&w.zeros),
        })
    }

    fn carry(&self, pos: usize) -> Self {
        let products = self
            .products
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != pos)
            .map(|(_, x)| x.clone())
            .collect();
        InnerRay {
            products,
            zeros: self.zeros.clone(),
        }
    }

    fn memory_bytes(&self) -> usize {
        integer_bytes(&self.products) + self.zeros.storage_bytes()
    }

    fn into_ray(self, problem: &EnumerationProblem) -> Result<Ray> {
        recover(problem, &self.zeros)
    }
}

/// Rebuilds a final vertex from its zero set by solving the equations
/// together with `x_j = 0` for every `j` in the zero set.
pub fn recover(problem: &EnumerationProblem, zeros: &ZeroSet) -> Result<Ray> {
    recover_from(problem.equations(), problem.dim(), zeros)
}

/// As [`recover`], against an explicit set of equation rows.
pub fn recover_from(equations: &[IntVector], dim: usize, zeros: &ZeroSet) -> Result<Ray> {
    if zeros.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: zeros.dim(),
        });
    }
    let support = zeros.complement_indices();
    let m = IntMatrix::select_columns(equations, &support);
    let x = m.nullspace_ray()?;
    let mut coords = vec![BigInt::zero(); dim];
    for (&j, v) in support.iter().zip(x) {
        coords[j] = v;
    }
    let found = ZeroSet::of(&coords);
    if &found != zeros {
        return Err(Error::ZeroSetMismatch {
            expected: zeros.iter().collect(),
            found: found.iter().collect(),
        });
    }
    Ok(Ray {
        coords,
        zeros: found,
    })
}
