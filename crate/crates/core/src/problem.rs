//! The enumeration problem: a cone `{x >= 0 : m_k . x = 0}` together with
//! groups of coordinates of which at most one may be non-zero.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot_unchecked, IntMatrix, IntVector};
use crate::zeroset::{validate_groups, ConstraintGroup, ZeroSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationProblem {
    dim: usize,
    equations: Vec<IntVector>,
    groups: Vec<ConstraintGroup>,
}

impl EnumerationProblem {
    pub fn new(
        dim: usize,
        equations: Vec<IntVector>,
        groups: Vec<ConstraintGroup>,
    ) -> Result<Self> {
        if let Some(bad) = equations.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        validate_groups(&groups, dim)?;
        Ok(EnumerationProblem {
            dim,
            equations,
            groups,
        })
    }

    pub fn from_i64(dim: usize, rows: &[&[i64]], groups: &[&[usize]]) -> Result<Self> {
        let equations = rows.iter().map(|r| crate::linalg::int_vector(r)).collect();
        let groups = groups
            .iter()
            .map(|g| ConstraintGroup::new(g.to_vec()))
            .collect::<Result<_>>()?;
        EnumerationProblem::new(dim, equations, groups)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equations(&self) -> &[IntVector] {
        &self.equations
    }

    pub fn groups(&self) -> &[ConstraintGroup] {
        &self.groups
    }

    pub fn equation_matrix(&self) -> IntMatrix {
        IntMatrix::new(self.equations.clone(), self.dim).expect("rows validated on construction")
    }

    /// Drops exact duplicate rows, keeping first occurrences.
    pub fn dedup_equations(&self) -> EnumerationProblem {
        let mut seen = HashSet::new();
        let equations = self
            .equations
            .iter()
            .filter(|r| seen.insert((*r).clone()))
            .cloned()
            .collect();
        EnumerationProblem {
            dim: self.dim,
            equations,
            groups: self.groups.clone(),
        }
    }

    /// Non-negative, on every hyperplane, and at most one non-zero entry per group.
    pub fn admissible(&self, v: &[BigInt]) -> bool {
        v.len() == self.dim
            && v.iter().all(|x| !x.is_negative())
            && self.equations.iter().all(|m| dot_unchecked(m, v).is_zero())
            && self
                .groups
                .iter()
                .all(|g| g.indices().iter().filter(|&&k| !v[k].is_zero()).count() <= 1)
    }

    /// True when `v` spans an extreme ray of the cone: the equations plus
    /// the facets `x_k = 0` it lies on have rank `d - 1`.
    pub fn is_extreme(&self, v: &[BigInt]) -> bool {
        if v.len() != self.dim || v.iter().all(|x| x.is_zero()) {
            return false;
        }
        let support = ZeroSet::of(v).complement_indices();
        let m = IntMatrix::select_columns(&self.equations, &support);
        m.rank() + 1 == support.len()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `d g` header"))?;
        let nums = parse_usizes(header, line_no)?;
        let [dim, g] = nums[..] else {
            return Err(Error::parse(line_no, "header must be `d g`"));
        };

        let mut equations = Vec::with_capacity(g);
        let mut last_line = line_no;
        for _ in 0..g {
            let (line_no, line) = lines
                .next()
                .ok_or_else(|| Error::parse(last_line, "missing equation row"))?;
            last_line = line_no;
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<BigInt>()
                        .map_err(|_| Error::parse(line_no, format!("bad integer {t:?}")))
                })
                .collect::<Result<IntVector>>()?;
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            equations.push(row);
        }

        let mut groups = Vec::new();
        if let Some((line_no, line)) = lines.next() {
            let k = line
                .strip_prefix("groups")
                .and_then(|rest| rest.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::parse(line_no, "expected `groups k`"))?;
            last_line = line_no;
            for _ in 0..k {
                let (line_no, line) = lines
                    .next()
                    .ok_or_else(|| Error::parse(last_line, "missing group line"))?;
                last_line = line_no;
                let group = ConstraintGroup::new(parse_usizes(line, line_no)?)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                groups.push(group);
            }
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::parse(line_no, "trailing content"));
        }
        EnumerationProblem::new(dim, equations, groups)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.dim, self.equations.len());
        for row in &self.equations {
            out.push_str(&join(row.iter()));
            out.push('\n');
        }
        let _ = writeln!(out, "groups {}", self.groups.len());
        for g in &self.groups {
            out.push_str(&join(g.indices().iter()));
            out.push('\n');
        }
        out
    }
}

fn parse_usizes(line: &str, line_no: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(line_no, format!("bad index {t:?}")))
        })
        .collect()
}

fn join<T: ToString>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Writes rays in the output format: `# rays R` then one ray per line.
/// Callers are expected to pass rays already sorted and normalized.
pub fn write_rays(rays: &[IntVector]) -> String {
    let mut out = format!("# rays {}\n", rays.len());
    for r in rays {
        out.push_str(&join(r.iter()));
        out.push('\n');
    }
    out
}

pub fn parse_rays(text: &str, dim: usize) -> Result<Vec<IntVector>> {
    let mut rays = Vec::new();
    let mut declared = None;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(count) = comment.trim().strip_prefix("rays") {
                declared = Some(
                    count
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| Error::parse(line_no, "bad `# rays R` header"))?,
                );
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let ray = trimmed
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Error::parse(line_no, format!("bad integer {t:?}")))
            })
            .collect::<Result<IntVector>>()?;
        if ray.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: ray.len(),
            });
        }
        rays.push(ray);
    }
    if let Some(n) = declared {
        if n != rays.len() {
            return Err(Error::parse(
                1,
                format!("header declares {n} rays, found {}", rays.len()),
            ));
        }
    }
    Ok(rays)
}

/// Upper bound on the vertex count of a `dim`-polytope with `facets`
/// facets: `C(f - ceil(p/2), floor(p/2)) + C(f - floor(p/2) - 1, ceil(p/2) - 1)`.
pub fn mcmullen_bound(dim: usize, facets: usize) -> Result<BigInt> {
    if facets < dim {
        return Err(Error::BoundDomain { dim, facets });
    }
    let (lo, hi) = (dim / 2, dim.div_ceil(2));
    let choose = |n: i64, k: i64| -> BigInt {
        if k < 0 || n < k {
            BigInt::zero()
        } else {
            binomial(BigInt::from(n), BigInt::from(k))
        }
    };
    let (f, lo, hi) = (facets as i64, lo as i64, hi as i64);
    Ok(choose(f - hi, lo) + choose(f - lo - 1, hi - 1))
}
