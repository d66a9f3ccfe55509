//! Hyperplane processing orders.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::problem::EnumerationProblem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderingStrategy {
    /// Construction order.
    Input,
    /// Lexicographic order of 0/1 support vectors.
    PositionVector,
    /// Lexicographic order after making each row's leading entry positive.
    LexPositiveFirst,
    /// Lexicographic order after flipping row signs with a seeded ChaCha8 stream.
    LexRandomSigns(u64),
    /// At each stage, the hyperplane with the fewest `|S+| * |S-|` pairs.
    Dynamic,
}

impl fmt::Display for OrderingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingStrategy::Input => f.write_str("input"),
            OrderingStrategy::PositionVector => f.write_str("position"),
            OrderingStrategy::LexPositiveFirst => f.write_str("lexpos"),
            OrderingStrategy::LexRandomSigns(seed) => write!(f, "lexrand:{seed}"),
            OrderingStrategy::Dynamic => f.write_str("dynamic"),
        }
    }
}

impl FromStr for OrderingStrategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "input" => Ok(OrderingStrategy::Input),
            "position" => Ok(OrderingStrategy::PositionVector),
            "lexpos" => Ok(OrderingStrategy::LexPositiveFirst),
            "dynamic" => Ok(OrderingStrategy::Dynamic),
            _ => match s.strip_prefix("lexrand:") {
                Some(seed) => seed
                    .parse()
                    .map(OrderingStrategy::LexRandomSigns)
                    .map_err(|_| format!("bad seed in {s:?}")),
                None => Err(format!("unknown ordering {s:?}")),
            },
        }
    }
}

pub fn position_vector(m: &[BigInt]) -> Vec<u8> {
    m.iter().map(|x| u8::from(!x.is_zero())).collect()
}

/// Static processing order as a permutation of equation indices.
pub fn order_static(p: &EnumerationProblem, strategy: OrderingStrategy) -> Result<Vec<usize>> {
    let rows = p.equations();
    let mut order: Vec<usize> = (0..rows.len()).collect();
    match strategy {
        OrderingStrategy::Input => {}
        OrderingStrategy::PositionVector => {
            let keys: Vec<Vec<u8>> = rows.iter().map(|r| position_vector(r)).collect();
            order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        }
        OrderingStrategy::LexPositiveFirst => {
            let keys: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    let negate = r
                        .iter()
                        .find(|x| !x.is_zero())
                        .is_some_and(|x| x.is_negative());
                    signed(r, negate)
                })
                .collect();
            order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        }
        OrderingStrategy::LexRandomSigns(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let keys: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| signed(r, rng.random_bool(0.5)))
                .collect();
            order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        }
        OrderingStrategy::Dynamic => return Err(Error::DynamicOrdering),
    }
    Ok(order)
}

fn signed(row: &[BigInt], negate: bool) -> Vec<BigInt> {
    if negate {
        row.iter().map(|x| -x).collect()
    } else {
        row.to_vec()
    }
}

/// Picks, among `candidates`, the hyperplane minimizing `|S+| * |S-|`, where
/// `sign(k, v)` gives the side of vertex `v` for hyperplane `k`. Ties go to
/// the lowest hyperplane index.
pub fn choose_dynamic<V>(
    candidates: &[usize],
    vertices: &[V],
    sign: impl Fn(usize, &V) -> Ordering,
) -> usize {
    assert!(!candidates.is_empty(), "no unprocessed hyperplanes");
    candidates
        .iter()
        .map(|&k| {
            let (mut pos, mut neg) = (0u64, 0u64);
            for v in vertices {
                match sign(k, v) {
                    Ordering::Greater => pos += 1,
                    Ordering::Less => neg += 1,
                    Ordering::Equal => {}
                }
            }
            (pos * neg, k)
        })
        .min()
        .map(|(_, k)| k)
        .expect("non-empty candidates")
}
