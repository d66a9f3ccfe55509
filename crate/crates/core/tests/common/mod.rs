#![allow(dead_code)]

use std::path::PathBuf;

use conedd::engine::{Adjacency, Prefilter, Representation, RunConfig};
use conedd::{EnumerationProblem, IntVector, OrderingStrategy, Ray, Triangulation};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn gieseking() -> EnumerationProblem {
    EnumerationProblem::parse(&std::fs::read_to_string(fixture("gieseking.cone")).unwrap()).unwrap()
}

pub fn triangulation(name: &str) -> Triangulation {
    Triangulation::parse(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

/// Sparse random problem: `d <= 12`, `g <= 6`, rows with 1 to 4 non-zeros
/// in `-2..=2`, and `d / 3` disjoint groups of three.
pub fn random_problem(seed: u64) -> EnumerationProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.random_range(3..=12usize);
    let g = rng.random_range(0..=6usize);
    let mut rows = Vec::with_capacity(g);
    for _ in 0..g {
        let mut row = vec![0i64; d];
        let nz = rng.random_range(1..=4usize.min(d));
        let mut cols: Vec<usize> = (0..d).collect();
        cols.shuffle(&mut rng);
        for &c in &cols[..nz] {
            row[c] = *[-2i64, -1, 1, 2].choose(&mut rng).unwrap();
        }
        rows.push(row);
    }
    let mut idx: Vec<usize> = (0..d).collect();
    idx.shuffle(&mut rng);
    let groups: Vec<Vec<usize>> = idx
        .chunks_exact(3)
        .map(|c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c
        })
        .collect();
    let rows: Vec<&[i64]> = rows.iter().map(|r| &r[..]).collect();
    let groups: Vec<&[usize]> = groups.iter().map(|g| &g[..]).collect();
    EnumerationProblem::from_i64(d, &rows, &groups).unwrap()
}

pub fn orderings() -> [OrderingStrategy; 5] {
    [
        OrderingStrategy::Input,
        OrderingStrategy::PositionVector,
        OrderingStrategy::LexPositiveFirst,
        OrderingStrategy::LexRandomSigns(7),
        OrderingStrategy::Dynamic,
    ]
}

/// All ordering x adjacency x representation x prefilter combinations, filtered.
pub fn all_configs() -> Vec<RunConfig> {
    let mut out = Vec::new();
    for ordering in orderings() {
        for adjacency in [Adjacency::Combinatorial, Adjacency::Algebraic] {
            for representation in [Representation::Full, Representation::Inner] {
                for prefilter in [Prefilter::Off, Prefilter::Basic, Prefilter::Extended] {
                    out.push(RunConfig {
                        ordering,
                        adjacency,
                        representation,
                        filtering: true,
                        prefilter,
                    });
                }
            }
        }
    }
    out
}

pub fn coords(rays: &[Ray]) -> Vec<IntVector> {
    rays.iter().map(|r| r.coords.clone()).collect()
}
