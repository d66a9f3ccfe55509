//! Double description enumeration with group filtering.
//!
//! The engine starts from the unit vectors of the non-negative orthant and
//! intersects one hyperplane per stage. At each stage the vertices are split
//! by the sign of their inner product with the new hyperplane; vertices on
//! the hyperplane survive, and each adjacent pair straddling it contributes
//! one new vertex. With filtering on, only pairs whose sum still satisfies
//! the group constraints are considered, so every stored vertex satisfies
//! them too.

mod adjacency;
mod rep;

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

pub use adjacency::{
    adjacent_algebraic, adjacent_combinatorial, compatible, dim_prefilter, Adjacency, Prefilter,
    ZeroTable,
};
pub use rep::{recover, recover_from, FullRay, InnerRay, Ray, StageContext, VertexRep};

use crate::error::{Error, Result};
use crate::linalg::IntVector;
use crate::ordering::{choose_dynamic, order_static, OrderingStrategy};
use crate::problem::EnumerationProblem;
use crate::zeroset::{words_for, GroupMasks, ZeroSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Representation {
    Full,
    Inner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RunConfig {
    pub ordering: OrderingStrategy,
    pub adjacency: Adjacency,
    pub representation: Representation,
    pub filtering: bool,
    pub prefilter: Prefilter,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            ordering: OrderingStrategy::PositionVector,
            adjacency: Adjacency::Combinatorial,
            representation: Representation::Inner,
            filtering: true,
            prefilter: Prefilter::Extended,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    /// `|V_i|` for `i = 0..=g`.
    pub stage_sizes: Vec<usize>,
    /// Logical bytes held by `V_i` for `i = 0..=g`.
    pub stage_memory: Vec<usize>,
    /// `|S+| * |S-|` at each stage.
    pub pairs: Vec<u64>,
    /// Pairs that passed the group check, per stage.
    pub compatible_pairs: Vec<u64>,
    /// Pairs that passed the dimensional prefilter, per stage.
    pub prefiltered_pairs: Vec<u64>,
    /// Pairs found adjacent (new vertices), per stage.
    pub adjacent_pairs: Vec<u64>,
    /// `sep(i)` for `i = 0..=g`.
    pub sep_trace: Vec<usize>,
    /// Hyperplane indices in processing order.
    pub order: Vec<usize>,
    pub elapsed: Duration,
    pub peak_memory: usize,
    pub final_count: usize,
    /// Adjacent pairs rejected by the Basic / Extended prefilter, counted
    /// only when auditing.
    pub audit_basic_violations: u64,
    pub audit_extended_violations: u64,
    pub audit_adjacent_pairs: u64,
}

impl RunStats {
    pub fn max_stage_size(&self) -> usize {
        self.stage_sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn final_sep(&self) -> usize {
        self.sep_trace.last().copied().unwrap_or(0)
    }
}

/// `(S_0, S_+, S_-)` as indices into the vertex set, with the inner
/// products of the straddling vertices.
#[derive(Clone, Debug, Default)]
pub struct Partition {
    pub zero: Vec<usize>,
    pub above: Vec<(usize, BigInt)>,
    pub below: Vec<(usize, BigInt)>,
}

pub struct Engine<'p, V: VertexRep> {
    problem: &'p EnumerationProblem,
    cfg: RunConfig,
    groups: GroupMasks,
    static_order: Option<Vec<usize>>,
    remaining: Vec<usize>,
    processed: Vec<usize>,
    vertices: Vec<V>,
    sep: usize,
    audit: bool,
    stats: RunStats,
    started: Instant,
}

impl<'p, V: VertexRep> Engine<'p, V> {
    pub fn new(problem: &'p EnumerationProblem, cfg: RunConfig) -> Self {
        let static_order = match cfg.ordering {
            OrderingStrategy::Dynamic => None,
            s => Some(order_static(problem, s).expect("static strategy")),
        };
        // Inner products are laid out in processing order when it is known.
        let remaining = static_order
            .clone()
            .unwrap_or_else(|| (0..problem.equations().len()).collect());
        let groups = if cfg.filtering {
            GroupMasks::new(problem.groups())
        } else {
            GroupMasks::default()
        };
        let vertices = V::init(&StageContext {
            problem,
            remaining: &remaining,
        });
        let mut engine = Engine {
            problem,
            cfg,
            groups,
            static_order,
            remaining,
            processed: Vec::new(),
            vertices,
            sep: 0,
            audit: false,
            stats: RunStats::default(),
            started: Instant::now(),
        };
        engine.record_stage();
        engine
    }

    /// Records, for every adjacent pair, whether the dimensional prefilters
    /// would have rejected it. Meant for use with `Prefilter::Off`.
    pub fn with_audit(mut self) -> Self {
        self.audit = true;
        self
    }

    pub fn problem(&self) -> &EnumerationProblem {
        self.problem
    }

    pub fn stage(&self) -> usize {
        self.processed.len()
    }

    pub fn sep(&self) -> usize {
        self.sep
    }

    pub fn processed(&self) -> &[usize] {
        &self.processed
    }

    pub fn remaining(&self) -> &[usize] {
        &self.remaining
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    pub fn is_finished(&self) -> bool {
        self.remaining.is_empty()
    }

    pub fn zero_sets(&self) -> Vec<ZeroSet> {
        self.vertices.iter().map(|v| v.zeros().clone()).collect()
    }

    fn context(&self) -> StageContext<'_> {
        StageContext {
            problem: self.problem,
            remaining: &self.remaining,
        }
    }

    fn position(&self, k: usize) -> Option<usize> {
        self.remaining.iter().position(|&r| r == k)
    }

    /// The hyperplane the configured ordering would process next.
    pub fn next_hyperplane(&self) -> Option<usize> {
        if self.remaining.is_empty() {
            return None;
        }
        match &self.static_order {
            Some(order) => Some(order[self.processed.len()]),
            None => {
                let ctx = self.context();
                let pos_of: Vec<(usize, usize)> = self.remaining.iter().copied().zip(0..).collect();
                let lookup = |k: usize| {
                    pos_of
                        .iter()
                        .find(|&&(r, _)| r == k)
                        .map(|&(_, p)| p)
                        .expect("unprocessed")
                };
                let mut candidates = self.remaining.clone();
                candidates.sort_unstable();
                Some(choose_dynamic(&candidates, &self.vertices, |k, v| {
                    v.product(&ctx, k, lookup(k)).cmp(&BigInt::zero())
                }))
            }
        }
    }

    pub fn partition(&self, k: usize) -> Result<Partition> {
        let pos = self
            .position(k)
            .ok_or_else(|| Error::Internal(format!("hyperplane {k} already processed")))?;
        let ctx = self.context();
        let mut part = Partition::default();
        for (i, v) in self.vertices.iter().enumerate() {
            let x = v.product(&ctx, k, pos);
            match x.sign() {
                num_bigint::Sign::NoSign => part.zero.push(i),
                num_bigint::Sign::Plus => part.above.push((i, x)),
                num_bigint::Sign::Minus => part.below.push((i, x)),
            }
        }
        Ok(part)
    }

    /// Processes the next hyperplane of the configured order.
    pub fn step_next(&mut self) -> Result<bool> {
        match self.next_hyperplane() {
            Some(k) => self.step(k).map(|_| true),
            None => Ok(false),
        }
    }

    pub fn step(&mut self, k: usize) -> Result<()> {
        let pos = self
            .position(k)
            .ok_or_else(|| Error::Internal(format!("hyperplane {k} already processed")))?;
        let part = self.partition(k)?;
        let dim = self.problem.dim();
        let processed_before = self.processed.len();
        let sep_before = self.sep;

        let table = match self.cfg.adjacency {
            Adjacency::Combinatorial => Some(ZeroTable::new(
                words_for(dim),
                self.vertices.iter().map(|v| v.zeros()),
            )),
            Adjacency::Algebraic => None,
        };
        let processed_rows: Vec<&IntVector> = self
            .processed
            .iter()
            .map(|&j| &self.problem.equations()[j])
            .collect();

        let ctx = self.context();
        let vertices = &self.vertices;
        let groups = &self.groups;
        let cfg = self.cfg;
        let audit = self.audit;

        let results: Vec<Result<PairOutcome<V>>> = part
            .above
            .par_iter()
            .map(|(ui, pu)| {
                let mut out = PairOutcome::default();
                let u = &vertices[*ui];
                for (wi, pw) in &part.below {
                    let w = &vertices[*wi];
                    if !groups.is_empty() && !compatible(u.zeros(), w.zeros(), groups) {
                        continue;
                    }
                    out.compatible += 1;
                    let common = u.zeros().intersect_unchecked(w.zeros());
                    let common_count = common.count();
                    if !dim_prefilter(
                        common_count,
                        dim,
                        processed_before,
                        sep_before,
                        cfg.prefilter,
                    ) {
                        continue;
                    }
                    out.prefiltered += 1;
                    let adjacent = match &table {
                        Some(t) => t.no_witness(common.words(), *ui, *wi),
                        None => adjacent_algebraic(&common, &processed_rows),
                    };
                    if !adjacent {
                        continue;
                    }
                    if audit {
                        out.audited += 1;
                        if !dim_prefilter(
                            common_count,
                            dim,
                            processed_before,
                            sep_before,
                            Prefilter::Basic,
                        ) {
                            out.basic_violations += 1;
                        }
                        if !dim_prefilter(
                            common_count,
                            dim,
                            processed_before,
                            sep_before,
                            Prefilter::Extended,
                        ) {
                            out.extended_violations += 1;
                        }
                    }
                    out.created.push(V::combine(u, w, pu, pw, &ctx, pos)?);
                }
                Ok(out)
            })
            .collect();

        let mut next: Vec<V> = Vec::with_capacity(part.zero.len());
        next.extend(part.zero.iter().map(|&i| self.vertices[i].carry(pos)));
        let (mut compatible_pairs, mut prefiltered, mut adjacent) = (0u64, 0u64, 0u64);
        for r in results {
            let out = r?;
            compatible_pairs += out.compatible;
            prefiltered += out.prefiltered;
            adjacent += out.created.len() as u64;
            self.stats.audit_adjacent_pairs += out.audited;
            self.stats.audit_basic_violations += out.basic_violations;
            self.stats.audit_extended_violations += out.extended_violations;
            next.extend(out.created);
        }

        if !part.above.is_empty() && !part.below.is_empty() {
            self.sep += 1;
        }
        self.stats
            .pairs
            .push((part.above.len() * part.below.len()) as u64);
        self.stats.compatible_pairs.push(compatible_pairs);
        self.stats.prefiltered_pairs.push(prefiltered);
        self.stats.adjacent_pairs.push(adjacent);

        self.vertices = next;
        self.remaining.remove(pos);
        self.processed.push(k);
        self.record_stage();
        Ok(())
    }

    fn record_stage(&mut self) {
        let mem: usize = self.vertices.iter().map(|v| v.memory_bytes()).sum();
        self.stats.stage_sizes.push(self.vertices.len());
        self.stats.stage_memory.push(mem);
        self.stats.sep_trace.push(self.sep);
        self.stats.peak_memory = self.stats.peak_memory.max(mem);
    }

    pub fn run_to_end(&mut self) -> Result<()> {
        while self.step_next()? {}
        Ok(())
    }

    /// Resolves the final vertex set into sorted, deduplicated rays.
    pub fn finish(mut self) -> Result<(Vec<Ray>, RunStats)> {
        if !self.is_finished() {
            return Err(Error::Internal(
                "finish called before every hyperplane was processed".into(),
            ));
        }
        let problem = self.problem;
        let mut rays = std::mem::take(&mut self.vertices)
            .into_par_iter()
            .map(|v| v.into_ray(problem))
            .collect::<Result<Vec<Ray>>>()?;
        if rays
            .iter()
            .any(|r| r.coords.iter().any(|x| x.is_negative()))
        {
            return Err(Error::Internal("negative coordinate in final ray".into()));
        }
        rays.sort_by(|a, b| a.coords.cmp(&b.coords));
        rays.dedup_by(|a, b| a.coords == b.coords);
        self.stats.order = self.processed.clone();
        self.stats.final_count = rays.len();
        self.stats.elapsed = self.started.elapsed();
        Ok((rays, self.stats))
    }
}

struct PairOutcome<V> {
    created: Vec<V>,
    compatible: u64,
    prefiltered: u64,
    audited: u64,
    basic_violations: u64,
    extended_violations: u64,
}

impl<V> Default for PairOutcome<V> {
    fn default() -> Self {
        PairOutcome {
            created: Vec::new(),
            compatible: 0,
            prefiltered: 0,
            audited: 0,
            basic_violations: 0,
            extended_violations: 0,
        }
    }
}

fn run_with<V: VertexRep>(
    problem: &EnumerationProblem,
    cfg: RunConfig,
    audit: bool,
) -> Result<(Vec<Ray>, RunStats)> {
    let mut engine = Engine::<V>::new(problem, cfg);
    if audit {
        engine = engine.with_audit();
    }
    engine.run_to_end()?;
    engine.finish()
}

/// Enumerates the extreme rays of the problem's cone (only those satisfying
/// the group constraints when filtering is on).
pub fn run(problem: &EnumerationProblem, cfg: RunConfig) -> Result<(Vec<Ray>, RunStats)> {
    match cfg.representation {
        Representation::Full => run_with::<FullRay>(problem, cfg, false),
        Representation::Inner => run_with::<InnerRay>(problem, cfg, false),
    }
}

/// Runs with the prefilter disabled and counts adjacent pairs that the
/// Basic or Extended prefilter would have discarded.
pub fn audit_prefilter(problem: &EnumerationProblem, mut cfg: RunConfig) -> Result<RunStats> {
    cfg.prefilter = Prefilter::Off;
    cfg.adjacency = Adjacency::Combinatorial;
    let (_, stats) = match cfg.representation {
        Representation::Full => run_with::<FullRay>(problem, cfg, true)?,
        Representation::Inner => run_with::<InnerRay>(problem, cfg, true)?,
    };
    Ok(stats)
}

/// Orders rays lexicographically by coordinates.
pub fn ray_order(a: &Ray, b: &Ray) -> Ordering {
    a.coords.cmp(&b.coords)
}
