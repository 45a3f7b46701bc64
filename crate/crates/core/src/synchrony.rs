//! Threshold spreading: starting from a seed set, every inactive vertex with
//! at least `t` active in-neighbors joins at the next step. All acquisitions
//! of a step read the same incoming active set.
//!
//! `i*` is the first step at which every vertex is active (`None` when the
//! process stalls). `p_k` is the fraction of `k`-subsets that reach synchrony
//! and `e_k` the mean of `1 / i*` over them, with stalled seeds contributing
//! zero and the full vertex set (`i* = 0`) contributing one.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num::{BigInt, BigRational, BigUint, One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 2_000_000;

/// Active vertices after `step` transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadState {
    active: Vec<bool>,
    count: usize,
    step: usize,
}

impl SpreadState {
    pub fn new(g: &Graph, seed: impl IntoIterator<Item = usize>) -> Self {
        let mut active = vec![false; g.order()];
        for v in seed {
            active[v] = true;
        }
        let count = active.iter().filter(|&&a| a).count();
        SpreadState {
            active,
            count,
            step: 0,
        }
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active[v]
    }

    pub fn active_count(&self) -> usize {
        self.count
    }

    pub fn active_set(&self) -> BTreeSet<usize> {
        (0..self.active.len()).filter(|&v| self.active[v]).collect()
    }

    pub fn is_synchronized(&self) -> bool {
        self.count == self.active.len()
    }

    /// One synchronous transition; returns how many vertices were acquired.
    pub fn advance(&mut self, g: &Graph, t: usize) -> usize {
        let acquired: Vec<usize> = (0..g.order())
            .filter(|&v| {
                !self.active[v]
                    && g.in_neighbors(v).iter().filter(|&&u| self.active[u]).count() >= t
            })
            .collect();
        for &v in &acquired {
            self.active[v] = true;
        }
        self.count += acquired.len();
        self.step += 1;
        acquired.len()
    }

    /// Advances until synchrony or a proper fixed point; returns `i*`.
    pub fn run(&mut self, g: &Graph, t: usize) -> Option<usize> {
        loop {
            if self.is_synchronized() {
                return Some(self.step);
            }
            if self.advance(g, t) == 0 {
                self.step -= 1;
                return None;
            }
        }
    }
}

pub fn spread_step(g: &Graph, active: &BTreeSet<usize>, t: usize) -> BTreeSet<usize> {
    let mut state = SpreadState::new(g, active.iter().copied());
    state.advance(g, t);
    state.active_set()
}

pub fn synchrony_index(g: &Graph, seed: &BTreeSet<usize>, t: usize) -> Option<usize> {
    SpreadState::new(g, seed.iter().copied()).run(g, t)
}

/// Final active set reached from `seed`, together with `i*`.
pub fn fixed_point(g: &Graph, seed: &BTreeSet<usize>, t: usize) -> (BTreeSet<usize>, Option<usize>) {
    let mut state = SpreadState::new(g, seed.iter().copied());
    let i_star = state.run(g, t);
    (state.active_set(), i_star)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureConfig {
    pub exhaustive_budget: u64,
    /// Worker threads; results do not depend on this value.
    pub threads: usize,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        MeasureConfig {
            exhaustive_budget: DEFAULT_EXHAUSTIVE_BUDGET,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Estimate {
    Exact(BigRational),
    Sampled { mean: f64, std_error: f64 },
}

impl Estimate {
    pub fn value(&self) -> f64 {
        match self {
            Estimate::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Estimate::Sampled { mean, .. } => *mean,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Estimate::Exact(r) => Some(r),
            Estimate::Sampled { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeKind {
    Exhaustive,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynchronyOutcome {
    pub k: usize,
    pub t: usize,
    pub mode: ModeKind,
    pub samples: u64,
    pub p_k: Estimate,
    pub e_k: Estimate,
    /// Counts of seed sets by finite `i*`.
    pub i_star_histogram: BTreeMap<usize, u64>,
    /// Seed sets that never synchronize.
    pub never: u64,
}

#[derive(Default, Clone)]
struct Tally {
    finite: BTreeMap<usize, u64>,
    never: u64,
}

impl Tally {
    fn record(mut self, i_star: Option<usize>) -> Self {
        match i_star {
            Some(i) => *self.finite.entry(i).or_insert(0) += 1,
            None => self.never += 1,
        }
        self
    }

    fn merge(mut self, other: Tally) -> Self {
        for (i, c) in other.finite {
            *self.finite.entry(i).or_insert(0) += c;
        }
        self.never += other.never;
        self
    }

    fn total(&self) -> u64 {
        self.never + self.finite.values().sum::<u64>()
    }

    fn synchronized(&self) -> u64 {
        self.finite.values().sum()
    }
}

/// Contribution of one seed set to `sum 1 / i*`.
fn reciprocal(i_star: usize) -> BigRational {
    if i_star == 0 {
        BigRational::one()
    } else {
        BigRational::new(BigInt::one(), BigInt::from(i_star))
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn in_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> T {
    if threads <= 1 {
        return job();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(job)
}

fn sample_subset(n: usize, k: usize, seed: u64, index: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut vertices: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        vertices.swap(i, j);
    }
    vertices.truncate(k);
    vertices
}

/// Shared driver behind [`measure_p_k`] and [`measure_e_k`]: evaluates `i*`
/// for every (or every sampled) `k`-subset and aggregates both measures.
pub fn measure_synchrony(
    g: &Graph,
    t: usize,
    k: usize,
    mode: Mode,
    config: &MeasureConfig,
) -> Result<SynchronyOutcome> {
    let n = g.order();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("seed size k = {k} must lie in 1..={n}")));
    }
    if t == 0 {
        return Err(Error::InvalidParameter("threshold t must be at least 1".into()));
    }
    let index_of = |seed: &[usize]| SpreadState::new(g, seed.iter().copied()).run(g, t);

    match mode {
        Mode::Exhaustive => {
            let subsets = binomial(n, k);
            if subsets > BigUint::from(config.exhaustive_budget) {
                return Err(Error::ExhaustiveBudget {
                    subsets: subsets.to_string(),
                    budget: config.exhaustive_budget,
                });
            }
            let tally = in_pool(config.threads, || {
                if config.threads <= 1 {
                    (0..n)
                        .combinations(k)
                        .fold(Tally::default(), |acc, s| acc.record(index_of(&s)))
                } else {
                    (0..n)
                        .combinations(k)
                        .par_bridge()
                        .fold(Tally::default, |acc, s| acc.record(index_of(&s)))
                        .reduce(Tally::default, Tally::merge)
                }
            });
            let total = BigRational::from_integer(BigInt::from(subsets));
            let synced = BigRational::from_integer(BigInt::from(tally.synchronized()));
            let speed: BigRational = tally
                .finite
                .iter()
                .map(|(&i, &c)| reciprocal(i) * BigRational::from_integer(BigInt::from(c)))
                .fold(BigRational::zero(), |a, b| a + b);
            Ok(SynchronyOutcome {
                k,
                t,
                mode: ModeKind::Exhaustive,
                samples: tally.total(),
                p_k: Estimate::Exact(synced / &total),
                e_k: Estimate::Exact(speed / &total),
                i_star_histogram: tally.finite,
                never: tally.never,
            })
        }
        Mode::MonteCarlo { samples, seed } => {
            if samples == 0 {
                return Err(Error::InvalidParameter("monte-carlo mode needs samples >= 1".into()));
            }
            let tally = in_pool(config.threads, || {
                (0..samples)
                    .into_par_iter()
                    .fold(Tally::default, |acc, idx| {
                        acc.record(index_of(&sample_subset(n, k, seed, idx)))
                    })
                    .reduce(Tally::default, Tally::merge)
            });
            let count = samples as f64;
            let p = tally.synchronized() as f64 / count;
            let p_se = (p * (1.0 - p) / count).sqrt();

            let value = |i: usize| if i == 0 { 1.0 } else { 1.0 / i as f64 };
            let e = tally.finite.iter().map(|(&i, &c)| c as f64 * value(i)).sum::<f64>() / count;
            let e_se = if samples > 1 {
                let sq: f64 = tally
                    .finite
                    .iter()
                    .map(|(&i, &c)| c as f64 * (value(i) - e).powi(2))
                    .sum::<f64>()
                    + tally.never as f64 * e * e;
                (sq / (count - 1.0) / count).sqrt()
            } else {
                0.0
            };
            Ok(SynchronyOutcome {
                k,
                t,
                mode: ModeKind::MonteCarlo,
                samples,
                p_k: Estimate::Sampled {
                    mean: p,
                    std_error: p_se,
                },
                e_k: Estimate::Sampled {
                    mean: e,
                    std_error: e_se,
                },
                i_star_histogram: tally.finite,
                never: tally.never,
            })
        }
    }
}

pub fn measure_p_k(
    g: &Graph,
    t: usize,
    k: usize,
    mode: Mode,
    config: &MeasureConfig,
) -> Result<SynchronyOutcome> {
    measure_synchrony(g, t, k, mode, config)
}

pub fn measure_e_k(
    g: &Graph,
    t: usize,
    k: usize,
    mode: Mode,
    config: &MeasureConfig,
) -> Result<SynchronyOutcome> {
    measure_synchrony(g, t, k, mode, config)
}
