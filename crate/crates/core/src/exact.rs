//! Exact integer oracles: spanning-tree counts, closed-walk counts, triangle
//! counts and Laplacian power traces. No floating point is used here.

use num::{BigInt, BigUint, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

type Matrix = Vec<Vec<BigInt>>;

/// Closed-walk counts `w_1..=w_max_k`, i.e. traces of adjacency powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTable {
    counts: Vec<BigUint>,
}

impl WalkTable {
    pub fn max_k(&self) -> usize {
        self.counts.len()
    }

    /// `w_k` for `1 <= k <= max_k`; `w_0 = n` is not stored.
    pub fn get(&self, k: usize) -> &BigUint {
        assert!(k >= 1 && k <= self.counts.len(), "walk length {k} out of range");
        &self.counts[k - 1]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }
}

/// `tr(L^1)..=tr(L^max_r)` for a regular graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplacianTraceTable {
    degree: usize,
    traces: Vec<BigUint>,
}

impl LaplacianTraceTable {
    pub fn max_r(&self) -> usize {
        self.traces.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `tr(L^r)` for `1 <= r <= max_r`.
    pub fn get(&self, r: usize) -> &BigUint {
        assert!(r >= 1 && r <= self.traces.len(), "trace power {r} out of range");
        &self.traces[r - 1]
    }

    pub fn traces(&self) -> &[BigUint] {
        &self.traces
    }
}

fn laplacian(g: &Graph) -> Matrix {
    let n = g.order();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (v, row) in m.iter_mut().enumerate() {
        row[v] = BigInt::from(g.degree(v));
        for &u in g.neighbors(v) {
            row[u] = BigInt::from(-1);
        }
    }
    m
}

/// Fraction-free Gaussian elimination. Every intermediate entry is a minor of
/// the input, so each division is exact.
pub fn bareiss_determinant(mut m: Matrix) -> BigInt {
    let size = m.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let value = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = value;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[size - 1][size - 1]
}

/// Number of labeled spanning trees, as the determinant of the Laplacian with
/// its last row and column removed.
pub fn spanning_tree_count(g: &Graph) -> Result<BigUint> {
    g.require_undirected("spanning_tree_count")?;
    let n = g.order();
    let mut lap = laplacian(g);
    lap.truncate(n - 1);
    for row in lap.iter_mut() {
        row.truncate(n - 1);
    }
    let det = bareiss_determinant(lap);
    debug_assert!(!det.is_negative());
    Ok(det.to_biguint().expect("reduced Laplacian is positive semidefinite"))
}

/// `tr(A^k)` for `k = 1..=max_k`.
pub fn closed_walk_counts(g: &Graph, max_k: usize) -> Result<WalkTable> {
    if max_k == 0 {
        return Err(Error::InvalidParameter("max_k must be at least 1".into()));
    }
    Ok(WalkTable {
        counts: ClosedWalks::new(g)?.take(max_k).collect(),
    })
}

/// Unbounded iterator over `w_1, w_2, ...`. Each power of `A` is formed from
/// the previous one by summing columns over adjacency lists, so memory stays
/// at one `n x n` big-integer matrix.
pub struct ClosedWalks<'g> {
    graph: &'g Graph,
    power: Vec<Vec<BigUint>>,
    started: bool,
}

impl<'g> ClosedWalks<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        graph.require_undirected("closed_walk_counts")?;
        let n = graph.order();
        let power = (0..n)
            .map(|i| (0..n).map(|j| BigUint::from(u8::from(graph.has_edge(i, j)))).collect())
            .collect();
        Ok(ClosedWalks {
            graph,
            power,
            started: false,
        })
    }
}

impl Iterator for ClosedWalks<'_> {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        let n = self.graph.order();
        if self.started {
            let g = self.graph;
            self.power = self
                .power
                .iter()
                .map(|row| {
                    (0..n)
                        .map(|j| g.neighbors(j).iter().map(|&l| &row[l]).sum())
                        .collect()
                })
                .collect();
        }
        self.started = true;
        Some((0..n).map(|i| &self.power[i][i]).sum())
    }
}

pub fn triangle_count(g: &Graph) -> Result<BigUint> {
    let w = closed_walk_counts(g, 3)?;
    Ok(w.get(3) / 6u32)
}

/// `tr(L^r)` from the walk table through
/// `tr(L^r) = sum_i (-1)^i C(r,i) d^(r-i) tr(A^i)`, cross-checked against
/// direct exact powers of `L`.
pub fn laplacian_traces(g: &Graph, max_r: usize) -> Result<LaplacianTraceTable> {
    let via_walks = laplacian_traces_binomial(g, max_r)?;
    let direct = laplacian_traces_direct(g, max_r)?;
    assert_eq!(
        via_walks, direct,
        "binomial and direct Laplacian traces disagree"
    );
    Ok(via_walks)
}

pub fn laplacian_traces_binomial(g: &Graph, max_r: usize) -> Result<LaplacianTraceTable> {
    g.require_undirected("laplacian_traces")?;
    let d = g.regular_degree().degree.ok_or(Error::RegularityRequired)?;
    if max_r == 0 {
        return Err(Error::InvalidParameter("max_r must be at least 1".into()));
    }
    let walks = closed_walk_counts(g, max_r)?;
    let n = BigInt::from(g.order());
    let d_big = BigInt::from(d);
    let mut traces = Vec::with_capacity(max_r);
    for r in 1..=max_r {
        let mut total = BigInt::zero();
        let mut binom = BigInt::one();
        for i in 0..=r {
            let tr_a = if i == 0 {
                n.clone()
            } else {
                BigInt::from(walks.get(i).clone())
            };
            let term = &binom * num::pow(d_big.clone(), r - i) * tr_a;
            if i % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
            binom = binom * (r - i) / (i + 1);
        }
        traces.push(total.to_biguint().expect("traces of L^r are nonnegative"));
    }
    Ok(LaplacianTraceTable { degree: d, traces })
}

pub fn laplacian_traces_direct(g: &Graph, max_r: usize) -> Result<LaplacianTraceTable> {
    g.require_undirected("laplacian_traces")?;
    let d = g.regular_degree().degree.ok_or(Error::RegularityRequired)?;
    if max_r == 0 {
        return Err(Error::InvalidParameter("max_r must be at least 1".into()));
    }
    let lap = laplacian(g);
    let n = lap.len();
    let mut power = lap.clone();
    let mut traces = Vec::with_capacity(max_r);
    for r in 1..=max_r {
        if r > 1 {
            power = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|l| &power[i][l] * &lap[l][j]).sum())
                        .collect()
                })
                .collect();
        }
        let tr: BigInt = (0..n).map(|i| &power[i][i]).sum();
        traces.push(tr.to_biguint().expect("traces of L^r are nonnegative"));
    }
    Ok(LaplacianTraceTable { degree: d, traces })
}

/// Converts an exact count to `f64`; saturates to infinity on overflow.
pub(crate) fn to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
