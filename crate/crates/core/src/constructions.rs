//! Named example graphs, the triangle-sparse `g(k, l)` family, and seeded
//! random regular generators used as property-test inputs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Attempts allowed before the pairing generators give up.
pub const DEFAULT_PAIRING_ATTEMPTS: u64 = 1_000_000;

pub const NAMED_GRAPHS: [&str; 3] = ["petersen", "paper-h", "paper-bipartite"];

/// Outer 5-cycle on 0..5, spokes `i ~ i+5`, inner pentagram on 5..10.
pub fn petersen() -> Graph {
    let edges = (0..5).flat_map(|i| {
        [
            (i, (i + 1) % 5),
            (i, i + 5),
            (i + 5, (i + 2) % 5 + 5),
        ]
    });
    Graph::new(10, edges).expect("static edge list")
}

/// Two-digit tokens such as `"47"` denote the edge `{4, 7}`.
fn from_digit_pairs(tokens: &str) -> Graph {
    let edges = tokens.split_whitespace().map(|tok| {
        let b = tok.as_bytes();
        ((b[0] - b'0') as usize, (b[1] - b'0') as usize)
    });
    Graph::new(10, edges).expect("static edge list")
}

/// 3-regular graph on 0..10 with three triangles.
pub fn paper_h() -> Graph {
    from_digit_pairs("12 13 23 14 26 35 45 56 47 68 79 70 89 80 90")
}

/// 3-regular bipartite graph with parts {1..5} and {6, 7, 8, 9, 0}.
pub fn paper_bipartite() -> Graph {
    from_digit_pairs("17 18 19 28 29 20 36 39 30 40 46 47 56 57 58")
}

pub fn named_graph(name: &str) -> Result<Graph> {
    match name {
        "petersen" => Ok(petersen()),
        "paper-h" => Ok(paper_h()),
        "paper-bipartite" => Ok(paper_bipartite()),
        other => Err(Error::UnknownGraph(other.to_string())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GFamilyParams {
    pub k: usize,
    pub l: usize,
}

impl GFamilyParams {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        if k <= l {
            return Err(Error::InvalidParameter(format!("g(k, l) needs k > l, got k = {k}, l = {l}")));
        }
        Ok(Self { k, l })
    }

    pub fn order(&self) -> usize {
        4 * self.k + 2 * self.l + 1
    }

    pub fn degree(&self) -> usize {
        2 * self.k
    }

    pub fn expected_triangles(&self) -> usize {
        self.k * (self.k - self.l - 1)
    }
}

/// Canonical member of `g(k, l)`.
///
/// Starts from `K_{2k+l,2k+l}` on `x_1..x_{2k+l}` (labels `0..2k+l`) and
/// `y_1..y_{2k+l}` (labels `2k+l..4k+2l`). The removed `(l+1)`-factor on the
/// first `k` vertices of each side is `x_i ~ y_{(i+j) mod k}` for `j = 0..=l`;
/// the removed `l`-factor on the remaining `k+l` vertices of each side uses
/// shifts `j = 0..l`. Vertex `4k+2l` (`z`) is joined to `x_1..x_k, y_1..y_k`.
pub fn g_family(params: GFamilyParams) -> Result<Graph> {
    let GFamilyParams { k, l } = GFamilyParams::new(params.k, params.l)?;
    let side = 2 * k + l;
    let x = |i: usize| i;
    let y = |i: usize| side + i;
    let z = 2 * side;

    let mut removed = BTreeSet::new();
    for i in 0..k {
        for j in 0..=l {
            removed.insert((x(i), y((i + j) % k)));
        }
    }
    let rest = k + l;
    for i in 0..rest {
        for j in 0..l {
            removed.insert((x(k + i), y(k + (i + j) % rest)));
        }
    }

    let bipartite = (0..side)
        .flat_map(|i| (0..side).map(move |j| (x(i), y(j))))
        .filter(|e| !removed.contains(e));
    let hub = (0..k).flat_map(|i| [(x(i), z), (y(i), z)]);
    Graph::new(z + 1, bipartite.chain(hub))
}

/// Seeded `d`-regular simple graph on `n` vertices from the pairing model
/// with rejection of loops and repeated pairs.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    random_regular_with_budget(n, d, seed, DEFAULT_PAIRING_ATTEMPTS)
}

pub fn random_regular_with_budget(n: usize, d: usize, seed: u64, attempts: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if d >= n {
        return Err(Error::InvalidParameter(format!("degree {d} must be below n = {n}")));
    }
    if n * d % 2 == 1 {
        return Err(Error::InvalidParameter(format!("n * d = {} is odd", n * d)));
    }
    // Dense targets are sampled through their complements, which the pairing
    // model reaches far more often.
    if 2 * d > n - 1 {
        return random_regular_with_budget(n, n - 1 - d, seed, attempts)?.complement();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..attempts {
        points.shuffle(&mut rng);
        let mut edges = BTreeSet::new();
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !edges.insert((u, v)) {
                continue 'attempt;
            }
        }
        return Graph::new(n, edges);
    }
    Err(Error::RetryBudgetExhausted { attempts })
}

/// Seeded `d`-regular bipartite graph with sides `0..half` and `half..2*half`.
pub fn random_regular_bipartite(half: usize, d: usize, seed: u64) -> Result<Graph> {
    if half == 0 {
        return Err(Error::InvalidParameter("each side needs at least one vertex".into()));
    }
    if d > half {
        return Err(Error::InvalidParameter(format!("degree {d} exceeds side size {half}")));
    }
    if 2 * d > half {
        let sparse = random_regular_bipartite(half, half - d, seed)?;
        let edges = (0..half)
            .flat_map(|u| (half..2 * half).map(move |v| (u, v)))
            .filter(|&(u, v)| !sparse.has_edge(u, v));
        return Graph::new(2 * half, edges);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let left: Vec<usize> = (0..half).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut right: Vec<usize> = (half..2 * half)
        .flat_map(|v| std::iter::repeat_n(v, d))
        .collect();
    'attempt: for _ in 0..DEFAULT_PAIRING_ATTEMPTS {
        right.shuffle(&mut rng);
        let mut edges = BTreeSet::new();
        for (&u, &v) in left.iter().zip(&right) {
            if !edges.insert((u, v)) {
                continue 'attempt;
            }
        }
        return Graph::new(2 * half, edges);
    }
    Err(Error::RetryBudgetExhausted {
        attempts: DEFAULT_PAIRING_ATTEMPTS,
    })
}
