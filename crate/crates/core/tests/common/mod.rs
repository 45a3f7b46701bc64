//! Brute-force oracles and seeded generators shared by the integration tests.
#![allow(dead_code)]

use closedwalk::Graph;
use num::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Closed walks of length `k`, counted by explicit depth-first enumeration.
pub fn brute_closed_walks(g: &Graph, k: usize) -> u64 {
    fn extend(g: &Graph, start: usize, at: usize, left: usize) -> u64 {
        if left == 0 {
            return u64::from(at == start);
        }
        g.neighbors(at)
            .iter()
            .map(|&next| extend(g, start, next, left - 1))
            .sum()
    }
    (0..g.order()).map(|v| extend(g, v, v, k)).sum()
}

/// Spanning trees by deletion-contraction on a loopless multigraph stored as
/// a symmetric multiplicity matrix.
pub fn deletion_contraction(g: &Graph) -> BigUint {
    let n = g.order();
    let mut mult = vec![vec![0u64; n]; n];
    for (u, v) in g.edges() {
        mult[u][v] += 1;
        mult[v][u] += 1;
    }
    let alive = vec![true; n];
    BigUint::from(dc(&mut mult, alive))
}

fn dc(mult: &mut [Vec<u64>], alive: Vec<bool>) -> u64 {
    let verts: Vec<usize> = (0..alive.len()).filter(|&v| alive[v]).collect();
    if verts.len() <= 1 {
        return 1;
    }
    if !multigraph_connected(mult, &verts) {
        return 0;
    }
    // Any parallel class: pick the first one present.
    let (u, v) = verts
        .iter()
        .flat_map(|&u| verts.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| u < v && mult[u][v] > 0)
        .expect("connected graph with two vertices has an edge");
    let c = mult[u][v];

    // G minus every u-v edge.
    mult[u][v] = 0;
    mult[v][u] = 0;
    let without = dc(mult, alive.clone());

    // G with u-v contracted: merge v into u, dropping the loops.
    let mut merged: Vec<Vec<u64>> = mult.to_vec();
    for &w in &verts {
        if w != u && w != v {
            merged[u][w] += merged[v][w];
            merged[w][u] = merged[u][w];
        }
        merged[v][w] = 0;
        merged[w][v] = 0;
    }
    let mut alive_c = alive;
    alive_c[v] = false;
    let contracted = dc(&mut merged, alive_c);

    mult[u][v] = c;
    mult[v][u] = c;
    without + c * contracted
}

fn multigraph_connected(mult: &[Vec<u64>], verts: &[usize]) -> bool {
    let mut seen = vec![false; mult.len()];
    let mut stack = vec![verts[0]];
    seen[verts[0]] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in verts {
            if !seen[w] && mult[u][w] > 0 {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == verts.len()
}

/// Triangles counted over all vertex triples.
pub fn brute_triangles(g: &Graph) -> u64 {
    let n = g.order();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Seeded Erdős–Rényi graph on `n` vertices with edge probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are in range")
}

/// Graph on `n` vertices whose edges are the set bits of `mask` over the
/// pairs `(u, v)`, `u < v`, in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges = pairs
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e);
    Graph::new(n, edges).expect("pairs are in range")
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
