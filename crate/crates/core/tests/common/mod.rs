#![allow(dead_code)]

use nilgraph::exact::{rat, Rational};
use nilgraph::graph::DirectedGraph;
use nilgraph::sampling;
use rand::Rng;

/// Pairs `(i, j)`, `i < j`, of `n` vertices in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn connected(n: usize, mask: u32, ps: &[(usize, usize)]) -> bool {
    let mut seen = 1u32;
    let mut frontier = vec![0usize];
    while let Some(v) = frontier.pop() {
        for (k, &(a, b)) in ps.iter().enumerate() {
            if mask >> k & 1 == 0 {
                continue;
            }
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if seen >> w & 1 == 0 {
                seen |= 1 << w;
                frontier.push(w);
            }
        }
    }
    seen == (1u32 << n) - 1
}

/// One representative of every isomorphism class of connected graphs on
/// `n` vertices with at least one edge, edges directed low to high.
pub fn connected_graphs(n: usize) -> Vec<DirectedGraph> {
    let ps = pairs(n);
    let index = |a: usize, b: usize| ps.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << ps.len()) {
        if !connected(n, mask, &ps) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                ps.iter().enumerate().fold(0u32, |acc, (k, &(a, b))| {
                    if mask >> k & 1 == 1 {
                        acc | 1 << index(p[a], p[b])
                    } else {
                        acc
                    }
                })
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges: Vec<(usize, usize)> = ps
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            out.push(DirectedGraph::new(n, &edges).unwrap());
        }
    }
    out
}

/// `g` with `extra` isolated vertices appended.
pub fn with_isolated(g: &DirectedGraph, extra: usize) -> DirectedGraph {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.tail, e.head)).collect();
    DirectedGraph::new(g.vertex_count() + extra, &edges).unwrap()
}

/// Random graph with at least one edge on 2..=max_n vertices and random
/// edge directions.
pub fn random_graph(seed: u64, index: u64, max_n: usize) -> DirectedGraph {
    let mut rng = sampling::rng(seed, index);
    loop {
        let n = rng.random_range(2..=max_n);
        let p: f64 = rng.random_range(0.15..0.7);
        let edges: Vec<(usize, usize)> = pairs(n)
            .into_iter()
            .filter_map(|(a, b)| {
                let keep = rng.random_bool(p);
                let flip = rng.random_bool(0.5);
                keep.then_some(if flip { (b, a) } else { (a, b) })
            })
            .collect();
        if !edges.is_empty() {
            return DirectedGraph::new(n, &edges).unwrap();
        }
    }
}

/// Small random rational `p/q`.
pub fn small_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    rat(rng.random_range(-max_num..=max_num), rng.random_range(1..=max_den))
}

pub fn nonzero_small_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    loop {
        let r = small_rational(rng, max_num, max_den);
        if r != rat(0, 1) {
            return r;
        }
    }
}
