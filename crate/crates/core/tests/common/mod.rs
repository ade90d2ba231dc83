//! Independent reference implementations used by the integration tests and
//! the acceptance runner. None of these call into the compressors.
#![allow(dead_code)]

use std::collections::VecDeque;

use cpgc_core::{BipartiteGraph, CompressedGraph};

/// Number of pairs `(u, tuple)` with `u ∈ candidates` and `tuple` an ordered
/// sequence of `len` distinct neighbours of `u` outside `excluded`, whose
/// first element lies in `block`.
pub fn ordered_tuple_count(
    g: &BipartiteGraph,
    candidates: &[usize],
    excluded: &[usize],
    block: std::ops::Range<usize>,
    len: usize,
) -> u128 {
    fn extend(avail: &[usize], used: &mut Vec<usize>, left: usize) -> u128 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for &w in avail {
            if !used.contains(&w) {
                used.push(w);
                total += extend(avail, used, left - 1);
                used.pop();
            }
        }
        total
    }
    let mut total = 0u128;
    for &u in candidates {
        let avail: Vec<usize> = (0..g.n_w())
            .filter(|w| g.contains(u, *w) && !excluded.contains(w))
            .collect();
        for &first in avail.iter().filter(|w| block.contains(w)) {
            let mut used = vec![first];
            total += extend(&avail, &mut used, len - 1);
        }
    }
    total
}

/// Maximum matching size by simple augmenting paths (Kuhn).
pub fn kuhn_matching(g: &BipartiteGraph) -> usize {
    let adj: Vec<Vec<usize>> = (0..g.n_u())
        .map(|u| (0..g.n_w()).filter(|&w| g.contains(u, w)).collect())
        .collect();
    let mut owner = vec![usize::MAX; g.n_w()];
    fn augment(u: usize, adj: &[Vec<usize>], owner: &mut [usize], seen: &mut [bool]) -> bool {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                if owner[w] == usize::MAX || augment(owner[w], adj, owner, seen) {
                    owner[w] = u;
                    return true;
                }
            }
        }
        false
    }
    let mut size = 0;
    for u in 0..g.n_u() {
        let mut seen = vec![false; g.n_w()];
        if augment(u, &adj, &mut owner, &mut seen) {
            size += 1;
        }
    }
    size
}

/// Edges of `G*` followed as an undirected tripartite graph: `(u, w)` is
/// connected iff a direct edge exists or some `z` touches both.
pub fn connected_pairs(c: &CompressedGraph) -> Vec<Vec<bool>> {
    let mut out = vec![vec![false; c.n_w()]; c.n_u()];
    for (u, w) in c.residual().edges() {
        out[u][w] = true;
    }
    for clique in c.cliques() {
        for &u in &clique.left_u {
            for &w in &clique.right_k {
                out[u][w] = true;
            }
        }
    }
    out
}

/// Checks path preservation both ways and exact edge partition without the
/// library's own verifier.
pub fn check_compression(g: &BipartiteGraph, c: &CompressedGraph) -> Result<(), String> {
    let mut cover = vec![vec![0u32; g.n_w()]; g.n_u()];
    for (u, w) in c.residual().edges() {
        cover[u][w] += 1;
    }
    let mut star_edges = 0;
    for clique in c.cliques() {
        star_edges += clique.left_u.len() + clique.right_k.len();
        for &u in &clique.left_u {
            for &w in &clique.right_k {
                cover[u][w] += 1;
            }
        }
    }
    let reach = connected_pairs(c);
    for u in 0..g.n_u() {
        for w in 0..g.n_w() {
            if reach[u][w] != g.contains(u, w) {
                return Err(format!("path mismatch at (u{u}, w{w})"));
            }
            if cover[u][w] != u32::from(g.contains(u, w)) {
                return Err(format!("(u{u}, w{w}) covered {} times", cover[u][w]));
            }
        }
    }
    let recomputed = c.residual().edges().len() + star_edges;
    if recomputed != c.m_star() {
        return Err(format!("m* stored {} recomputed {recomputed}", c.m_star()));
    }
    Ok(())
}

/// All-pairs reachability of a general graph by BFS over an adjacency list.
pub fn bfs_reachability(n: usize, edges: &[(usize, usize)], undirected: bool) -> Vec<Vec<bool>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        if undirected {
            adj[b].push(a);
        }
    }
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &x in &adj[v] {
                    if !seen[x] {
                        seen[x] = true;
                        q.push_back(x);
                    }
                }
            }
            seen
        })
        .collect()
}

/// All-pairs reachability in the compressed double cover as one explicit
/// directed graph: nodes `L = 0..n`, `R = n..2n`, `Z = 2n..`.
pub fn compressed_cover_reachability(c: &CompressedGraph) -> Vec<Vec<bool>> {
    let n = c.n_u();
    let total = 2 * n + c.n_z();
    let mut arcs = Vec::new();
    for (u, w) in c.residual().edges() {
        arcs.push((u, n + w));
    }
    for (q, clique) in c.cliques().iter().enumerate() {
        for &u in &clique.left_u {
            arcs.push((u, 2 * n + q));
        }
        for &w in &clique.right_k {
            arcs.push((2 * n + q, n + w));
        }
    }
    for v in 0..n {
        arcs.push((n + v, v));
    }
    let full = bfs_reachability(total, &arcs, false);
    full.into_iter()
        .take(n)
        .map(|row| row[..n].to_vec())
        .collect()
}
