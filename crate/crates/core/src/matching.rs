//! Maximum-cardinality bipartite matching as unit-capacity max-flow, solved
//! with Dinitz's algorithm on either the original graph or its compressed
//! tripartite form.
//!
//! Node layout: source `0`, then `U`, then `Z` (compressed input only),
//! then `W`, then the sink. Arcs out of every node are added in ascending
//! target order so results are reproducible.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{iter_ones, BipartiteGraph, CompressedGraph};

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u32,
    /// Index of the paired reverse arc in `arcs`.
    rev: usize,
}

/// Residual network with unit capacities on every forward arc.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adjacency: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); node_count],
            arcs: Vec::new(),
            source,
            sink,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of forward arcs.
    pub fn arc_count(&self) -> usize {
        self.arcs.len() / 2
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to,
            cap,
            rev: id + 1,
        });
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            rev: id,
        });
        self.adjacency[from].push(id);
        self.adjacency[to].push(id + 1);
    }

    fn levels(&self) -> Option<Vec<u32>> {
        let mut level = vec![u32::MAX; self.node_count()];
        let mut queue = VecDeque::new();
        level[self.source] = 0;
        queue.push_back(self.source);
        while let Some(v) = queue.pop_front() {
            for &id in &self.adjacency[v] {
                let arc = &self.arcs[id];
                if arc.cap > 0 && level[arc.to] == u32::MAX {
                    level[arc.to] = level[v] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        (level[self.sink] != u32::MAX).then_some(level)
    }

    /// Saturates a blocking flow in the level graph with an iterative DFS
    /// using current-arc pointers. Returns the flow pushed.
    fn blocking_flow(&mut self, level: &[u32]) -> u64 {
        let mut next = vec![0usize; self.node_count()];
        let mut pushed = 0u64;
        let mut path: Vec<usize> = Vec::new();
        let mut v = self.source;
        loop {
            if v == self.sink {
                for &id in &path {
                    self.arcs[id].cap -= 1;
                    let rev = self.arcs[id].rev;
                    self.arcs[rev].cap += 1;
                }
                pushed += 1;
                path.clear();
                v = self.source;
                continue;
            }
            let mut advanced = false;
            while next[v] < self.adjacency[v].len() {
                let id = self.adjacency[v][next[v]];
                let arc = &self.arcs[id];
                if arc.cap > 0 && level[arc.to] == level[v] + 1 {
                    path.push(id);
                    v = arc.to;
                    advanced = true;
                    break;
                }
                next[v] += 1;
            }
            if advanced {
                continue;
            }
            // Dead end: retreat and skip the arc that led here.
            match path.pop() {
                None => return pushed,
                Some(id) => {
                    let from = self.arcs[self.arcs[id].rev].to;
                    next[from] += 1;
                    v = from;
                }
            }
        }
    }

    /// Runs Dinitz to completion. Returns `(flow value, phases)`.
    pub fn max_flow(&mut self) -> (u64, usize) {
        let mut flow = 0;
        let mut phases = 0;
        while let Some(level) = self.levels() {
            phases += 1;
            flow += self.blocking_flow(&level);
        }
        (flow, phases)
    }

    /// Flow carried by forward arc `id` (arcs with original capacity 1).
    fn carries_flow(&self, id: usize) -> bool {
        id.is_multiple_of(2) && self.arcs[id].cap == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    pub cardinality: usize,
    /// Matched `(u, w)` pairs, ascending by `u`.
    pub pairs: Vec<(usize, usize)>,
    pub phases: usize,
}

/// Dinitz on `s → U → W → t`.
pub fn dinitz_bipartite(g: &BipartiteGraph) -> MatchingResult {
    let (n_u, n_w) = (g.n_u(), g.n_w());
    let u_node = |u: usize| 1 + u;
    let w_node = |w: usize| 1 + n_u + w;
    let sink = 1 + n_u + n_w;
    let mut net = FlowNetwork::new(sink + 1, 0, sink);
    for u in 0..n_u {
        net.add_arc(0, u_node(u), 1);
    }
    for (u, w) in g.edges() {
        net.add_arc(u_node(u), w_node(w), 1);
    }
    for w in 0..n_w {
        net.add_arc(w_node(w), sink, 1);
    }
    let (flow, phases) = net.max_flow();

    let mut pairs = Vec::with_capacity(flow as usize);
    for u in 0..n_u {
        for &id in &net.adjacency[u_node(u)] {
            if net.carries_flow(id) {
                pairs.push((u, net.arcs[id].to - w_node(0)));
            }
        }
    }
    MatchingResult {
        cardinality: flow as usize,
        pairs,
        phases,
    }
}

/// Dinitz on `s → U → (W | Z → W) → t`. `Z` vertices have no node capacity.
///
/// Flow through `z_q` is decoded by pairing its saturated in-arcs with its
/// saturated out-arcs in arc order; any such pair is an original edge
/// because the clique was complete.
pub fn dinitz_compressed(c: &CompressedGraph) -> Result<MatchingResult> {
    let (n_u, n_w, n_z) = (c.n_u(), c.n_w(), c.n_z());
    for clique in c.cliques() {
        clique.validate(n_u, n_w)?;
    }
    if c.recompute_m_star() != c.m_star() {
        return Err(Error::Consistency(format!(
            "compressed graph stores m* = {} but its parts hold {}",
            c.m_star(),
            c.recompute_m_star()
        )));
    }

    let u_node = |u: usize| 1 + u;
    let z_node = |q: usize| 1 + n_u + q;
    let w_node = |w: usize| 1 + n_u + n_z + w;
    let sink = 1 + n_u + n_z + n_w;
    let mut net = FlowNetwork::new(sink + 1, 0, sink);

    // U -> {W ∪ Z} arcs, collected per u so they can be added in target order.
    let mut out_of_u: Vec<Vec<usize>> = vec![Vec::new(); n_u];
    for (q, clique) in c.cliques().iter().enumerate() {
        for &u in &clique.left_u {
            out_of_u[u].push(z_node(q));
        }
    }
    let residual = c.residual();
    for w in 0..n_w {
        for u in iter_ones(residual.column(w)) {
            out_of_u[u].push(w_node(w));
        }
    }

    for u in 0..n_u {
        net.add_arc(0, u_node(u), 1);
    }
    for (u, targets) in out_of_u.iter_mut().enumerate() {
        targets.sort_unstable();
        for &t in targets.iter() {
            net.add_arc(u_node(u), t, 1);
        }
    }
    for (q, clique) in c.cliques().iter().enumerate() {
        let mut right = clique.right_k.clone();
        right.sort_unstable();
        for w in right {
            net.add_arc(z_node(q), w_node(w), 1);
        }
    }
    for w in 0..n_w {
        net.add_arc(w_node(w), sink, 1);
    }

    let (flow, phases) = net.max_flow();

    let mut pairs = Vec::with_capacity(flow as usize);
    let mut entering_z: Vec<Vec<usize>> = vec![Vec::new(); n_z];
    for u in 0..n_u {
        for &id in &net.adjacency[u_node(u)] {
            if !net.carries_flow(id) {
                continue;
            }
            let to = net.arcs[id].to;
            if to >= w_node(0) {
                pairs.push((u, to - w_node(0)));
            } else {
                entering_z[to - z_node(0)].push(u);
            }
        }
    }
    for (q, us) in entering_z.into_iter().enumerate() {
        let leaving: Vec<usize> = net.adjacency[z_node(q)]
            .iter()
            .filter(|&&id| net.carries_flow(id))
            .map(|&id| net.arcs[id].to - w_node(0))
            .collect();
        if leaving.len() != us.len() {
            return Err(Error::Consistency(format!(
                "z{q} carries {} units in but {} out",
                us.len(),
                leaving.len()
            )));
        }
        pairs.extend(us.into_iter().zip(leaving));
    }
    pairs.sort_unstable();

    Ok(MatchingResult {
        cardinality: flow as usize,
        pairs,
        phases,
    })
}

/// Whether `pairs` is a matching of `g`: vertex-disjoint on both sides and
/// every pair an edge.
pub fn is_valid_matching(g: &BipartiteGraph, pairs: &[(usize, usize)]) -> bool {
    let mut used_u = vec![false; g.n_u()];
    let mut used_w = vec![false; g.n_w()];
    pairs.iter().all(|&(u, w)| {
        u < g.n_u()
            && w < g.n_w()
            && g.contains(u, w)
            && !std::mem::replace(&mut used_u[u], true)
            && !std::mem::replace(&mut used_w[w], true)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpgc::{cpgc_compress, CpgcParams};
    use crate::fixtures;
    use crate::graph::CliqueRecord;

    /// Maximum matching by exhaustive search over `W` subsets (small `n_w`).
    fn brute_force_max(g: &BipartiteGraph) -> usize {
        let n_w = g.n_w();
        let mut best = vec![0usize; 1 << n_w];
        // best[mask] after processing rows 0..u = max matching using W ⊆ mask
        let mut cur = vec![0usize; 1 << n_w];
        for u in 0..g.n_u() {
            for mask in 0..(1usize << n_w) {
                let mut b = best[mask];
                for w in 0..n_w {
                    if mask >> w & 1 == 1 && g.contains(u, w) {
                        b = b.max(best[mask & !(1 << w)] + 1);
                    }
                }
                cur[mask] = b;
            }
            std::mem::swap(&mut best, &mut cur);
        }
        best[(1 << n_w) - 1]
    }

    #[test]
    fn complete_graph_is_perfect() {
        for n in [1, 2, 7, 64] {
            let r = dinitz_bipartite(&BipartiteGraph::complete(n, n));
            assert_eq!(r.cardinality, n);
            assert!(is_valid_matching(&BipartiteGraph::complete(n, n), &r.pairs));
        }
    }

    #[test]
    fn empty_graph() {
        let r = dinitz_bipartite(&BipartiteGraph::empty(5, 5));
        assert_eq!(r.cardinality, 0);
        assert!(r.pairs.is_empty());
    }

    #[test]
    fn reference_instance_matches_exhaustive() {
        let g = fixtures::worked_example();
        let r = dinitz_bipartite(&g);
        assert_eq!(r.cardinality, brute_force_max(&g));
        assert!(is_valid_matching(&g, &r.pairs));

        let out = cpgc_compress(&g, CpgcParams::new(1.0).unwrap()).unwrap();
        let rc = dinitz_compressed(&out.graph).unwrap();
        assert_eq!(rc.cardinality, r.cardinality);
        assert!(is_valid_matching(&g, &rc.pairs));
    }

    #[test]
    fn degenerate_compression_equals_original() {
        let g = fixtures::worked_example();
        let a = dinitz_bipartite(&g);
        let b = dinitz_compressed(&CompressedGraph::uncompressed(g)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn forced_structure() {
        // u0-w0 only, u1 adjacent to w0 and w1: max matching 2.
        let g = BipartiteGraph::from_edges(2, 2, &[(0, 0), (1, 0), (1, 1)]).unwrap();
        let r = dinitz_bipartite(&g);
        assert_eq!(r.pairs, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn z_node_passes_several_units() {
        // K_{3,3} as one clique: three units all through z_0.
        let cg = CompressedGraph::assemble(
            BipartiteGraph::empty(3, 3),
            vec![CliqueRecord::new(0, vec![2, 0, 1], vec![0, 1, 2])],
        )
        .unwrap();
        let r = dinitz_compressed(&cg).unwrap();
        assert_eq!(r.cardinality, 3);
        assert!(is_valid_matching(&BipartiteGraph::complete(3, 3), &r.pairs));
    }

    #[test]
    fn small_random_graphs_match_exhaustive() {
        use crate::genio::{generate, GenSpec};
        for seed in 0..40u64 {
            let p = [0.2, 0.5, 0.9][seed as usize % 3];
            let g = generate(&GenSpec::new(8, p, seed).unwrap());
            let r = dinitz_bipartite(&g);
            assert_eq!(r.cardinality, brute_force_max(&g), "seed {seed}");
            assert!(is_valid_matching(&g, &r.pairs));
        }
    }

    #[test]
    fn validity_checker() {
        let g = BipartiteGraph::from_edges(2, 2, &[(0, 0), (1, 0)]).unwrap();
        assert!(is_valid_matching(&g, &[(0, 0)]));
        assert!(!is_valid_matching(&g, &[(0, 0), (1, 0)]));
        assert!(!is_valid_matching(&g, &[(1, 1)]));
    }
}
