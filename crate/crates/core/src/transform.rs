//! Compression of general graphs through the bipartite double cover.
//!
//! Every vertex `v` is split into a left copy `v_L` and a right copy `v_R`,
//! each arc `a → b` becomes the bipartite edge `(a_L, b_R)`, and after
//! compression one back-edge `v_R → v_L` per vertex is added so that paths
//! of any length can be followed.

use std::collections::VecDeque;

use crate::compress::{compress, Compression};
use crate::error::{Error, Result, Side};
use crate::graph::{BipartiteGraph, CompressedGraph};
use crate::report::{Algorithm, RunReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Directed,
    /// Each listed edge is traversable both ways.
    Undirected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GeneralGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = GeneralGraph { n, edges };
        g.check_ids()?;
        Ok(g)
    }

    fn check_ids(&self) -> Result<()> {
        for &(a, b) in &self.edges {
            for id in [a, b] {
                if id >= self.n {
                    return Err(Error::IdOutOfRange {
                        side: Side::U,
                        id,
                        bound: self.n,
                    });
                }
            }
        }
        Ok(())
    }

    /// Out-neighbor lists, with both directions for undirected input.
    fn adjacency(&self, orientation: Orientation) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            if orientation == Orientation::Undirected {
                adj[b].push(a);
            }
        }
        adj
    }

    /// `reach[a][b]` is true iff `b` is reachable from `a` (reflexive).
    pub fn reachability(&self, orientation: Orientation) -> Vec<Vec<bool>> {
        let adj = self.adjacency(orientation);
        (0..self.n)
            .map(|s| {
                let mut seen = vec![false; self.n];
                seen[s] = true;
                let mut queue = VecDeque::from([s]);
                while let Some(v) = queue.pop_front() {
                    for &x in &adj[v] {
                        if !seen[x] {
                            seen[x] = true;
                            queue.push_back(x);
                        }
                    }
                }
                seen
            })
            .collect()
    }
}

/// Double cover of `h`: left side is the tails, right side the heads.
/// Repeated arcs collapse to a single bipartite edge.
pub fn to_bipartite(h: &GeneralGraph, orientation: Orientation) -> Result<BipartiteGraph> {
    h.check_ids()?;
    let mut g = BipartiteGraph::empty(h.n, h.n);
    for &(a, b) in &h.edges {
        g.insert(a, b);
        if orientation == Orientation::Undirected {
            g.insert(b, a);
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedGeneralGraph {
    pub core: CompressedGraph,
    /// `(v_R, v_L)` for every vertex, in vertex order.
    pub back_edges: Vec<(usize, usize)>,
}

impl CompressedGeneralGraph {
    pub fn n(&self) -> usize {
        self.back_edges.len()
    }

    /// Vertices whose left copy is reachable from `a_L`. Residual and star
    /// edges are followed left to right only, back-edges right to left.
    pub fn reachable_from(&self, a: usize) -> Vec<bool> {
        let n = self.n();
        let core = &self.core;
        let residual = core.residual();
        let mut z_of_u: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, c) in core.cliques().iter().enumerate() {
            for &u in &c.left_u {
                z_of_u[u].push(q);
            }
        }
        let mut seen_l = vec![false; n];
        let mut seen_r = vec![false; n];
        let mut seen_z = vec![false; core.n_z()];
        seen_l[a] = true;
        let mut queue = VecDeque::from([a]);
        let mut visit_r = |w: usize, queue: &mut VecDeque<usize>, seen_l: &mut Vec<bool>| {
            if !seen_r[w] {
                seen_r[w] = true;
                let (_, v) = self.back_edges[w];
                if !seen_l[v] {
                    seen_l[v] = true;
                    queue.push_back(v);
                }
            }
        };
        while let Some(u) = queue.pop_front() {
            for w in residual.neighbors_of_u(u) {
                visit_r(w, &mut queue, &mut seen_l);
            }
            for &q in &z_of_u[u] {
                if !seen_z[q] {
                    seen_z[q] = true;
                    for &w in &core.cliques()[q].right_k {
                        visit_r(w, &mut queue, &mut seen_l);
                    }
                }
            }
        }
        seen_l
    }

    pub fn reachability(&self) -> Vec<Vec<bool>> {
        (0..self.n()).map(|a| self.reachable_from(a)).collect()
    }
}

/// Compresses the double cover of `h` and attaches the back-edges. The
/// report's `m_star` covers the core only; the back-edge count is reported
/// separately.
pub fn compress_general(
    h: &GeneralGraph,
    orientation: Orientation,
    delta: f64,
    algorithm: Algorithm,
) -> Result<(CompressedGeneralGraph, RunReport)> {
    let g = to_bipartite(h, orientation)?;
    let Compression { graph, mut report } = compress(&g, delta, algorithm)?;
    report.back_edges = Some(h.n);
    let back_edges = (0..h.n).map(|v| (v, v)).collect();
    Ok((
        CompressedGeneralGraph {
            core: graph,
            back_edges,
        },
        report,
    ))
}
