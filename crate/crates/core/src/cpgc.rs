//! Clique-partitioning compression (CPGC) and its clique-stripping step (CSA).
//!
//! Each CPGC iteration computes the guaranteed right-partition width `k̂`
//! from the remaining edge count, then strips a whole batch of bicliques:
//! the highest-degree `W` vertices are cut into consecutive blocks of `k̂`
//! and every block is paired with its common neighbours in `U`. Extracting
//! many cliques per `k̂` is what separates CPGC from the one-clique-at-a-time
//! FM baseline.

use std::time::Instant;

use crate::compress::{capped_k_hat, materializes, thresholds, Compression};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, CliqueRecord, CompressedGraph, DegreeVector};
use crate::report::{Algorithm, IterationRecord, RunReport};

/// Slack used when flooring ratios of logarithms that land on an integer.
const FLOOR_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpgcParams {
    delta: f64,
}

impl CpgcParams {
    pub fn new(delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::InvalidDelta(delta));
        }
        Ok(Self { delta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

fn floor_with_slack(x: f64) -> f64 {
    let r = x.round();
    if r > x && r - x < FLOOR_SLACK {
        r
    } else {
        x.floor()
    }
}

fn ceil_with_slack(x: f64) -> f64 {
    let r = x.round();
    if x > r && x - r < FLOOR_SLACK {
        r
    } else {
        x.ceil()
    }
}

/// `k̂ = ⌊δ log n / log(2n²/m̂)⌋`.
///
/// Returns 0 when `m̂ = 0` or `n < 2` (no clique can be guaranteed).
pub fn k_hat(n: usize, m_hat: usize, delta: f64) -> Result<usize> {
    let max = n.saturating_mul(n);
    if m_hat > max {
        return Err(Error::TooManyEdges { m_hat, max });
    }
    if m_hat == 0 || n < 2 {
        return Ok(0);
    }
    let nf = n as f64;
    let denom = (2.0 * nf * nf / m_hat as f64).log2();
    let q = delta * nf.log2() / denom;
    Ok(floor_with_slack(q).max(0.0) as usize)
}

/// Lower edge count `⌈2n^{2−δ/2}⌉` below which δ-clique extraction cannot
/// compress.
pub fn min_edges_for_compression(n: usize, delta: f64) -> usize {
    ceil_with_slack(2.0 * (n as f64).powf(2.0 - delta / 2.0)) as usize
}

/// Closed-form ceiling on `m*`:
/// `2m(2/k + 4/(δ log₂ n) + 1/n^{1−δ}) + 2n^{2−δ/2}` with `k = k̂(n, m, δ)`.
///
/// `None` when `m ≤ 2n^{2−δ/2}`, where the bound does not apply.
pub fn theoretical_edge_bound(n: usize, m: usize, delta: f64) -> Option<f64> {
    let nf = n as f64;
    let floor_edges = 2.0 * nf.powf(2.0 - delta / 2.0);
    if (m as f64) <= floor_edges || delta <= 0.0 || n < 2 {
        return None;
    }
    let k = k_hat(n, m, delta).ok().filter(|&k| k > 0)? as f64;
    let mf = m as f64;
    Some(
        2.0 * mf * (2.0 / k + 4.0 / (delta * nf.log2()) + 1.0 / nf.powf(1.0 - delta)) + floor_edges,
    )
}

/// Outcome of one clique-stripping call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsaResult {
    pub new_cliques: Vec<CliqueRecord>,
    /// Cliques actually materialized this call.
    pub gamma: usize,
    /// Candidate set: every `w` whose degree reaches the `k̂`-th largest, in
    /// sorted order.
    pub candidates: Vec<usize>,
    /// Number of full blocks `⌊|candidates| / k̂⌋`.
    pub blocks: usize,
}

/// `W` ids sorted by degree descending, ties by ascending id.
fn degree_order(d_w: &DegreeVector) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d_w.len()).collect();
    order.sort_by(|&a, &b| d_w[b].cmp(&d_w[a]).then(a.cmp(&b)));
    order
}

/// Strips one batch of `k̂`-wide bicliques out of `g`, updating `g` and
/// `d_w` in place. New cliques are numbered from `q`.
///
/// A block whose common neighbourhood fails [`materializes`] is skipped and
/// leaves the graph untouched.
pub fn csa_strip(
    q: usize,
    k_hat: usize,
    g: &mut BipartiteGraph,
    d_w: &mut DegreeVector,
) -> Result<CsaResult> {
    debug_assert_eq!(d_w.sum(), g.m());
    let mut result = CsaResult {
        new_cliques: Vec::new(),
        gamma: 0,
        candidates: Vec::new(),
        blocks: 0,
    };
    if k_hat < 2 || k_hat > g.n_w() {
        return Ok(result);
    }

    let order = degree_order(d_w);
    let threshold = d_w[order[k_hat - 1]];
    let len = order.iter().take_while(|&&w| d_w[w] >= threshold).count();
    result.candidates = order[..len].to_vec();
    result.blocks = len / k_hat;

    for block in result.candidates.chunks_exact(k_hat) {
        let left = g.common_neighbors(block)?;
        if !materializes(left.len(), k_hat) {
            continue;
        }
        let clique = CliqueRecord::new(q + result.new_cliques.len(), block.to_vec(), left);
        g.remove_clique_edges(&clique)?;
        for &w in block {
            d_w.0[w] -= clique.left_u.len();
        }
        result.new_cliques.push(clique);
    }
    result.gamma = result.new_cliques.len();
    Ok(result)
}

/// Compresses `g` with CPGC. The input is not modified.
pub fn cpgc_compress(g: &BipartiteGraph, params: CpgcParams) -> Result<Compression> {
    let start = Instant::now();
    let delta = params.delta();
    let n = g.n();
    let n_w = g.n_w();

    let mut work = g.clone();
    let mut d_w = work.degrees_w();
    let mut m_hat = d_w.sum();
    let mut k = capped_k_hat(n, n_w, m_hat, delta)?;
    let mut cliques: Vec<CliqueRecord> = Vec::new();
    let mut iterations = Vec::new();

    while k > 1 {
        let csa = csa_strip(cliques.len(), k, &mut work, &mut d_w)?;
        iterations.push(IterationRecord {
            iter: iterations.len() + 1,
            m_hat,
            k_hat: k,
            cliques_this_iter: csa.gamma,
            cum_cliques: cliques.len() + csa.gamma,
            c_eval_count: None,
        });
        if csa.gamma == 0 {
            // m̂ and therefore k̂ are unchanged; another pass would repeat this one.
            break;
        }
        cliques.extend(csa.new_cliques);
        m_hat = d_w.sum();
        k = capped_k_hat(n, n_w, m_hat, delta)?;
    }

    let clique_count = cliques.len();
    let graph = CompressedGraph::assemble(work, cliques)?;
    let wall = start.elapsed();
    let report = RunReport {
        algorithm: Algorithm::Cpgc,
        n_u: g.n_u(),
        n_w,
        delta,
        m: g.m(),
        m_star: graph.m_star(),
        cliques: clique_count,
        iterations,
        wall,
        thresholds: thresholds(n, k, delta),
        back_edges: None,
    };
    Ok(Compression { graph, report })
}
