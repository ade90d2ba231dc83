//! Feder–Motwani δ-clique extraction, the baseline CPGC is measured against.
//!
//! Every `u ∈ U` owns a *neighbourhood tree*: a complete binary tree over
//! `W` (padded to a power of two) whose node `ω` stores `d_{u,ω}`, the
//! number of neighbours of `u` inside the block `W_ω`. A clique's right
//! partition is chosen one vertex at a time by walking root to leaf and, at
//! every node, comparing
//!
//! ```text
//! c_j = Σ_{u ∈ U_t} d_{u,ω·j} · (d_u − 1)^[k−t]      (j = 0, 1)
//! ```
//!
//! the number of ordered `(k−t+1)`-tuples of neighbours of some surviving
//! `u` whose first element lies in the left or right child. The walk goes
//! left on ties. These counts explode combinatorially, so they are exact
//! big integers.
//!
//! Trees are stored in heap layout: node `ω` of depth `ℓ` sits at index
//! `2^ℓ + ω`, so leaf `w` is at `2^r + w`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::compress::{capped_k_hat, materializes, thresholds, Compression};
use crate::cpgc::CpgcParams;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, CliqueRecord, CompressedGraph};
use crate::report::{Algorithm, IterationRecord, RunReport};

/// Bit-string label `ω` of a tree node; the root is the empty string `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeLabel {
    depth: u32,
    bits: u64,
}

impl NodeLabel {
    pub const ROOT: NodeLabel = NodeLabel { depth: 0, bits: 0 };

    pub fn leaf(w: usize, depth: u32) -> Self {
        Self {
            depth,
            bits: w as u64,
        }
    }

    /// `ω·j`.
    pub fn child(self, j: u8) -> Self {
        debug_assert!(j <= 1);
        Self {
            depth: self.depth + 1,
            bits: (self.bits << 1) | u64::from(j),
        }
    }

    pub fn depth(self) -> u32 {
        self.depth
    }

    /// Value of the bit string; for a leaf this is the `W` id.
    pub fn value(self) -> u64 {
        self.bits
    }

    fn heap_index(self) -> usize {
        (1usize << self.depth) | self.bits as usize
    }

    /// First `W` id covered by this node in a tree of depth `r`.
    pub fn block_start(self, r: u32) -> usize {
        (self.bits as usize) << (r - self.depth)
    }

    /// Number of `W` slots covered by this node in a tree of depth `r`.
    pub fn block_len(self, r: u32) -> usize {
        1usize << (r - self.depth)
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.depth == 0 {
            return f.write_str("ε");
        }
        for i in (0..self.depth).rev() {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for NodeLabel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.is_empty() || s == "ε" {
            return Ok(Self::ROOT);
        }
        if s.len() > 63 {
            return Err(format!("label '{s}' too deep"));
        }
        s.chars().try_fold(Self::ROOT, |acc, c| match c {
            '0' => Ok(acc.child(0)),
            '1' => Ok(acc.child(1)),
            other => Err(format!("invalid label character '{other}'")),
        })
    }
}

/// Tree depth `r` with `2^r ≥ n_w`.
pub fn tree_depth(n_w: usize) -> u32 {
    n_w.max(1).next_power_of_two().trailing_zeros()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodTree {
    owner: usize,
    depth: u32,
    counters: Vec<i64>,
}

impl NeighborhoodTree {
    fn zeroed(owner: usize, depth: u32) -> Self {
        Self {
            owner,
            depth,
            counters: vec![0; 2usize << depth],
        }
    }

    pub fn owner(&self) -> usize {
        self.owner
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// `d_{u,ω}`.
    pub fn counter(&self, label: NodeLabel) -> i64 {
        self.counters[label.heap_index()]
    }

    /// Root counter `d_u`.
    pub fn root(&self) -> i64 {
        self.counters[1]
    }

    pub fn leaf(&self, w: usize) -> i64 {
        self.counters[(1usize << self.depth) + w]
    }

    /// Decrements every counter on the root-to-leaf path of `w`.
    fn decrement_path(&mut self, w: usize) {
        let mut i = (1usize << self.depth) + w;
        while i >= 1 {
            self.counters[i] -= 1;
            i >>= 1;
        }
    }

    fn fill_from(&mut self, g: &BipartiteGraph) {
        let leaves = 1usize << self.depth;
        self.counters.iter_mut().for_each(|c| *c = 0);
        for w in g.neighbors_of_u(self.owner) {
            self.counters[leaves + w] = 1;
        }
        self.sum_up();
    }

    fn sum_up(&mut self) {
        let leaves = 1usize << self.depth;
        for i in (1..leaves).rev() {
            self.counters[i] = self.counters[2 * i] + self.counters[2 * i + 1];
        }
    }
}

/// One tree per `u`, counters equal to `|N(u) ∩ W_ω|`.
pub fn build_trees(g: &BipartiteGraph) -> Vec<NeighborhoodTree> {
    let depth = tree_depth(g.n_w());
    let leaves = 1usize << depth;
    let mut trees: Vec<_> = (0..g.n_u())
        .map(|u| NeighborhoodTree::zeroed(u, depth))
        .collect();
    for w in 0..g.n_w() {
        for u in g.neighbors_of_w(w) {
            trees[u].counters[leaves + w] = 1;
        }
    }
    trees.iter_mut().for_each(NeighborhoodTree::sum_up);
    trees
}

fn rebuild_trees(g: &BipartiteGraph, trees: &mut [NeighborhoodTree]) {
    for tree in trees {
        tree.fill_from(g);
    }
}

/// `x^[j] = x(x−1)…(x−j+1)`, the number of ordered `j`-subsets of an
/// `x`-set (zero when `j > x`).
pub fn falling_factorial(x: u64, j: u64) -> BigUint {
    if j > x {
        return BigUint::zero();
    }
    (0..j).fold(BigUint::one(), |acc, i| acc * (x - i))
}

/// Progress of one clique selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmSelectionState {
    /// Current stage, 1-based.
    pub t: usize,
    /// `U_t`, ascending.
    pub candidates: Vec<usize>,
    /// `y_1 … y_{t−1}`.
    pub chosen: Vec<usize>,
}

impl FmSelectionState {
    pub fn new(n_u: usize) -> Self {
        Self {
            t: 1,
            candidates: (0..n_u).collect(),
            chosen: Vec::new(),
        }
    }
}

/// Per-candidate weight `(d_u − 1)^[k−t]`.
fn stage_weights(state: &FmSelectionState, trees: &[NeighborhoodTree], k: usize) -> Vec<BigUint> {
    let remaining = (k - state.t) as u64;
    state
        .candidates
        .iter()
        .map(|&u| match trees[u].root() {
            d if d >= 1 => falling_factorial((d - 1) as u64, remaining),
            _ => BigUint::zero(),
        })
        .collect()
}

fn weighted_count(
    candidates: &[usize],
    weights: &[BigUint],
    trees: &[NeighborhoodTree],
    label: NodeLabel,
) -> BigUint {
    let mut total = BigUint::zero();
    for (&u, weight) in candidates.iter().zip(weights) {
        let d = trees[u].counter(label);
        if d > 0 && !weight.is_zero() {
            total += weight * (d as u64);
        }
    }
    total
}

/// `c_j` for node `ω` at the current stage of `state`, with clique width `k`.
pub fn count_ordered_sets(
    state: &FmSelectionState,
    trees: &[NeighborhoodTree],
    label: NodeLabel,
    j: u8,
    k: usize,
) -> BigUint {
    assert!(j <= 1, "child selector must be 0 or 1");
    assert!(k >= state.t, "clique width {k} below stage {}", state.t);
    let weights = stage_weights(state, trees, k);
    weighted_count(&state.candidates, &weights, trees, label.child(j))
}

/// A selected clique plus the number of `c_j` evaluations it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmSelection {
    pub right_k: Vec<usize>,
    pub left_u: Vec<usize>,
    pub c_evals: u64,
}

/// Chooses `k̂` vertices of `W` by `k̂` root-to-leaf descents.
///
/// After leaf `y_t` is reached, `U_{t+1} = {u ∈ U_t : y_t ∈ N(u)}` and the
/// path to `y_t` is decremented in the tree of every `u ∈ U_t`. The trees
/// are left in that decremented state.
///
/// Returns `None` when no `u` has `k̂` neighbours, i.e. no descent can start
/// from a positive count.
pub fn fm_select_k(
    g: &BipartiteGraph,
    trees: &mut [NeighborhoodTree],
    k_hat: usize,
) -> Result<Option<FmSelection>> {
    if k_hat == 0 {
        return Ok(None);
    }
    let depth = tree_depth(g.n_w());
    let mut state = FmSelectionState::new(g.n_u());
    let mut c_evals = 0u64;

    for t in 1..=k_hat {
        state.t = t;
        let weights = stage_weights(&state, trees, k_hat);
        if weighted_count(&state.candidates, &weights, trees, NodeLabel::ROOT).is_zero() {
            if t == 1 {
                return Ok(None);
            }
            return Err(Error::Consistency(format!(
                "stage {t} of {k_hat} has no ordered tuples left"
            )));
        }

        let mut label = NodeLabel::ROOT;
        while label.depth() < depth {
            let left = label.child(0);
            let right = label.child(1);
            let c0 = weighted_count(&state.candidates, &weights, trees, left);
            let c1 = weighted_count(&state.candidates, &weights, trees, right);
            c_evals += 2;
            label = if c0 >= c1 { left } else { right };
        }

        let y = label.value() as usize;
        if y >= g.n_w() || state.chosen.contains(&y) {
            return Err(Error::Consistency(format!(
                "descent at stage {t} reached leaf {label} which is padding or already chosen"
            )));
        }
        for &u in &state.candidates {
            trees[u].decrement_path(y);
        }
        state.candidates.retain(|&u| g.contains(u, y));
        state.chosen.push(y);
    }

    Ok(Some(FmSelection {
        right_k: state.chosen,
        left_u: state.candidates,
        c_evals,
    }))
}

/// Compresses `g` with the FM baseline. The input is not modified.
///
/// Loops while `m̂ ≥ n^{2−δ}` and `k̂ > 1`, extracting one clique per
/// iteration and rebuilding all trees from the reduced graph afterwards.
/// Stops early if a selected clique would not shrink the graph. The
/// reported wall time covers clique extraction only.
pub fn fm_compress(g: &BipartiteGraph, delta: f64) -> Result<Compression> {
    let delta = CpgcParams::new(delta)?.delta();
    let start = Instant::now();
    let n = g.n();
    let n_w = g.n_w();
    let guard = (n as f64).powf(2.0 - delta);

    let mut work = g.clone();
    let mut cliques: Vec<CliqueRecord> = Vec::new();
    let mut iterations = Vec::new();
    let mut m_hat = work.m();
    let mut k = capped_k_hat(n, n_w, m_hat, delta)?;

    if m_hat > 0 {
        let mut trees = build_trees(&work);
        while (m_hat as f64) >= guard && k > 1 {
            let Some(sel) = fm_select_k(&work, &mut trees, k)? else {
                break;
            };
            if !materializes(sel.left_u.len(), sel.right_k.len()) {
                break;
            }
            let clique = CliqueRecord::new(cliques.len(), sel.right_k, sel.left_u);
            work.remove_clique_edges(&clique)?;
            cliques.push(clique);
            iterations.push(IterationRecord {
                iter: iterations.len() + 1,
                m_hat,
                k_hat: k,
                cliques_this_iter: 1,
                cum_cliques: cliques.len(),
                c_eval_count: Some(sel.c_evals),
            });
            m_hat = work.m();
            k = capped_k_hat(n, n_w, m_hat, delta)?;
            rebuild_trees(&work, &mut trees);
        }
    }
    let wall = start.elapsed();

    let clique_count = cliques.len();
    let graph = CompressedGraph::assemble(work, cliques)?;
    let report = RunReport {
        algorithm: Algorithm::Fm,
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
