//! Dense bipartite graphs and their tripartite compressed form.
//!
//! Adjacency is a single bit matrix stored column-major: the bits of column
//! `w` are the set `N(w)` over `U`, packed into `u64` words. Row views
//! `N(u)` are read out of the same words, so the two views cannot disagree.
//! Common-neighbour queries AND whole columns a word at a time.

use crate::error::{Error, Result, Side};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Iterates the positions of set bits in a packed word slice, ascending.
pub(crate) fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(wi * WORD + bit)
        })
    })
}

#[inline]
fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Bipartite graph `G(U, W, E)` over a dense bit matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_u: usize,
    n_w: usize,
    words_per_col: usize,
    bits: Vec<u64>,
    m: usize,
}

impl std::fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BipartiteGraph")
            .field("n_u", &self.n_u)
            .field("n_w", &self.n_w)
            .field("m", &self.m)
            .finish()
    }
}

impl BipartiteGraph {
    /// Graph with no edges.
    pub fn empty(n_u: usize, n_w: usize) -> Self {
        let words_per_col = words_for(n_u);
        Self {
            n_u,
            n_w,
            words_per_col,
            bits: vec![0; words_per_col * n_w],
            m: 0,
        }
    }

    /// Complete bipartite graph `K_{n_u, n_w}`.
    pub fn complete(n_u: usize, n_w: usize) -> Self {
        let mut g = Self::empty(n_u, n_w);
        for w in 0..n_w {
            for u in 0..n_u {
                g.insert(u, w);
            }
        }
        g
    }

    /// Builds a graph from `(u, w)` pairs. Duplicate pairs collapse.
    pub fn from_edges(n_u: usize, n_w: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n_u, n_w);
        for &(u, w) in edges {
            g.check_ids(u, w)?;
            g.insert(u, w);
        }
        Ok(g)
    }

    fn check_ids(&self, u: usize, w: usize) -> Result<()> {
        if u >= self.n_u {
            return Err(Error::IdOutOfRange {
                side: Side::U,
                id: u,
                bound: self.n_u,
            });
        }
        if w >= self.n_w {
            return Err(Error::IdOutOfRange {
                side: Side::W,
                id: w,
                bound: self.n_w,
            });
        }
        Ok(())
    }

    pub fn n_u(&self) -> usize {
        self.n_u
    }

    pub fn n_w(&self) -> usize {
        self.n_w
    }

    /// `max(n_u, n_w)`, the `n` used by the size formulas.
    pub fn n(&self) -> usize {
        self.n_u.max(self.n_w)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_balanced(&self) -> bool {
        self.n_u == self.n_w
    }

    #[inline]
    fn col_range(&self, w: usize) -> std::ops::Range<usize> {
        let start = w * self.words_per_col;
        start..start + self.words_per_col
    }

    /// Packed bits of `N(w)` over `U`.
    #[inline]
    pub fn column(&self, w: usize) -> &[u64] {
        &self.bits[self.col_range(w)]
    }

    #[inline]
    pub fn contains(&self, u: usize, w: usize) -> bool {
        self.bits[w * self.words_per_col + u / WORD] >> (u % WORD) & 1 == 1
    }

    /// Sets bit `(u, w)`; returns whether it was newly set. Ids must be in range.
    pub fn insert(&mut self, u: usize, w: usize) -> bool {
        let word = &mut self.bits[w * self.words_per_col + u / WORD];
        let mask = 1u64 << (u % WORD);
        if *word & mask != 0 {
            return false;
        }
        *word |= mask;
        self.m += 1;
        true
    }

    /// Clears bit `(u, w)`; returns whether it was set. Ids must be in range.
    pub fn remove(&mut self, u: usize, w: usize) -> bool {
        let word = &mut self.bits[w * self.words_per_col + u / WORD];
        let mask = 1u64 << (u % WORD);
        if *word & mask == 0 {
            return false;
        }
        *word &= !mask;
        self.m -= 1;
        true
    }

    /// `N(w)` in ascending u-id order.
    pub fn neighbors_of_w(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        iter_ones(self.column(w))
    }

    /// `N(u)` in ascending w-id order.
    pub fn neighbors_of_u(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_w).filter(move |&w| self.contains(u, w))
    }

    pub fn degree_of_w(&self, w: usize) -> usize {
        popcount(self.column(w))
    }

    pub fn degree_of_u(&self, u: usize) -> usize {
        self.neighbors_of_u(u).count()
    }

    /// All edges in ascending `(u, w)` order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for w in 0..self.n_w {
            out.extend(self.neighbors_of_w(w).map(|u| (u, w)));
        }
        out.sort_unstable();
        out
    }

    /// Population count of the matrix, independent of the cached `m`.
    pub fn count_bits(&self) -> usize {
        popcount(&self.bits)
    }

    /// `d_w[j] = |N(w_j)|`.
    pub fn degrees_w(&self) -> DegreeVector {
        DegreeVector((0..self.n_w).map(|w| self.degree_of_w(w)).collect())
    }

    /// `{u : K ⊆ N(u)}` in ascending order, by AND-ing the columns of `K`.
    ///
    /// An empty `K` yields all of `U`.
    pub fn common_neighbors(&self, k: &[usize]) -> Result<Vec<usize>> {
        if let Some(&w) = k.iter().find(|&&w| w >= self.n_w) {
            return Err(Error::IdOutOfRange {
                side: Side::W,
                id: w,
                bound: self.n_w,
            });
        }
        let mask = self.common_neighbor_mask(k);
        Ok(iter_ones(&mask).collect())
    }

    pub(crate) fn common_neighbor_mask(&self, k: &[usize]) -> Vec<u64> {
        let mut acc = self.full_u_mask();
        for &w in k {
            for (a, c) in acc.iter_mut().zip(self.column(w)) {
                *a &= *c;
            }
        }
        acc
    }

    fn full_u_mask(&self) -> Vec<u64> {
        let mut mask = vec![u64::MAX; self.words_per_col];
        let tail = self.n_u % WORD;
        if tail != 0 {
            if let Some(last) = mask.last_mut() {
                *last = (1u64 << tail) - 1;
            }
        }
        mask
    }

    pub(crate) fn u_mask(&self, us: &[usize]) -> Vec<u64> {
        let mut mask = vec![0u64; self.words_per_col];
        for &u in us {
            mask[u / WORD] |= 1u64 << (u % WORD);
        }
        mask
    }

    /// Removes the biclique `left_U × right_K`. Every pair must currently be
    /// an edge; otherwise nothing is modified and a consistency error is
    /// returned.
    pub fn remove_clique_edges(&mut self, clique: &CliqueRecord) -> Result<()> {
        clique.validate(self.n_u, self.n_w)?;
        let mask = self.u_mask(&clique.left_u);
        for &w in &clique.right_k {
            let col = self.column(w);
            if col.iter().zip(&mask).any(|(c, m)| c & m != *m) {
                let missing = clique
                    .left_u
                    .iter()
                    .find(|&&u| !self.contains(u, w))
                    .copied()
                    .unwrap_or_default();
                return Err(Error::Consistency(format!(
                    "clique {} covers non-edge (u{missing}, w{w})",
                    clique.index
                )));
            }
        }
        for &w in &clique.right_k {
            let range = self.col_range(w);
            for (c, m) in self.bits[range].iter_mut().zip(&mask) {
                *c &= !m;
            }
        }
        self.m -= clique.left_u.len() * clique.right_k.len();
        Ok(())
    }

    /// OR another graph of the same shape into this one.
    pub(crate) fn union_with(&mut self, other: &BipartiteGraph) {
        debug_assert_eq!((self.n_u, self.n_w), (other.n_u, other.n_w));
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= *b;
        }
        self.m = self.count_bits();
    }
}

/// Per-vertex degrees of `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector(pub Vec<usize>);

impl DegreeVector {
    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for DegreeVector {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

/// One extracted biclique `(U_{K_q}, K_q)`. `index` is the 0-based ordinal
/// of the clique within its compression run, which is also the id of its
/// auxiliary vertex `z_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueRecord {
    pub index: usize,
    /// Ordered right partition `K_q ⊆ W`.
    pub right_k: Vec<usize>,
    /// Left partition `U_{K_q} ⊆ U`.
    pub left_u: Vec<usize>,
}

impl CliqueRecord {
    pub fn new(index: usize, right_k: Vec<usize>, left_u: Vec<usize>) -> Self {
        Self {
            index,
            right_k,
            left_u,
        }
    }

    /// Edges of the biclique.
    pub fn edge_count(&self) -> usize {
        self.left_u.len() * self.right_k.len()
    }

    /// Edges of the star that replaces it.
    pub fn star_edge_count(&self) -> usize {
        self.left_u.len() + self.right_k.len()
    }

    /// Checks non-emptiness, range and duplicate-freedom of both sides.
    pub fn validate(&self, n_u: usize, n_w: usize) -> Result<()> {
        fn check(ids: &[usize], bound: usize, side: Side, what: &str) -> Result<()> {
            if ids.is_empty() {
                return Err(Error::InvalidClique(format!("{what} is empty")));
            }
            let mut seen = vec![false; bound];
            for &id in ids {
                if id >= bound {
                    return Err(Error::IdOutOfRange { side, id, bound });
                }
                if std::mem::replace(&mut seen[id], true) {
                    return Err(Error::InvalidClique(format!("{what} repeats {side}{id}")));
                }
            }
            Ok(())
        }
        check(&self.right_k, n_w, Side::W, "right partition")?;
        check(&self.left_u, n_u, Side::U, "left partition")
    }
}

/// Tripartite graph `G* = (U, W, Z, E*)`: residual direct edges plus one
/// star per clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedGraph {
    cliques: Vec<CliqueRecord>,
    residual: BipartiteGraph,
    m_star: usize,
}

impl CompressedGraph {
    /// Assembles `G*` from the edges left after clique extraction and the
    /// extracted cliques. Cliques are re-indexed by position. Fails if any
    /// clique is malformed or if any edge would be both direct and covered,
    /// or covered twice.
    pub fn assemble(residual: BipartiteGraph, cliques: Vec<CliqueRecord>) -> Result<Self> {
        let (n_u, n_w) = (residual.n_u(), residual.n_w());
        let mut covered = BipartiteGraph::empty(n_u, n_w);
        for (q, c) in cliques.iter().enumerate() {
            c.validate(n_u, n_w)?;
            if c.index != q {
                return Err(Error::InvalidClique(format!(
                    "clique at position {q} carries index {}",
                    c.index
                )));
            }
            let mask = residual.u_mask(&c.left_u);
            for &w in &c.right_k {
                let hits_residual = residual
                    .column(w)
                    .iter()
                    .zip(&mask)
                    .any(|(r, m)| r & m != 0);
                if hits_residual {
                    return Err(Error::Consistency(format!(
                        "clique {q} covers a residual edge at w{w}"
                    )));
                }
                let range = covered.col_range(w);
                for (cv, m) in covered.bits[range].iter_mut().zip(&mask) {
                    if *cv & m != 0 {
                        return Err(Error::Consistency(format!(
                            "clique {q} overlaps an earlier clique at w{w}"
                        )));
                    }
                    *cv |= m;
                }
            }
        }
        let m_star = residual.m()
            + cliques
                .iter()
                .map(CliqueRecord::star_edge_count)
                .sum::<usize>();
        Ok(Self {
            cliques,
            residual,
            m_star,
        })
    }

    /// `G*` with no cliques: every edge stays direct.
    pub fn uncompressed(g: BipartiteGraph) -> Self {
        let m_star = g.m();
        Self {
            cliques: Vec::new(),
            residual: g,
            m_star,
        }
    }

    pub fn n_u(&self) -> usize {
        self.residual.n_u()
    }

    pub fn n_w(&self) -> usize {
        self.residual.n_w()
    }

    /// Number of auxiliary vertices.
    pub fn n_z(&self) -> usize {
        self.cliques.len()
    }

    pub fn cliques(&self) -> &[CliqueRecord] {
        &self.cliques
    }

    pub fn residual(&self) -> &BipartiteGraph {
        &self.residual
    }

    /// `|E*|` as stored at assembly.
    pub fn m_star(&self) -> usize {
        self.m_star
    }

    /// `|E*|` recomputed from the parts.
    pub fn recompute_m_star(&self) -> usize {
        self.residual.count_bits()
            + self
                .cliques
                .iter()
                .map(CliqueRecord::star_edge_count)
                .sum::<usize>()
    }

    /// Number of original edges represented: residual plus biclique edges.
    pub fn represented_edges(&self) -> usize {
        self.residual.m()
            + self
                .cliques
                .iter()
                .map(CliqueRecord::edge_count)
                .sum::<usize>()
    }

    /// Replaces each star by its full biclique and unions with the residual.
    pub fn expand(&self) -> BipartiteGraph {
        let mut g = self.residual.clone();
        let mut cover = BipartiteGraph::empty(self.n_u(), self.n_w());
        for c in &self.cliques {
            let mask = cover.u_mask(&c.left_u);
            for &w in &c.right_k {
                let range = cover.col_range(w);
                for (cv, m) in cover.bits[range].iter_mut().zip(&mask) {
                    *cv |= m;
                }
            }
        }
        g.union_with(&cover);
        g
    }

    /// `m / m*`; 1 for the empty graph.
    pub fn compression_ratio(&self) -> f64 {
        let m = self.represented_edges();
        if self.m_star == 0 {
            1.0
        } else {
            m as f64 / self.m_star as f64
        }
    }
}
