//! Per-run metrics and their CSV rendering.

use std::fmt::Write as _;
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Cpgc,
    Fm,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cpgc => "cpgc",
            Algorithm::Fm => "fm",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "cpgc" => Ok(Algorithm::Cpgc),
            "fm" => Ok(Algorithm::Fm),
            other => Err(format!("unknown algorithm '{other}' (expected cpgc or fm)")),
        }
    }
}

/// One pass of the extraction loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationRecord {
    /// 1-based iteration number.
    pub iter: usize,
    /// Remaining edges when the iteration started.
    pub m_hat: usize,
    pub k_hat: usize,
    pub cliques_this_iter: usize,
    pub cum_cliques: usize,
    /// Number of `c_j` evaluations (FM only).
    pub c_eval_count: Option<u64>,
}

/// The three stopping thresholds in play, all for the run's `n` and `δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// `k̂` computed from the edges left when extraction stopped.
    pub final_k_hat: usize,
    /// FM loop guard `n^{2−δ}`.
    pub fm_guard: f64,
    /// Minimum edge count below which δ-cliques cannot compress, `2n^{2−δ/2}`.
    pub min_compressible: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub n_u: usize,
    pub n_w: usize,
    pub delta: f64,
    pub m: usize,
    pub m_star: usize,
    pub cliques: usize,
    pub iterations: Vec<IterationRecord>,
    pub wall: Duration,
    pub thresholds: Thresholds,
    /// Back-edges added by the general-graph reduction; not part of `m_star`.
    pub back_edges: Option<usize>,
}

impl RunReport {
    pub fn unbalanced(&self) -> bool {
        self.n_u != self.n_w
    }

    /// `m / m*`, 1 when `m* = 0`.
    pub fn ratio(&self) -> f64 {
        if self.m_star == 0 {
            1.0
        } else {
            self.m as f64 / self.m_star as f64
        }
    }

    pub fn wall_ms(&self) -> f64 {
        self.wall.as_secs_f64() * 1e3
    }

    pub fn k_hat_trace(&self) -> Vec<usize> {
        self.iterations.iter().map(|r| r.k_hat).collect()
    }

    /// Iteration table followed by a summary table.
    ///
    /// ```text
    /// iter,m_hat,k_hat,cliques_this_iter,cum_cliques[,c_eval_count]
    /// ...
    /// m,m_star,ratio,wall_ms,cliques,iterations,final_k_hat,fm_guard,min_compressible,unbalanced,back_edges
    /// ...
    /// ```
    pub fn to_csv(&self) -> String {
        let with_evals = self.algorithm == Algorithm::Fm;
        let mut out = String::from("iter,m_hat,k_hat,cliques_this_iter,cum_cliques");
        if with_evals {
            out.push_str(",c_eval_count");
        }
        out.push('\n');
        for r in &self.iterations {
            let _ = write!(
                out,
                "{},{},{},{},{}",
                r.iter, r.m_hat, r.k_hat, r.cliques_this_iter, r.cum_cliques
            );
            if with_evals {
                let _ = write!(out, ",{}", r.c_eval_count.unwrap_or(0));
            }
            out.push('\n');
        }
        out.push_str(
            "m,m_star,ratio,wall_ms,cliques,iterations,final_k_hat,fm_guard,min_compressible,unbalanced,back_edges\n",
        );
        let _ = writeln!(
            out,
            "{},{},{:.6},{:.3},{},{},{},{:.3},{:.3},{},{}",
            self.m,
            self.m_star,
            self.ratio(),
            self.wall_ms(),
            self.cliques,
            self.iterations.len(),
            self.thresholds.final_k_hat,
            self.thresholds.fm_guard,
            self.thresholds.min_compressible,
            self.unbalanced(),
            self.back_edges.unwrap_or(0),
        );
        out
    }
}
