//! Pieces shared by both compressors.

use crate::cpgc::{cpgc_compress, k_hat, CpgcParams};
use crate::error::Result;
use crate::fm::fm_compress;
use crate::graph::{BipartiteGraph, CompressedGraph};
use crate::report::{Algorithm, RunReport, Thresholds};

/// Output of one compression run.
#[derive(Debug, Clone)]
pub struct Compression {
    pub graph: CompressedGraph,
    pub report: RunReport,
}

/// Runs the chosen compressor.
pub fn compress(g: &BipartiteGraph, delta: f64, algorithm: Algorithm) -> Result<Compression> {
    let params = CpgcParams::new(delta)?;
    match algorithm {
        Algorithm::Cpgc => cpgc_compress(g, params),
        Algorithm::Fm => fm_compress(g, params.delta()),
    }
}

/// A candidate biclique is only turned into a star when it has at least two
/// left vertices and the star is strictly smaller than the biclique.
pub fn materializes(left: usize, right: usize) -> bool {
    left >= 2 && left * right > left + right
}

/// `k̂` capped at `|W|`.
pub(crate) fn capped_k_hat(n: usize, n_w: usize, m_hat: usize, delta: f64) -> Result<usize> {
    Ok(k_hat(n, m_hat, delta)?.min(n_w))
}

pub(crate) fn thresholds(n: usize, final_k_hat: usize, delta: f64) -> Thresholds {
    let nf = n as f64;
    Thresholds {
        final_k_hat,
        fm_guard: nf.powf(2.0 - delta),
        min_compressible: 2.0 * nf.powf(2.0 - delta / 2.0),
    }
}
