//! Structural checks on a `(G, G*)` pair.

use crate::graph::{BipartiteGraph, CompressedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    /// `(u,w) ∈ E ⇔ direct edge xor a shared z`.
    pub path_preservation: bool,
    /// Cliques pairwise edge-disjoint, disjoint from the residual, union = E.
    pub edge_partition: bool,
    /// Stored `m*` equals the recomputed one.
    pub bookkeeping: bool,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.path_preservation && self.edge_partition && self.bookkeeping
    }
}

const MAX_REPORTED: usize = 16;

fn note(failures: &mut Vec<String>, msg: impl FnOnce() -> String) {
    if failures.len() < MAX_REPORTED {
        failures.push(msg());
    }
}

/// Exhaustively checks every `(u, w)` pair.
pub fn verify_compression(original: &BipartiteGraph, compressed: &CompressedGraph) -> VerifyReport {
    let mut report = VerifyReport {
        path_preservation: true,
        edge_partition: true,
        bookkeeping: true,
        failures: Vec::new(),
    };
    let (n_u, n_w) = (original.n_u(), original.n_w());
    if (compressed.n_u(), compressed.n_w()) != (n_u, n_w) {
        report.path_preservation = false;
        report.edge_partition = false;
        note(&mut report.failures, || {
            format!(
                "shape mismatch: original {n_u}x{n_w}, compressed {}x{}",
                compressed.n_u(),
                compressed.n_w()
            )
        });
        return report;
    }

    let stored = compressed.m_star();
    let recomputed = compressed.recompute_m_star();
    if stored != recomputed {
        report.bookkeeping = false;
        note(&mut report.failures, || {
            format!("stored m* = {stored}, recomputed m* = {recomputed}")
        });
    }

    // Star incidence as bitsets over Z, one per U and one per W vertex.
    let n_z = compressed.n_z();
    let zw = n_z.div_ceil(64).max(1);
    let mut z_of_u = vec![0u64; n_u * zw];
    let mut z_of_w = vec![0u64; n_w * zw];
    // Cover multiplicity of every (u, w) pair across residual and cliques.
    let mut cover = vec![0u32; n_u * n_w];
    for (q, c) in compressed.cliques().iter().enumerate() {
        for &u in &c.left_u {
            z_of_u[u * zw + q / 64] |= 1 << (q % 64);
        }
        for &w in &c.right_k {
            z_of_w[w * zw + q / 64] |= 1 << (q % 64);
            for &u in &c.left_u {
                cover[u * n_w + w] += 1;
            }
        }
    }
    let residual = compressed.residual();
    for (u, w) in residual.edges() {
        cover[u * n_w + w] += 1;
    }

    for u in 0..n_u {
        let zu = &z_of_u[u * zw..(u + 1) * zw];
        for w in 0..n_w {
            let zv = &z_of_w[w * zw..(w + 1) * zw];
            let via_z = zu.iter().zip(zv).any(|(a, b)| a & b != 0);
            let direct = residual.contains(u, w);
            let in_e = original.contains(u, w);
            if in_e != (direct ^ via_z) {
                report.path_preservation = false;
                note(&mut report.failures, || {
                    format!("path: (u{u}, w{w}) edge={in_e} direct={direct} via_z={via_z}")
                });
            }
            let times = cover[u * n_w + w];
            if times != u32::from(in_e) {
                report.edge_partition = false;
                note(&mut report.failures, || {
                    format!("partition: (u{u}, w{w}) edge={in_e} covered {times} times")
                });
            }
        }
    }
    report
}
