//! Parameter sweeps over generated instances.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::compress::compress;
use crate::cpgc::theoretical_edge_bound;
use crate::error::Result;
use crate::genio::{generate, GenSpec};
use crate::report::Algorithm;
use crate::verify::verify_compression;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub ns: Vec<usize>,
    pub ps: Vec<f64>,
    pub deltas: Vec<f64>,
    pub seeds: Vec<u64>,
    pub algos: Vec<Algorithm>,
    /// FM is skipped above this `n`.
    pub fm_max_n: usize,
    pub parallel: bool,
    /// Run the structural checks on every output.
    pub verify: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            ns: vec![32, 64, 128, 256, 512, 1024],
            ps: vec![0.8, 0.9, 0.98],
            deltas: vec![0.5, 0.6, 0.7, 0.8, 0.9, 1.0],
            seeds: (0..10).collect(),
            algos: vec![Algorithm::Cpgc, Algorithm::Fm],
            fm_max_n: 1024,
            parallel: true,
            verify: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub algo: Algorithm,
    pub n: usize,
    pub p: f64,
    pub delta: f64,
    pub seed: u64,
    pub m: usize,
    pub m_star: usize,
    pub ratio: f64,
    pub cliques: usize,
    pub iterations: usize,
    pub wall_ms: f64,
    /// `None` when verification was not requested.
    pub verified: Option<bool>,
    /// `None` when `m` is below the range where the edge bound applies.
    pub within_bound: Option<bool>,
}

/// One compression of one generated instance.
pub fn run_cell(
    algo: Algorithm,
    n: usize,
    p: f64,
    delta: f64,
    seed: u64,
    verify: bool,
) -> Result<BenchRow> {
    let g = generate(&GenSpec::new(n, p, seed)?);
    let out = compress(&g, delta, algo)?;
    let r = &out.report;
    let verified = verify.then(|| verify_compression(&g, &out.graph).passed());
    let within_bound = theoretical_edge_bound(n, r.m, delta).map(|b| r.m_star as f64 <= b);
    Ok(BenchRow {
        algo,
        n,
        p,
        delta,
        seed,
        m: r.m,
        m_star: r.m_star,
        ratio: r.ratio(),
        cliques: r.cliques,
        iterations: r.iterations.len(),
        wall_ms: r.wall_ms(),
        verified,
        within_bound,
    })
}

type Cell = (Algorithm, usize, f64, f64, u64);

fn cells(cfg: &BenchConfig) -> Vec<Cell> {
    let mut out = Vec::new();
    for &n in &cfg.ns {
        for &p in &cfg.ps {
            for &delta in &cfg.deltas {
                for &algo in &cfg.algos {
                    if algo == Algorithm::Fm && n > cfg.fm_max_n {
                        continue;
                    }
                    for &seed in &cfg.seeds {
                        out.push((algo, n, p, delta, seed));
                    }
                }
            }
        }
    }
    out
}

/// Rows come back in sweep order regardless of `parallel`.
pub fn run_sweep(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let cells = cells(cfg);
    let run = |&(algo, n, p, delta, seed): &Cell| run_cell(algo, n, p, delta, seed, cfg.verify);
    if cfg.parallel {
        cells.par_iter().map(run).collect()
    } else {
        cells.iter().map(run).collect()
    }
}

/// Mean and sample standard deviation.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Seed-aggregated statistics for one `(algo, n, p, δ)` group.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchSummary {
    pub algo: Algorithm,
    pub n: usize,
    pub p: f64,
    pub delta: f64,
    pub runs: usize,
    pub m: (f64, f64),
    pub m_star: (f64, f64),
    pub ratio: (f64, f64),
    pub cliques: (f64, f64),
    pub iterations: (f64, f64),
    pub wall_ms: (f64, f64),
    pub all_verified: Option<bool>,
    pub all_within_bound: Option<bool>,
}

/// Groups rows by `(algo, n, p, δ)` in order of first appearance.
pub fn summarize(rows: &[BenchRow]) -> Vec<BenchSummary> {
    let mut groups: Vec<Vec<&BenchRow>> = Vec::new();
    for r in rows {
        match groups.iter_mut().find(|g| {
            let h = g[0];
            h.algo == r.algo && h.n == r.n && h.p == r.p && h.delta == r.delta
        }) {
            Some(g) => g.push(r),
            None => groups.push(vec![r]),
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let stat = |f: &dyn Fn(&BenchRow) -> f64| {
                mean_std(&g.iter().map(|r| f(r)).collect::<Vec<_>>())
            };
            let all = |f: &dyn Fn(&BenchRow) -> Option<bool>| {
                let vals: Vec<bool> = g.iter().filter_map(|r| f(r)).collect();
                (!vals.is_empty()).then(|| vals.iter().all(|&v| v))
            };
            let h = g[0];
            BenchSummary {
                algo: h.algo,
                n: h.n,
                p: h.p,
                delta: h.delta,
                runs: g.len(),
                m: stat(&|r| r.m as f64),
                m_star: stat(&|r| r.m_star as f64),
                ratio: stat(&|r| r.ratio),
                cliques: stat(&|r| r.cliques as f64),
                iterations: stat(&|r| r.iterations as f64),
                wall_ms: stat(&|r| r.wall_ms),
                all_verified: all(&|r| r.verified),
                all_within_bound: all(&|r| r.within_bound),
            }
        })
        .collect()
}

pub const CSV_HEADER: &str =
    "algo,n,p,delta,seed,m,m_star,ratio,cliques,iterations,wall_ms,verified,within_bound";

fn opt_bool(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "",
    }
}

/// Per-run rows, then a `mean` and a `stddev` row per group (in the `seed`
/// column).
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{:.6},{},{},{:.3},{},{}",
            r.algo,
            r.n,
            r.p,
            r.delta,
            r.seed,
            r.m,
            r.m_star,
            r.ratio,
            r.cliques,
            r.iterations,
            r.wall_ms,
            opt_bool(r.verified),
            opt_bool(r.within_bound)
        );
    }
    for s in summarize(rows) {
        for (label, pick) in [("mean", 0usize), ("stddev", 1)] {
            let v = |x: (f64, f64)| if pick == 0 { x.0 } else { x.1 };
            let _ = writeln!(
                out,
                "{},{},{},{},{label},{:.3},{:.3},{:.6},{:.3},{:.3},{:.3},{},{}",
                s.algo,
                s.n,
                s.p,
                s.delta,
                v(s.m),
                v(s.m_star),
                v(s.ratio),
                v(s.cliques),
                v(s.iterations),
                v(s.wall_ms),
                opt_bool(s.all_verified),
                opt_bool(s.all_within_bound)
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> BenchConfig {
        BenchConfig {
            ns: vec![16, 32],
            ps: vec![0.9],
            deltas: vec![0.7, 1.0],
            seeds: vec![1, 2, 3],
            ..BenchConfig::default()
        }
    }

    #[test]
    fn mean_std_matches_hand_values() {
        let (m, s) = mean_std(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]);
        assert_eq!(m, 5.0);
        assert!((s - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert_eq!(mean_std(&[3.0]), (3.0, 0.0));
    }

    #[test]
    fn sweep_order_and_parallel_agree() {
        let cfg = small();
        let par = run_sweep(&cfg).unwrap();
        let seq = run_sweep(&BenchConfig {
            parallel: false,
            ..cfg
        })
        .unwrap();
        assert_eq!(par.len(), 2 * 2 * 2 * 3);
        for (a, b) in par.iter().zip(&seq) {
            assert_eq!(
                (a.algo, a.n, a.seed, a.m_star, a.cliques),
                (b.algo, b.n, b.seed, b.m_star, b.cliques)
            );
        }
        assert!(par.iter().all(|r| r.verified == Some(true)));
        assert!(par.iter().all(|r| r.within_bound != Some(false)));
    }

    #[test]
    fn fm_cap_skips_large_n() {
        let cfg = BenchConfig {
            fm_max_n: 16,
            ..small()
        };
        let rows = run_sweep(&cfg).unwrap();
        assert!(rows.iter().all(|r| r.algo == Algorithm::Cpgc || r.n <= 16));
    }

    #[test]
    fn csv_has_aggregate_rows() {
        let rows = run_sweep(&small()).unwrap();
        let csv = to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let cols = CSV_HEADER.split(',').count();
        assert!(csv.lines().all(|l| l.split(',').count() == cols));
        assert_eq!(
            csv.lines()
                .filter(|l| l.split(',').nth(4) == Some("mean"))
                .count(),
            8
        );
        assert_eq!(
            csv.lines()
                .filter(|l| l.split(',').nth(4) == Some("stddev"))
                .count(),
            8
        );
    }

    #[test]
    fn ratio_column_matches_counts() {
        for r in run_sweep(&small()).unwrap() {
            let printed: f64 = format!("{:.6}", r.ratio).parse().unwrap();
            assert!((printed - r.m as f64 / r.m_star as f64).abs() <= 5e-7);
            if r.cliques > 0 {
                assert!(r.ratio >= 1.0);
            }
        }
    }
}
