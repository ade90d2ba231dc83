use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cpgc_core::bench::{self, BenchConfig};
use cpgc_core::genio::{read_compressed, read_general, read_graph, write_compressed, write_graph};
use cpgc_core::{
    compress, compress_general, dinitz_bipartite, dinitz_compressed, generate, verify_compression,
    Algorithm, GenSpec,
};

/// Relative output paths are resolved against this directory when set.
const OUT_DIR_VAR: &str = "CPGC_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "cpgc",
    version,
    about = "Clique-partitioning compression of dense bipartite graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Cpgc,
    Fm,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Cpgc => Algorithm::Cpgc,
            Algo::Fm => Algorithm::Fm,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InputKind {
    Original,
    Compressed,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a random balanced bipartite graph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compress a bipartite graph.
    Compress {
        #[arg(long, value_enum, default_value = "cpgc")]
        algo: Algo,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Run report CSV.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Maximum matching with Dinitz on an original or compressed graph.
    Match {
        #[arg(long, value_enum)]
        input: InputKind,
        #[arg(long)]
        file: PathBuf,
    },
    /// Check that a compressed graph faithfully represents the original.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        compressed: PathBuf,
    },
    /// Sweep generated instances and emit per-run and aggregate CSV rows.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [32usize, 64, 128, 256, 512, 1024])]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.8, 0.9, 0.98])]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.5, 0.6, 0.7, 0.8, 0.9, 1.0])]
        delta: Vec<f64>,
        /// Seeds 0..seeds.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_values = ["cpgc", "fm"])]
        algo: Vec<Algo>,
        /// Skip FM above this n.
        #[arg(long, default_value_t = 1024)]
        fm_max_n: usize,
        /// Run cells one at a time.
        #[arg(long)]
        serial: bool,
        #[arg(long)]
        no_verify: bool,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compress a general (directed or undirected) graph through its double cover.
    General {
        #[arg(long, value_enum, default_value = "cpgc")]
        algo: Algo,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn out_path(p: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

/// Resolves an output path and creates its parent directory.
fn prepare(p: &Path) -> Result<PathBuf> {
    let path = out_path(p);
    if let Some(parent) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    Ok(path)
}

fn write_out(p: &Path, text: &str) -> Result<PathBuf> {
    let path = prepare(p)?;
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Gen { n, p, seed, out } => {
            let g = generate(&GenSpec::new(n, p, seed)?);
            let path = prepare(&out)?;
            write_graph(&path, &g)?;
            eprintln!("wrote {} (n={n}, m={})", path.display(), g.m());
        }
        Cmd::Compress {
            algo,
            delta,
            graph,
            out,
            report,
        } => {
            let g = read_graph(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let c = compress(&g, delta, algo.into())?;
            let path = prepare(&out)?;
            write_compressed(&path, &c.graph)?;
            if let Some(r) = report {
                write_out(&r, &c.report.to_csv())?;
            }
            println!(
                "{}: m={} m*={} ratio={:.6} cliques={} iterations={} wall_ms={:.3}",
                c.report.algorithm,
                c.report.m,
                c.report.m_star,
                c.report.ratio(),
                c.report.cliques,
                c.report.iterations.len(),
                c.report.wall_ms()
            );
        }
        Cmd::Match { input, file } => {
            let ctx = || format!("reading {}", file.display());
            let (kind, n, size, result, wall) = match input {
                InputKind::Original => {
                    let g = read_graph(&file).with_context(ctx)?;
                    let start = Instant::now();
                    let r = dinitz_bipartite(&g);
                    ("original", g.n(), g.m(), r, start.elapsed())
                }
                InputKind::Compressed => {
                    let c = read_compressed(&file).with_context(ctx)?;
                    let start = Instant::now();
                    let r = dinitz_compressed(&c)?;
                    (
                        "compressed",
                        c.n_u().max(c.n_w()),
                        c.m_star(),
                        r,
                        start.elapsed(),
                    )
                }
            };
            println!("engine,input_kind,n,m_or_mstar,cardinality,phases,wall_ms");
            println!(
                "dinitz,{kind},{n},{size},{},{},{:.3}",
                result.cardinality,
                result.phases,
                wall.as_secs_f64() * 1e3
            );
        }
        Cmd::Verify { graph, compressed } => {
            let g = read_graph(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let c = read_compressed(&compressed)
                .with_context(|| format!("reading {}", compressed.display()))?;
            let r = verify_compression(&g, &c);
            let mark = |ok: bool| if ok { "ok" } else { "FAILED" };
            println!("path preservation: {}", mark(r.path_preservation));
            println!("edge partition: {}", mark(r.edge_partition));
            println!("m* bookkeeping: {}", mark(r.bookkeeping));
            for f in &r.failures {
                eprintln!("  {f}");
            }
            return Ok(r.passed());
        }
        Cmd::Bench {
            n,
            p,
            delta,
            seeds,
            algo,
            fm_max_n,
            serial,
            no_verify,
            out,
        } => {
            let cfg = BenchConfig {
                ns: n,
                ps: p,
                deltas: delta,
                seeds: (0..seeds).collect(),
                algos: algo.into_iter().map(Algorithm::from).collect(),
                fm_max_n,
                parallel: !serial,
                verify: !no_verify,
            };
            let rows = bench::run_sweep(&cfg)?;
            let csv = bench::to_csv(&rows);
            match out {
                Some(path) => {
                    let path = write_out(&path, &csv)?;
                    eprintln!("wrote {} ({} runs)", path.display(), rows.len());
                }
                None => print!("{csv}"),
            }
            let unverified = rows.iter().filter(|r| r.verified == Some(false)).count();
            let over_bound = rows
                .iter()
                .filter(|r| r.within_bound == Some(false))
                .count();
            if unverified > 0 || over_bound > 0 {
                eprintln!(
                    "{unverified} runs failed verification, {over_bound} exceeded the edge bound"
                );
                return Ok(false);
            }
        }
        Cmd::General {
            algo,
            delta,
            graph,
            out,
            report,
        } => {
            let (h, orientation) =
                read_general(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let (c, r) = compress_general(&h, orientation, delta, algo.into())?;
            let path = prepare(&out)?;
            write_compressed(&path, &c.core)?;
            if let Some(rp) = report {
                write_out(&rp, &r.to_csv())?;
            }
            println!(
                "{}: n={} m={} m*={} back_edges={} cliques={}",
                r.algorithm,
                h.n,
                r.m,
                r.m_star,
                c.back_edges.len(),
                r.cliques
            );
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
