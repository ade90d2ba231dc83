//! Seeded random instances and the plain-text graph formats.
//!
//! # Generator
//!
//! `generate` draws every one of the `n²` cells independently, row-major
//! (`u` ascending, then `w` ascending), one 64-bit draw per cell. The stream
//! is xoshiro256++ seeded through SplitMix64 (the reference seeding of the
//! xoshiro family), and a cell becomes an edge iff
//! `(x >> 11) · 2⁻⁵³ < p`. The first outputs for seed 0 are
//! `0x53175d61490b23df, 0x61da6f3dc380d507, 0x5c0fdf91ec9a7bfc`, so any
//! port can check its stream against these.

mod text;

pub use text::{
    format_compressed, format_general, format_graph, parse_compressed, parse_general, parse_graph,
    read_compressed, read_general, read_graph, write_compressed, write_general, write_graph,
};

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

/// Parameters of a random `G(n, p)` bipartite instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(Self { n, p, seed })
    }
}

/// The generator's raw 64-bit stream for `seed`.
pub fn rng_for(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

#[inline]
fn unit_interval(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Random bipartite graph with `n` vertices per side, each edge present
/// independently with probability `p`.
pub fn generate(spec: &GenSpec) -> BipartiteGraph {
    let mut rng = rng_for(spec.seed);
    let mut g = BipartiteGraph::empty(spec.n, spec.n);
    for u in 0..spec.n {
        for w in 0..spec.n {
            if unit_interval(rng.next_u64()) < spec.p {
                g.insert(u, w);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_test_vectors() {
        let mut r = rng_for(0);
        assert_eq!(r.next_u64(), 0x53175d61490b23df);
        assert_eq!(r.next_u64(), 0x61da6f3dc380d507);
        assert_eq!(r.next_u64(), 0x5c0fdf91ec9a7bfc);
        assert_eq!(r.next_u64(), 0x02eebf8c3bbe5e1a);
        let mut r = rng_for(42);
        assert_eq!(r.next_u64(), 0xd0764d4f4476689f);
        assert_eq!(r.next_u64(), 0x519e4174576f3791);
    }

    #[test]
    fn small_instance_vector() {
        let g = generate(&GenSpec::new(4, 0.5, 7).unwrap());
        let expected = vec![
            (0, 0),
            (0, 1),
            (0, 3),
            (1, 1),
            (1, 3),
            (2, 1),
            (2, 2),
            (2, 3),
            (3, 1),
            (3, 2),
            (3, 3),
        ];
        assert_eq!(g.edges(), expected);
    }

    #[test]
    fn extremes() {
        assert_eq!(generate(&GenSpec::new(33, 1.0, 3).unwrap()).m(), 33 * 33);
        assert_eq!(generate(&GenSpec::new(33, 0.0, 3).unwrap()).m(), 0);
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(GenSpec::new(4, 1.5, 0).is_err());
        assert!(GenSpec::new(4, -0.1, 0).is_err());
        assert!(GenSpec::new(4, f64::NAN, 0).is_err());
    }

    #[test]
    fn deterministic() {
        let s = GenSpec::new(100, 0.9, 11).unwrap();
        assert_eq!(generate(&s), generate(&s));
        assert_ne!(generate(&s), generate(&GenSpec::new(100, 0.9, 12).unwrap()));
    }

    #[test]
    fn edge_count_concentrates() {
        // Binomial(n², p): mean n²p, σ = sqrt(n² p (1−p)). The mean of 10
        // draws has σ/√10; allow 3 single-draw σ as stated.
        let (n, p) = (1024usize, 0.9);
        let cells = (n * n) as f64;
        let sigma = (cells * p * (1.0 - p)).sqrt();
        let mean = (0..10u64)
            .map(|s| generate(&GenSpec::new(n, p, s).unwrap()).m() as f64)
            .sum::<f64>()
            / 10.0;
        assert!((mean - cells * p).abs() <= 3.0 * sigma, "mean {mean}");
    }
}
