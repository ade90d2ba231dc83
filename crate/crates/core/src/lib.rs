//! Clique-partitioning compression of dense bipartite graphs.
//!
//! A graph `G = (U, W, E)` is turned into a tripartite graph `G*` in which
//! each extracted biclique `U_q × K_q` is replaced by a star through a new
//! vertex `z_q`. Two compressors are provided: [`cpgc_compress`], which
//! strips many cliques per pass, and [`fm_compress`], the one-clique-at-a-time
//! baseline driven by neighborhood trees. [`matching`] runs Dinitz maximum
//! matching on either representation.

pub mod bench;
pub mod compress;
pub mod cpgc;
pub mod error;
pub mod fixtures;
pub mod fm;
pub mod genio;
pub mod graph;
pub mod matching;
pub mod report;
pub mod transform;
pub mod verify;

pub use compress::{compress, materializes, Compression};
pub use cpgc::{
    cpgc_compress, k_hat, min_edges_for_compression, theoretical_edge_bound, CpgcParams,
};
pub use error::{Error, ParseError, Result, Side};
pub use fm::fm_compress;
pub use genio::{generate, GenSpec};
pub use graph::{BipartiteGraph, CliqueRecord, CompressedGraph, DegreeVector};
pub use matching::{dinitz_bipartite, dinitz_compressed, MatchingResult};
pub use report::{Algorithm, IterationRecord, RunReport, Thresholds};
pub use transform::{
    compress_general, to_bipartite, CompressedGeneralGraph, GeneralGraph, Orientation,
};
pub use verify::{verify_compression, VerifyReport};
