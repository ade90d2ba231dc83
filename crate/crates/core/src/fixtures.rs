//! Small hand-checked instances used by tests, the acceptance suite and docs.

use crate::graph::BipartiteGraph;

/// Neighbourhoods of the 8×8 reference instance, 1-based as drawn
/// (`u_i` → list of `w_j`). 54 edges.
const REFERENCE_ROWS: [&[usize]; 8] = [
    &[1, 2, 3, 4, 5, 6],
    &[2, 3, 4, 5, 6, 7],
    &[2, 3, 4, 5, 6, 7, 8],
    &[1, 2, 3, 4, 5, 6, 7, 8],
    &[1, 2, 3, 4, 5, 6, 8],
    &[1, 2, 4, 7, 8],
    &[1, 3, 4, 5, 6, 7, 8],
    &[1, 2, 3, 4, 5, 6, 7, 8],
];

/// The 8×8, 54-edge reference instance as 0-based `(u, w)` pairs.
pub fn worked_example_edges() -> Vec<(usize, usize)> {
    REFERENCE_ROWS
        .iter()
        .enumerate()
        .flat_map(|(u, row)| row.iter().map(move |&w| (u, w - 1)))
        .collect()
}

/// The 8×8, 54-edge reference instance.
pub fn worked_example() -> BipartiteGraph {
    BipartiteGraph::from_edges(8, 8, &worked_example_edges()).expect("fixture ids are in range")
}
