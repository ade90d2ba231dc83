mod common;

use cpgc_core::fm::{build_trees, count_ordered_sets, tree_depth, FmSelectionState, NodeLabel};
use cpgc_core::{generate, BipartiteGraph, GenSpec};

fn internal_labels(depth: u32) -> Vec<NodeLabel> {
    let mut out = vec![NodeLabel::ROOT];
    let mut i = 0;
    while i < out.len() {
        let l = out[i];
        if l.depth() + 1 < depth {
            out.push(l.child(0));
            out.push(l.child(1));
        }
        i += 1;
    }
    out
}

fn all_labels(depth: u32) -> Vec<NodeLabel> {
    let mut out = internal_labels(depth);
    for l in out.clone() {
        if l.depth() + 1 == depth {
            out.push(l.child(0));
            out.push(l.child(1));
        }
    }
    if depth == 0 {
        return vec![NodeLabel::ROOT];
    }
    out
}

/// Compares `c_j` with the tuple oracle after fixing `chosen` as the first
/// picks of a width-`k` selection.
fn check_stage(g: &BipartiteGraph, chosen: &[usize], k: usize) {
    let candidates = g.common_neighbors(chosen).unwrap();
    let mut reduced = g.clone();
    for &u in &candidates {
        for &y in chosen {
            reduced.remove(u, y);
        }
    }
    let trees = build_trees(&reduced);
    let state = FmSelectionState {
        t: chosen.len() + 1,
        candidates: candidates.clone(),
        chosen: chosen.to_vec(),
    };
    let depth = tree_depth(g.n_w());
    for label in internal_labels(depth) {
        for j in 0..2u8 {
            let child = label.child(j);
            let lo = child.block_start(depth);
            let block = lo..lo + child.block_len(depth);
            let expected =
                common::ordered_tuple_count(g, &candidates, chosen, block, k - chosen.len());
            let got = count_ordered_sets(&state, &trees, label, j, k);
            assert_eq!(
                got,
                expected.into(),
                "graph {:?}, chosen {chosen:?}, k {k}, node {label}, j {j}",
                g.edges()
            );
        }
    }
}

fn bits_to_graph(n: usize, mask: u64) -> BipartiteGraph {
    let edges: Vec<_> = (0..n * n)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i / n, i % n))
        .collect();
    BipartiteGraph::from_edges(n, n, &edges).unwrap()
}

#[test]
fn all_4x4_graphs_first_stage() {
    for mask in 0u64..1 << 16 {
        let g = bits_to_graph(4, mask);
        for k in 1..=4 {
            check_stage(&g, &[], k);
        }
    }
}

#[test]
fn all_4x4_graphs_second_stage() {
    for mask in (0u64..1 << 16).step_by(7) {
        let g = bits_to_graph(4, mask);
        for y in 0..4 {
            for k in 2..=4 {
                check_stage(&g, &[y], k);
            }
        }
    }
}

#[test]
fn sampled_8x8_graphs() {
    for seed in 0..200u64 {
        let p = [0.3, 0.6, 0.9][seed as usize % 3];
        let g = generate(&GenSpec::new(8, p, seed).unwrap());
        for k in 1..=4 {
            check_stage(&g, &[], k);
        }
        check_stage(&g, &[(seed % 8) as usize], 3);
        check_stage(&g, &[(seed % 8) as usize, ((seed + 3) % 8) as usize], 4);
    }
}

#[test]
fn tree_counters_equal_block_degrees() {
    for (n_u, n_w, seed) in [(4, 4, 1u64), (8, 8, 2), (5, 7, 3), (16, 13, 4), (3, 33, 5)] {
        let edges: Vec<_> = {
            let g = generate(&GenSpec::new(n_u.max(n_w), 0.6, seed).unwrap());
            g.edges()
                .into_iter()
                .filter(|&(u, w)| u < n_u && w < n_w)
                .collect()
        };
        let g = BipartiteGraph::from_edges(n_u, n_w, &edges).unwrap();
        let depth = tree_depth(n_w);
        let trees = build_trees(&g);
        for (u, tree) in trees.iter().enumerate() {
            for label in all_labels(depth) {
                let lo = label.block_start(depth);
                let expected = (lo..lo + label.block_len(depth))
                    .filter(|&w| w < n_w && g.contains(u, w))
                    .count();
                assert_eq!(tree.counter(label), expected as i64, "u{u} node {label}");
            }
        }
    }
}
