//! Plain-text formats.
//!
//! Bipartite graph:
//! ```text
//! n_u n_w m
//! i j            (m lines, 0-based, written in ascending (i, j) order)
//! ```
//! Compressed graph:
//! ```text
//! n_u n_w n_z m_star
//! D i j          residual edge u_i–w_j
//! L i q          star edge u_i–z_q
//! R q j          star edge z_q–w_j
//! ```
//! `D` records come first, then each clique in ascending `q` as its `L`
//! records followed by its `R` records in stored order.
//!
//! General graph:
//! ```text
//! n m d|u
//! a b            (m lines)
//! ```
//! Blank lines are ignored on read.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, ParseError, Result, Side};
use crate::graph::{BipartiteGraph, CliqueRecord, CompressedGraph};
use crate::transform::{GeneralGraph, Orientation};

/// Non-blank lines with their 1-based line numbers.
fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_usize_fields<const N: usize>(
    line: usize,
    s: &str,
    header: bool,
) -> Result<[usize; N], ParseError> {
    let fields: Vec<&str> = s.split_whitespace().collect();
    let fail = |reason: String| {
        if header {
            ParseError::MalformedHeader { line, reason }
        } else {
            ParseError::MalformedRecord { line, reason }
        }
    };
    if fields.len() != N {
        return Err(fail(format!("expected {N} fields, found {}", fields.len())));
    }
    let mut out = [0usize; N];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f
            .parse()
            .map_err(|_| fail(format!("'{f}' is not a non-negative integer")))?;
    }
    Ok(out)
}

fn check_id(line: usize, side: Side, id: usize, bound: usize) -> Result<(), ParseError> {
    if id >= bound {
        return Err(ParseError::IdOutOfRange {
            line,
            side,
            id,
            bound,
        });
    }
    Ok(())
}

fn missing_header() -> ParseError {
    ParseError::MalformedHeader {
        line: 1,
        reason: "file is empty".into(),
    }
}

pub fn format_graph(g: &BipartiteGraph) -> String {
    let mut out = format!("{} {} {}\n", g.n_u(), g.n_w(), g.m());
    for (u, w) in g.edges() {
        let _ = writeln!(out, "{u} {w}");
    }
    out
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph, ParseError> {
    let mut lines = numbered_lines(text);
    let (hl, header) = lines.next().ok_or_else(missing_header)?;
    let [n_u, n_w, declared] = parse_usize_fields::<3>(hl, header, true)?;
    let mut g = BipartiteGraph::empty(n_u, n_w);
    let mut found = 0usize;
    let mut last = hl;
    for (ln, l) in lines {
        let [u, w] = parse_usize_fields::<2>(ln, l, false)?;
        check_id(ln, Side::U, u, n_u)?;
        check_id(ln, Side::W, w, n_w)?;
        if !g.insert(u, w) {
            return Err(ParseError::DuplicateEdge {
                line: ln,
                a: u,
                b: w,
            });
        }
        found += 1;
        last = ln;
    }
    if found != declared {
        return Err(ParseError::EdgeCountMismatch {
            line: last,
            declared,
            found,
        });
    }
    Ok(g)
}

pub fn format_compressed(c: &CompressedGraph) -> String {
    let mut out = format!("{} {} {} {}\n", c.n_u(), c.n_w(), c.n_z(), c.m_star());
    for (u, w) in c.residual().edges() {
        let _ = writeln!(out, "D {u} {w}");
    }
    for (q, clique) in c.cliques().iter().enumerate() {
        for &u in &clique.left_u {
            let _ = writeln!(out, "L {u} {q}");
        }
        for &w in &clique.right_k {
            let _ = writeln!(out, "R {q} {w}");
        }
    }
    out
}

pub fn parse_compressed(text: &str) -> Result<CompressedGraph, ParseError> {
    let mut lines = numbered_lines(text);
    let (hl, header) = lines.next().ok_or_else(missing_header)?;
    let [n_u, n_w, n_z, declared] = parse_usize_fields::<4>(hl, header, true)?;
    let mut residual = BipartiteGraph::empty(n_u, n_w);
    let mut left: Vec<Vec<usize>> = vec![Vec::new(); n_z];
    let mut right: Vec<Vec<usize>> = vec![Vec::new(); n_z];
    let mut found = 0usize;
    let mut last = hl;
    for (ln, l) in lines {
        let (tag, rest) = l.split_at(1);
        if !rest.starts_with(char::is_whitespace) {
            return Err(ParseError::MalformedRecord {
                line: ln,
                reason: format!("expected a D, L or R record, found '{l}'"),
            });
        }
        let [a, b] = parse_usize_fields::<2>(ln, rest, false)?;
        match tag {
            "D" => {
                check_id(ln, Side::U, a, n_u)?;
                check_id(ln, Side::W, b, n_w)?;
                if !residual.insert(a, b) {
                    return Err(ParseError::DuplicateEdge { line: ln, a, b });
                }
            }
            "L" => {
                check_id(ln, Side::U, a, n_u)?;
                check_id(ln, Side::Z, b, n_z)?;
                if left[b].contains(&a) {
                    return Err(ParseError::DuplicateEdge { line: ln, a, b });
                }
                left[b].push(a);
            }
            "R" => {
                check_id(ln, Side::Z, a, n_z)?;
                check_id(ln, Side::W, b, n_w)?;
                if right[a].contains(&b) {
                    return Err(ParseError::DuplicateEdge { line: ln, a, b });
                }
                right[a].push(b);
            }
            other => {
                return Err(ParseError::MalformedRecord {
                    line: ln,
                    reason: format!("unknown record tag '{other}'"),
                })
            }
        }
        found += 1;
        last = ln;
    }
    if found != declared {
        return Err(ParseError::EdgeCountMismatch {
            line: last,
            declared,
            found,
        });
    }
    let mut cliques = Vec::with_capacity(n_z);
    for (q, (l, r)) in left.into_iter().zip(right).enumerate() {
        if l.is_empty() || r.is_empty() {
            return Err(ParseError::Structure {
                line: last,
                reason: format!("z{q} needs at least one L and one R record"),
            });
        }
        cliques.push(CliqueRecord::new(q, r, l));
    }
    CompressedGraph::assemble(residual, cliques).map_err(|e| ParseError::Structure {
        line: last,
        reason: e.to_string(),
    })
}

pub fn format_general(h: &GeneralGraph, orientation: Orientation) -> String {
    let flag = match orientation {
        Orientation::Directed => "d",
        Orientation::Undirected => "u",
    };
    let mut out = format!("{} {} {flag}\n", h.n, h.edges.len());
    for &(a, b) in &h.edges {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

pub fn parse_general(text: &str) -> Result<(GeneralGraph, Orientation), ParseError> {
    let mut lines = numbered_lines(text);
    let (hl, header) = lines.next().ok_or_else(missing_header)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad_header = |reason: String| ParseError::MalformedHeader { line: hl, reason };
    if fields.len() != 3 {
        return Err(bad_header(format!(
            "expected 3 fields, found {}",
            fields.len()
        )));
    }
    let [n, declared] = parse_usize_fields::<2>(hl, &fields[..2].join(" "), true)?;
    let orientation = match fields[2] {
        "d" => Orientation::Directed,
        "u" => Orientation::Undirected,
        other => {
            return Err(bad_header(format!(
                "orientation must be d or u, found '{other}'"
            )))
        }
    };
    let mut edges = Vec::with_capacity(declared);
    let mut last = hl;
    for (ln, l) in lines {
        let [a, b] = parse_usize_fields::<2>(ln, l, false)?;
        check_id(ln, Side::U, a, n)?;
        check_id(ln, Side::W, b, n)?;
        edges.push((a, b));
        last = ln;
    }
    if edges.len() != declared {
        return Err(ParseError::EdgeCountMismatch {
            line: last,
            declared,
            found: edges.len(),
        });
    }
    Ok((GeneralGraph { n, edges }, orientation))
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<BipartiteGraph> {
    Ok(parse_graph(&fs::read_to_string(path)?)?)
}

pub fn write_graph(path: impl AsRef<Path>, g: &BipartiteGraph) -> Result<()> {
    fs::write(path, format_graph(g)).map_err(Error::from)
}

pub fn read_compressed(path: impl AsRef<Path>) -> Result<CompressedGraph> {
    Ok(parse_compressed(&fs::read_to_string(path)?)?)
}

pub fn write_compressed(path: impl AsRef<Path>, c: &CompressedGraph) -> Result<()> {
    fs::write(path, format_compressed(c)).map_err(Error::from)
}

pub fn read_general(path: impl AsRef<Path>) -> Result<(GeneralGraph, Orientation)> {
    Ok(parse_general(&fs::read_to_string(path)?)?)
}

pub fn write_general(
    path: impl AsRef<Path>,
    h: &GeneralGraph,
    orientation: Orientation,
) -> Result<()> {
    fs::write(path, format_general(h, orientation)).map_err(Error::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpgc::{cpgc_compress, CpgcParams};
    use crate::fixtures;

    #[test]
    fn graph_round_trip() {
        let g = fixtures::worked_example();
        let text = format_graph(&g);
        assert!(text.starts_with("8 8 54\n0 0\n0 1\n"));
        let back = parse_graph(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(format_graph(&back), text);
    }

    #[test]
    fn graph_read_accepts_any_order() {
        let g = parse_graph("2 3 3\n1 2\n0 0\n\n1 0\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 0), (1, 0), (1, 2)]);
    }

    #[test]
    fn graph_errors_are_distinct_and_located() {
        assert_eq!(
            parse_graph("2 2 1\n0 0\n1 1\n").unwrap_err(),
            ParseError::EdgeCountMismatch {
                line: 3,
                declared: 1,
                found: 2
            }
        );
        assert!(matches!(
            parse_graph("2 2\n").unwrap_err(),
            ParseError::MalformedHeader { line: 1, .. }
        ));
        assert!(matches!(
            parse_graph("2 x 1\n").unwrap_err(),
            ParseError::MalformedHeader { line: 1, .. }
        ));
        assert!(matches!(
            parse_graph("2 2 1\n0 0 0\n").unwrap_err(),
            ParseError::MalformedRecord { line: 2, .. }
        ));
        assert_eq!(
            parse_graph("2 2 2\n0 0\n0 2\n").unwrap_err(),
            ParseError::IdOutOfRange {
                line: 3,
                side: Side::W,
                id: 2,
                bound: 2
            }
        );
        assert!(matches!(
            parse_graph("2 2 2\n0 0\n0 0\n").unwrap_err(),
            ParseError::DuplicateEdge { line: 3, .. }
        ));
        assert!(matches!(
            parse_graph("").unwrap_err(),
            ParseError::MalformedHeader { .. }
        ));
    }

    #[test]
    fn compressed_round_trip() {
        let g = fixtures::worked_example();
        let c = cpgc_compress(&g, CpgcParams::new(1.0).unwrap())
            .unwrap()
            .graph;
        let text = format_compressed(&c);
        assert!(text.starts_with("8 8 2 44\n"));
        assert_eq!(text.lines().count(), 45);
        let back = parse_compressed(&text).unwrap();
        assert_eq!(back.m_star(), 44);
        assert_eq!(back.cliques(), c.cliques());
        assert_eq!(back, c);
    }

    #[test]
    fn compressed_errors() {
        assert!(matches!(
            parse_compressed("2 2 1 2\nL 0 0\n").unwrap_err(),
            ParseError::EdgeCountMismatch { .. }
        ));
        assert!(matches!(
            parse_compressed("2 2 1 2\nL 0 0\nL 1 0\n").unwrap_err(),
            ParseError::Structure { .. }
        ));
        assert!(matches!(
            parse_compressed("2 2 1 2\nL 0 1\nR 0 0\n").unwrap_err(),
            ParseError::IdOutOfRange {
                line: 2,
                side: Side::Z,
                ..
            }
        ));
        assert!(matches!(
            parse_compressed("2 2 0 1\nX 0 0\n").unwrap_err(),
            ParseError::MalformedRecord { line: 2, .. }
        ));
        // Residual edge also covered by the clique.
        assert!(matches!(
            parse_compressed("2 2 1 3\nD 0 0\nL 0 0\nR 0 0\n").unwrap_err(),
            ParseError::Structure { .. }
        ));
    }

    #[test]
    fn general_round_trip() {
        let h = GeneralGraph {
            n: 3,
            edges: vec![(0, 1), (1, 2), (2, 0), (1, 1)],
        };
        let text = format_general(&h, Orientation::Directed);
        assert_eq!(text, "3 4 d\n0 1\n1 2\n2 0\n1 1\n");
        assert_eq!(
            parse_general(&text).unwrap(),
            (h.clone(), Orientation::Directed)
        );
        let (_, o) = parse_general("3 0 u\n").unwrap();
        assert_eq!(o, Orientation::Undirected);
        assert!(matches!(
            parse_general("3 0 x\n").unwrap_err(),
            ParseError::MalformedHeader { .. }
        ));
        assert!(matches!(
            parse_general("3 1 d\n0 3\n").unwrap_err(),
            ParseError::IdOutOfRange { line: 2, .. }
        ));
    }

    mod props {
        use super::*;
        use crate::genio::{generate, GenSpec};
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn serialization_is_identity(n in 1usize..40, p in 0.0f64..=1.0, seed in any::<u64>(), delta in 0.3f64..=1.0) {
                let g = generate(&GenSpec::new(n, p, seed).unwrap());
                prop_assert_eq!(&parse_graph(&format_graph(&g)).unwrap(), &g);
                let c = cpgc_compress(&g, CpgcParams::new(delta).unwrap()).unwrap().graph;
                let text = format_compressed(&c);
                let back = parse_compressed(&text).unwrap();
                prop_assert_eq!(format_compressed(&back), text);
                prop_assert_eq!(back, c);
            }
        }
    }
}
