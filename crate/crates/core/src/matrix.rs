//! The labeling-matrix text format.
//!
//! A symmetric p x p grid, whitespace-separated, one row per line. The
//! `(u,v)` entry is the label of edge `uv` and `*` marks a non-edge (and the
//! whole diagonal). An optional ` | <rowsum>` column may follow each row; it
//! is checked when present and reproduced by the renderer on request, so the
//! published matrices paste in nearly verbatim.

use thiserror::Error;

use crate::graph::Graph;
use crate::labeling::{induced, EdgeLabeling};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("empty matrix")]
    Empty,
    #[error("row {row} has {got} entries, expected {expected}")]
    Jagged { row: usize, got: usize, expected: usize },
    #[error("bad entry `{0}`")]
    BadEntry(String),
    #[error("matrix is not symmetric at ({u}, {v})")]
    Asymmetric { u: usize, v: usize },
    #[error("diagonal entry ({0}, {0}) must be `*`")]
    DiagonalEntry(usize),
    #[error("labels are not a bijection onto 1..={q}: {reason}")]
    BadLabels { q: usize, reason: String },
    #[error("row {row} declares sum {declared} but the entries sum to {actual}")]
    RowSumMismatch { row: usize, declared: u64, actual: u64 },
}

/// Render `(g, f)` as matrix text; `with_row_sums` appends ` | f+(u_i)`.
pub fn render_matrix(g: &Graph, f: &EdgeLabeling, with_row_sums: bool) -> String {
    let p = g.order();
    let mut cells = vec![vec!["*".to_string(); p]; p];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let l = f.labels()[i].to_string();
        cells[u - 1][v - 1] = l.clone();
        cells[v - 1][u - 1] = l;
    }
    let width = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
    let sums = with_row_sums.then(|| induced(g, f).expect("render requires a valid labeling").sums);
    let mut out = String::new();
    for (r, row) in cells.iter().enumerate() {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&line.join(" "));
        if let Some(sums) = &sums {
            out.push_str(&format!(" | {}", sums[r]));
        }
        out.push('\n');
    }
    out
}

/// Parse matrix text back into a graph (vertex `i` = row `i`) and labeling.
pub fn parse_matrix(text: &str) -> Result<(Graph, EdgeLabeling), MatrixError> {
    let mut rows: Vec<Vec<Option<u64>>> = Vec::new();
    let mut declared_sums: Vec<Option<u64>> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (entries_part, sum_part) = match line.split_once('|') {
            Some((a, b)) => (a, Some(b.trim())),
            None => (line, None),
        };
        let mut row = Vec::new();
        for tok in entries_part.split_whitespace() {
            if tok == "*" {
                row.push(None);
            } else {
                let v: u64 = tok.parse().map_err(|_| MatrixError::BadEntry(tok.to_string()))?;
                row.push(Some(v));
            }
        }
        let declared = match sum_part {
            Some(s) => {
                Some(s.parse::<u64>().map_err(|_| MatrixError::BadEntry(s.to_string()))?)
            }
            None => None,
        };
        rows.push(row);
        declared_sums.push(declared);
    }
    let p = rows.len();
    if p == 0 {
        return Err(MatrixError::Empty);
    }
    for (r, row) in rows.iter().enumerate() {
        if row.len() != p {
            return Err(MatrixError::Jagged { row: r + 1, got: row.len(), expected: p });
        }
    }
    for u in 0..p {
        if rows[u][u].is_some() {
            return Err(MatrixError::DiagonalEntry(u + 1));
        }
        for v in (u + 1)..p {
            if rows[u][v] != rows[v][u] {
                return Err(MatrixError::Asymmetric { u: u + 1, v: v + 1 });
            }
        }
    }
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for u in 0..p {
        for v in (u + 1)..p {
            if let Some(l) = rows[u][v] {
                edges.push((u + 1, v + 1));
                labels.push(l);
            }
        }
    }
    let q = edges.len();
    let mut seen = vec![false; q + 1];
    for &l in &labels {
        if l < 1 || l as usize > q {
            return Err(MatrixError::BadLabels { q, reason: format!("label {l} out of range") });
        }
        if seen[l as usize] {
            return Err(MatrixError::BadLabels { q, reason: format!("label {l} repeated") });
        }
        seen[l as usize] = true;
    }
    let g = Graph::new(p, edges, None).expect("parsed matrix edges are valid");
    // Graph::new sorts edges into the same (u < v) lexicographic order that
    // the loop above produced, so labels remain aligned.
    let f = EdgeLabeling::new(&g, labels)
        .map_err(|e| MatrixError::BadLabels { q, reason: e.to_string() })?;
    for (r, declared) in declared_sums.iter().enumerate() {
        if let Some(declared) = declared {
            let actual = induced(&g, &f).expect("host matches").sums[r];
            if actual != *declared {
                return Err(MatrixError::RowSumMismatch {
                    row: r + 1,
                    declared: *declared,
                    actual,
                });
            }
        }
    }
    Ok((g, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;

    #[test]
    fn k2_round_trip() {
        let g = graph::complete(2).unwrap();
        let f = EdgeLabeling::new(&g, vec![1]).unwrap();
        let text = render_matrix(&g, &f, true);
        assert_eq!(text, "* 1 | 1\n1 * | 1\n");
        let (g2, f2) = parse_matrix(&text).unwrap();
        assert_eq!(g2, g);
        assert_eq!(f2.labels(), f.labels());
    }

    #[test]
    fn round_trip_is_identity_on_cycle() {
        let g = graph::cycle(5).unwrap();
        let labels: Vec<u64> = vec![3, 5, 1, 2, 4];
        let f = EdgeLabeling::new(&g, labels.clone()).unwrap();
        let (g2, f2) = parse_matrix(&render_matrix(&g, &f, false)).unwrap();
        assert_eq!(g2.edges(), g.edges());
        assert_eq!(f2.labels(), &labels[..]);
    }

    #[test]
    fn rejects_duplicate_labels() {
        let text = "* 1 2\n1 * 2\n2 2 *\n";
        assert!(matches!(parse_matrix(text), Err(MatrixError::BadLabels { .. })));
    }

    #[test]
    fn rejects_non_contiguous_labels() {
        // Labels {1,2,4} on a triangle (q = 3).
        let text = "* 1 4\n1 * 2\n4 2 *\n";
        assert!(matches!(parse_matrix(text), Err(MatrixError::BadLabels { .. })));
    }

    #[test]
    fn rejects_asymmetry_and_diagonal() {
        assert!(matches!(
            parse_matrix("* 1\n2 *\n"),
            Err(MatrixError::Asymmetric { u: 1, v: 2 })
        ));
        assert!(matches!(
            parse_matrix("1 2\n2 *\n"),
            Err(MatrixError::DiagonalEntry(1))
        ));
    }

    #[test]
    fn checks_declared_row_sums() {
        let ok = "* 1 3 | 4\n1 * 2 | 3\n3 2 * | 5\n";
        parse_matrix(ok).unwrap();
        let bad = "* 1 3 | 5\n1 * 2 | 3\n3 2 * | 5\n";
        assert!(matches!(parse_matrix(bad), Err(MatrixError::RowSumMismatch { row: 1, .. })));
    }
}
