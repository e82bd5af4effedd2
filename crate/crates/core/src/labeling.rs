//! Edge labelings, induced vertex sums, and local antimagic verification.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelingError {
    #[error("labeling has {got} labels but the graph has {expected} edges")]
    SizeMismatch { got: usize, expected: usize },
    #[error("labels are not a bijection onto 1..={q}: {reason}")]
    NotBijective { q: usize, reason: String },
    #[error("labeling was built for a different host graph")]
    HostMismatch,
    #[error("vertex sum overflow")]
    Overflow,
}

/// A bijection from the host's edges onto `1..=q`, stored in the host's
/// canonical edge order. The host's structural fingerprint is kept so a
/// labeling applied to the wrong graph is rejected instead of silently
/// producing garbage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeling {
    labels: Vec<u64>,
    host: u64,
}

impl EdgeLabeling {
    pub fn new(g: &Graph, labels: Vec<u64>) -> Result<Self, LabelingError> {
        let q = g.size();
        if labels.len() != q {
            return Err(LabelingError::SizeMismatch { got: labels.len(), expected: q });
        }
        let mut seen = vec![false; q + 1];
        for &l in &labels {
            if l < 1 || l as usize > q {
                return Err(LabelingError::NotBijective {
                    q,
                    reason: format!("label {l} out of range"),
                });
            }
            if seen[l as usize] {
                return Err(LabelingError::NotBijective { q, reason: format!("label {l} repeated") });
            }
            seen[l as usize] = true;
        }
        Ok(EdgeLabeling { labels, host: g.fingerprint() })
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label_of(&self, g: &Graph, u: usize, v: usize) -> Option<u64> {
        g.edge_index(u, v).map(|i| self.labels[i])
    }

    pub fn matches_host(&self, g: &Graph) -> bool {
        self.host == g.fingerprint()
    }

    fn check_host(&self, g: &Graph) -> Result<(), LabelingError> {
        if self.matches_host(g) {
            Ok(())
        } else {
            Err(LabelingError::HostMismatch)
        }
    }
}

/// The vertex coloring induced by an edge labeling: each vertex is colored by
/// the sum of its incident labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedColoring {
    /// `sums[v - 1]` is the induced sum at vertex `v`.
    pub sums: Vec<u64>,
    /// The distinct sums, ascending.
    pub colors: BTreeSet<u64>,
    pub is_local_antimagic: bool,
}

impl InducedColoring {
    pub fn sum(&self, v: usize) -> u64 {
        self.sums[v - 1]
    }

    pub fn color_count(&self) -> usize {
        self.colors.len()
    }
}

/// Compute induced sums, the color set, and the local antimagic verdict.
pub fn induced(g: &Graph, f: &EdgeLabeling) -> Result<InducedColoring, LabelingError> {
    f.check_host(g)?;
    let mut sums = vec![0u64; g.order()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let l = f.labels[i];
        sums[u - 1] = sums[u - 1].checked_add(l).ok_or(LabelingError::Overflow)?;
        sums[v - 1] = sums[v - 1].checked_add(l).ok_or(LabelingError::Overflow)?;
    }
    let is_local_antimagic =
        g.edges().iter().all(|&(u, v)| sums[u - 1] != sums[v - 1]);
    let colors = sums.iter().copied().collect();
    Ok(InducedColoring { sums, colors, is_local_antimagic })
}

/// The complement labeling `g(e) = q + 1 - f(e)`. On an r-regular host the
/// induced sums satisfy `g+(v) = r(q+1) - f+(v)` and the color count is
/// preserved.
pub fn complement(g: &Graph, f: &EdgeLabeling) -> Result<EdgeLabeling, LabelingError> {
    f.check_host(g)?;
    let q = g.size() as u64;
    let labels = f.labels.iter().map(|&l| q + 1 - l).collect();
    EdgeLabeling::new(g, labels)
}

/// Vertices grouped by induced sum, keyed by the sum value.
pub fn color_classes(ic: &InducedColoring) -> BTreeMap<u64, Vec<usize>> {
    let mut classes: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, &s) in ic.sums.iter().enumerate() {
        classes.entry(s).or_default().push(i + 1);
    }
    classes
}

/// Stable JSON export of a labeling together with its verification.
#[derive(Debug, Serialize)]
pub struct LabelingExport {
    pub order: usize,
    pub size: usize,
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<u64>,
    pub sums: Vec<u64>,
    pub colors: Vec<u64>,
    pub is_local_antimagic: bool,
}

pub fn export(g: &Graph, f: &EdgeLabeling) -> Result<LabelingExport, LabelingError> {
    let ic = induced(g, f)?;
    Ok(LabelingExport {
        order: g.order(),
        size: g.size(),
        edges: g.edges().to_vec(),
        labels: f.labels().to_vec(),
        sums: ic.sums.clone(),
        colors: ic.colors.iter().copied().collect(),
        is_local_antimagic: ic.is_local_antimagic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;

    fn labeling_on(g: &Graph, pairs: &[((usize, usize), u64)]) -> EdgeLabeling {
        let mut labels = vec![0u64; g.size()];
        for &((u, v), l) in pairs {
            labels[g.edge_index(u, v).unwrap()] = l;
        }
        EdgeLabeling::new(g, labels).unwrap()
    }

    #[test]
    fn triangle_sums() {
        let g = graph::cycle(3).unwrap();
        let f = labeling_on(&g, &[((1, 2), 1), ((2, 3), 2), ((3, 1), 3)]);
        let ic = induced(&g, &f).unwrap();
        assert_eq!(ic.sums, vec![4, 3, 5]);
        assert_eq!(ic.color_count(), 3);
        assert!(ic.is_local_antimagic);
    }

    #[test]
    fn triangle_complement_is_reversal() {
        let g = graph::cycle(3).unwrap();
        let f = labeling_on(&g, &[((1, 2), 1), ((2, 3), 2), ((3, 1), 3)]);
        let c = complement(&g, &f).unwrap();
        assert_eq!(c.label_of(&g, 1, 2), Some(3));
        assert_eq!(c.label_of(&g, 2, 3), Some(2));
        assert_eq!(c.label_of(&g, 3, 1), Some(1));
        assert_eq!(induced(&g, &c).unwrap().color_count(), 3);
    }

    #[test]
    fn rejects_non_bijection_and_wrong_host() {
        let g = graph::cycle(3).unwrap();
        assert!(matches!(
            EdgeLabeling::new(&g, vec![1, 2, 2]),
            Err(LabelingError::NotBijective { .. })
        ));
        assert!(matches!(
            EdgeLabeling::new(&g, vec![1, 2]),
            Err(LabelingError::SizeMismatch { .. })
        ));
        let f = labeling_on(&g, &[((1, 2), 1), ((2, 3), 2), ((3, 1), 3)]);
        let other = graph::path(3).unwrap();
        assert_eq!(induced(&other, &f).unwrap_err(), LabelingError::HostMismatch);
    }

    #[test]
    fn color_classes_group_by_sum() {
        let g = graph::cycle(4).unwrap();
        let f = labeling_on(&g, &[((1, 2), 1), ((2, 3), 4), ((3, 4), 2), ((4, 1), 3)]);
        let ic = induced(&g, &f).unwrap();
        let classes = color_classes(&ic);
        let total: usize = classes.values().map(|c| c.len()).sum();
        assert_eq!(total, 4);
        for (sum, members) in classes {
            for &v in &members {
                assert_eq!(ic.sum(v), sum);
            }
        }
    }

    #[test]
    fn broken_labeling_has_dependent_class() {
        // Swapping two labels of a verified labeling can break independence of
        // a class; re-verification must catch it.
        let g = graph::cycle(4).unwrap();
        let good = labeling_on(&g, &[((1, 2), 1), ((2, 3), 4), ((3, 4), 2), ((4, 1), 3)]);
        assert!(induced(&g, &good).unwrap().is_local_antimagic);
        let bad = labeling_on(&g, &[((1, 2), 4), ((2, 3), 1), ((3, 4), 2), ((4, 1), 3)]);
        let ic = induced(&g, &bad).unwrap();
        assert!(!ic.is_local_antimagic);
        let classes = color_classes(&ic);
        let dependent = classes.values().any(|members| {
            members
                .iter()
                .any(|&u| members.iter().any(|&v| v != u && g.has_edge(u, v)))
        });
        assert!(dependent);
    }

    #[test]
    fn export_field_order_is_stable() {
        let g = graph::cycle(3).unwrap();
        let f = labeling_on(&g, &[((1, 2), 1), ((2, 3), 2), ((3, 1), 3)]);
        let json = serde_json::to_string(&export(&g, &f).unwrap()).unwrap();
        let order = ["\"order\"", "\"size\"", "\"edges\"", "\"labels\"", "\"sums\"", "\"colors\"", "\"is_local_antimagic\""];
        let mut last = 0;
        for key in order {
            let at = json.find(key).unwrap();
            assert!(at > last || last == 0);
            last = at;
        }
    }
}
