//! Named small graphs referenced by the labeling tables and the order-<=8
//! classification.
//!
//! Numbering conventions (all vertices `1..=p`):
//! * `Q` (octahedron): K6 minus the perfect matching (1,4), (2,5), (3,6).
//! * `H1`, `H2`, `H3` (cubic, order 8): the ring `1-2-...-8-1` plus chords,
//!   `H1`: (1,7), (2,8), (3,5), (4,6); `H2`: (1,5), (2,4), (3,7), (6,8);
//!   `H3`: (1,5), (2,8), (3,6), (4,7). Together with the cube (`prism:4`)
//!   and the Moebius ladder (`mobius:8`) these are the five connected cubic
//!   graphs of order 8 (verified by exhaustive enumeration in the tests).
//! * `B1` = K4,4, `B2` = K4 x K2 (two K4 blocks 1..4 and 5..8 plus the
//!   matching i -- i+4), `B3` = C8(1,2); `B4`, `B5`, `B6` are the remaining
//!   quartic graphs of order 8, realized as the complements of `H1`, `H2`,
//!   `H3` in that order. The complement of `H3` is the unique one with
//!   chromatic number 4, which pins it as `B6`.
//! * `C3C4bar`: complement of the disjoint union C3 + C4, triangle on 1..3
//!   and square 4-5-6-7-4.
//! * `cone53`: the (5,3)-cone C5 v O3, cycle on 1..5, isolated side 6..8.

use crate::graph::{self, Graph, GraphError};

pub const NAMES: [&str; 13] = [
    "Q", "H1", "H2", "H3", "B1", "B2", "B3", "B4", "B5", "B6", "C3C4bar", "cone53",
    "M8",
];

pub fn by_name(id: &str) -> Result<Graph, GraphError> {
    match id {
        "Q" => octahedron(),
        "H1" => h1(),
        "H2" => h2(),
        "H3" => h3(),
        "B1" => Ok(graph::complete_bipartite(4, 4)?.with_name("B1")),
        "B2" => b2(),
        "B3" => Ok(graph::circulant(8, &[1, 2])?.with_name("B3")),
        "B4" => Ok(h1()?.complement().with_name("B4")),
        "B5" => Ok(h2()?.complement().with_name("B5")),
        "B6" => Ok(h3()?.complement().with_name("B6")),
        "C3C4bar" => c3c4bar(),
        "cone53" => cone53(),
        "M8" => graph::mobius(8),
        _ => Err(GraphError::UnknownName(id.to_string())),
    }
}

pub fn octahedron() -> Result<Graph, GraphError> {
    let edges = (1..=6usize)
        .flat_map(|u| ((u + 1)..=6).map(move |v| (u, v)))
        .filter(|&(u, v)| !matches!((u, v), (1, 4) | (2, 5) | (3, 6)));
    Graph::new(6, edges, Some("Q".into()))
}

fn ring8_plus(chords: [(usize, usize); 4], name: &str) -> Result<Graph, GraphError> {
    let ring = (1..=8usize).map(|i| (i, i % 8 + 1));
    Graph::new(8, ring.chain(chords), Some(name.into()))
}

pub fn h1() -> Result<Graph, GraphError> {
    ring8_plus([(1, 7), (2, 8), (3, 5), (4, 6)], "H1")
}

pub fn h2() -> Result<Graph, GraphError> {
    ring8_plus([(1, 5), (2, 4), (3, 7), (6, 8)], "H2")
}

pub fn h3() -> Result<Graph, GraphError> {
    ring8_plus([(1, 5), (2, 8), (3, 6), (4, 7)], "H3")
}

fn b2() -> Result<Graph, GraphError> {
    let k4a = (1..=4usize).flat_map(|u| ((u + 1)..=4).map(move |v| (u, v)));
    let k4b = (5..=8usize).flat_map(|u| ((u + 1)..=8).map(move |v| (u, v)));
    let matching = (1..=4usize).map(|i| (i, i + 4));
    Graph::new(8, k4a.chain(k4b).chain(matching), Some("B2".into()))
}

fn c3c4bar() -> Result<Graph, GraphError> {
    let triangle = graph::cycle(3)?;
    let square_shifted: Vec<(usize, usize)> =
        graph::cycle(4)?.edges().iter().map(|&(u, v)| (u + 3, v + 3)).collect();
    let union = Graph::new(7, triangle.edges().iter().copied().chain(square_shifted), None)?;
    Ok(union.complement().with_name("C3C4bar"))
}

fn cone53() -> Result<Graph, GraphError> {
    Ok(graph::join(&graph::cycle(5)?, &graph::empty(3)?).with_name("cone53"))
}

/// The cube with one extra edge across the bipartition (unique up to
/// isomorphism): `prism:4` plus the antipodal pair (1, 7).
pub fn cube_plus_e() -> Result<Graph, GraphError> {
    let cube = graph::prism(4)?;
    let mut edges: Vec<(usize, usize)> = cube.edges().to_vec();
    edges.push((1, 7));
    Graph::new(8, edges, Some("C4xP2+e".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degree_ok(g: &Graph, r: usize) {
        assert_eq!(g.regularity(), Some(r), "{g} should be {r}-regular");
    }

    #[test]
    fn catalog_orders_and_regularity() {
        degree_ok(&by_name("Q").unwrap(), 4);
        for id in ["H1", "H2", "H3", "M8"] {
            let g = by_name(id).unwrap();
            assert_eq!(g.order(), 8);
            degree_ok(&g, 3);
            assert!(g.is_connected());
        }
        for id in ["B1", "B2", "B3", "B4", "B5", "B6"] {
            let g = by_name(id).unwrap();
            assert_eq!(g.order(), 8);
            degree_ok(&g, 4);
            assert!(g.is_connected());
        }
        let c = by_name("C3C4bar").unwrap();
        assert_eq!((c.order(), c.size()), (7, 14));
        degree_ok(&c, 4);
        let cone = by_name("cone53").unwrap();
        assert_eq!((cone.order(), cone.size()), (8, 20));
        degree_ok(&cone, 5);
    }

    #[test]
    fn cube_plus_e_is_13_edges_across_partition() {
        let g = cube_plus_e().unwrap();
        assert_eq!(g.size(), 13);
        let (a, b) = graph::prism(4).unwrap().bipartition().unwrap();
        let one_side = a.contains(&1) && a.contains(&7) || b.contains(&1) && b.contains(&7);
        assert!(!one_side, "extra edge must join the two partite sets");
    }

    fn triangle_count(g: &Graph) -> usize {
        let mut n = 0;
        for u in 1..=g.order() {
            for &v in g.neighbors(u).iter().filter(|&&v| v > u) {
                for &w in g.neighbors(v).iter().filter(|&&w| w > v) {
                    if g.has_edge(u, w) {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    #[test]
    fn cubic8_family_signatures() {
        // Triangle counts and bipartiteness separate the five cubic graphs of
        // order 8 pairwise.
        let cube = graph::prism(4).unwrap();
        assert_eq!(triangle_count(&cube), 0);
        assert!(cube.bipartition().is_some());
        let m8 = graph::mobius(8).unwrap();
        assert_eq!(triangle_count(&m8), 0);
        assert!(m8.bipartition().is_none());
        assert_eq!(triangle_count(&h1().unwrap()), 4);
        assert_eq!(triangle_count(&h2().unwrap()), 2);
        assert_eq!(triangle_count(&h3().unwrap()), 1);
    }

    /// Exhaustively enumerate the labeled connected cubic graphs on 8 vertices
    /// and check each is isomorphic to exactly one of the five catalog graphs.
    #[test]
    fn cubic8_classification_is_complete() {
        let reps = [
            graph::prism(4).unwrap(),
            graph::mobius(8).unwrap(),
            h1().unwrap(),
            h2().unwrap(),
            h3().unwrap(),
        ];
        let mut hits = [0usize; 5];
        let all_pairs: Vec<(usize, usize)> =
            (1..=8).flat_map(|u| ((u + 1)..=8).map(move |v| (u, v))).collect();
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        let mut deg = [0usize; 9];
        enumerate(&all_pairs, 0, &mut chosen, &mut deg, &mut |edges| {
            let g = Graph::new(8, edges.iter().copied(), None).unwrap();
            if !g.is_connected() {
                return;
            }
            let mut matched = 0;
            for (i, r) in reps.iter().enumerate() {
                if isomorphic(&g, r) {
                    hits[i] += 1;
                    matched += 1;
                }
            }
            assert_eq!(matched, 1, "cubic graph matched {matched} catalog reps");
        });
        for (i, h) in hits.iter().enumerate() {
            assert!(*h > 0, "catalog rep {i} never appeared");
        }
    }

    fn enumerate(
        pairs: &[(usize, usize)],
        idx: usize,
        chosen: &mut Vec<(usize, usize)>,
        deg: &mut [usize; 9],
        f: &mut impl FnMut(&[(usize, usize)]),
    ) {
        if chosen.len() == 12 {
            if deg[1..=8].iter().all(|&d| d == 3) {
                f(chosen);
            }
            return;
        }
        if idx == pairs.len() {
            return;
        }
        // Prune: every vertex whose remaining candidate edges are exhausted
        // must already have degree 3.
        let (u, v) = pairs[idx];
        // Vertices smaller than u have no further candidate edges.
        if deg[..u].iter().skip(1).any(|&d| d != 3) {
            return;
        }
        if deg[u] < 3 && deg[v] < 3 {
            chosen.push((u, v));
            deg[u] += 1;
            deg[v] += 1;
            enumerate(pairs, idx + 1, chosen, deg, f);
            deg[u] -= 1;
            deg[v] -= 1;
            chosen.pop();
        }
        enumerate(pairs, idx + 1, chosen, deg, f);
    }

    fn isomorphic(a: &Graph, b: &Graph) -> bool {
        if a.order() != b.order() || a.size() != b.size() {
            return false;
        }
        let n = a.order();
        let mut perm = vec![0usize; n + 1];
        let mut used = vec![false; n + 1];
        fn extend(
            a: &Graph,
            b: &Graph,
            v: usize,
            perm: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            let n = a.order();
            if v > n {
                return true;
            }
            for img in 1..=n {
                if used[img] || a.degree(v) != b.degree(img) {
                    continue;
                }
                let ok = (1..v).all(|w| a.has_edge(v, w) == b.has_edge(img, perm[w]));
                if ok {
                    perm[v] = img;
                    used[img] = true;
                    if extend(a, b, v + 1, perm, used) {
                        return true;
                    }
                    used[img] = false;
                }
            }
            false
        }
        extend(a, b, 1, &mut perm, &mut used)
    }

    #[test]
    fn quartic8_are_pairwise_distinct() {
        let bs: Vec<Graph> = (1..=6).map(|i| by_name(&format!("B{i}")).unwrap()).collect();
        for i in 0..6 {
            for j in (i + 1)..6 {
                assert!(!isomorphic(&bs[i], &bs[j]), "B{} iso B{}", i + 1, j + 1);
            }
        }
        // B3 is the complement of the Moebius ladder.
        assert!(isomorphic(&bs[2], &graph::mobius(8).unwrap().complement()));
        // B1 is the complement of the disconnected cubic graph K4 + K4,
        // equivalently K4,4.
        assert_eq!(bs[0].size(), 16);
        assert!(bs[0].bipartition().is_some());
    }
}
