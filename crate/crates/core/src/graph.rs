//! Simple undirected graphs with a fixed, deterministic vertex numbering.
//!
//! Vertices are numbered `1..=order`. Every constructor documents its
//! numbering convention because labeling fixtures index into it.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::catalog;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },
    #[error("invalid circulant distances: {0}")]
    BadCirculant(String),
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("malformed graph spec `{spec}`: {reason}")]
    BadSpec { spec: String, reason: String },
}

/// An immutable simple undirected graph. Edges are stored as `(u, v)` with
/// `u < v`, sorted lexicographically; that order is the canonical edge index
/// used by labelings.
#[derive(Debug, Clone)]
pub struct Graph {
    order: usize,
    edges: Vec<(usize, usize)>,
    name: Option<String>,
    neighbors: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.edges == other.edges
    }
}
impl Eq for Graph {}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{} (p={}, q={})", n, self.order, self.size()),
            None => write!(f, "graph (p={}, q={})", self.order, self.size()),
        }
    }
}

impl Graph {
    pub fn new(
        order: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        name: Option<String>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if u < 1 || v > order {
                return Err(GraphError::VertexOutOfRange(if u < 1 { u } else { v }, order));
            }
            if !set.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut neighbors = vec![Vec::new(); order + 1];
        let mut incident = vec![Vec::new(); order + 1];
        for (i, &(u, v)) in edges.iter().enumerate() {
            neighbors[u].push(v);
            neighbors[v].push(u);
            incident[u].push(i);
            incident[v].push(i);
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }
        Ok(Graph { order, edges, name, neighbors, incident })
    }

    /// Like [`Graph::new`] but deduplicates edges instead of rejecting them.
    /// Used by constructors that generate each edge from several positions
    /// (e.g. circulant distance n/2).
    fn from_edge_set(
        order: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        name: Option<String>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            set.insert((u, v));
        }
        Graph::new(order, set, name)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        1..=self.order
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Indices into [`Graph::edges`] of the edges incident to `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (1..=self.order).map(|v| self.degree(v)).collect()
    }

    /// `Some(r)` when every vertex has degree `r`.
    pub fn regularity(&self) -> Option<usize> {
        let mut degs = (1..=self.order).map(|v| self.degree(v));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.order == 0 {
            return true;
        }
        let mut seen = vec![false; self.order + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.order
    }

    /// Bipartition `(left, right)` with `1` on the left, when one exists.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut side = vec![u8::MAX; self.order + 1];
        for start in 1..=self.order {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        let left = (1..=self.order).filter(|&v| side[v] == 0).collect();
        let right = (1..=self.order).filter(|&v| side[v] == 1).collect();
        Some((left, right))
    }

    /// Complement graph on the same vertex set (name dropped).
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 1..=self.order {
            for v in (u + 1)..=self.order {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.order, edges, None).expect("complement of a valid graph is valid")
    }

    /// A 64-bit structural fingerprint (order + edge set). Labelings carry it
    /// so that a labeling applied to the wrong host is detected.
    pub fn fingerprint(&self) -> u64 {
        // FNV-1a over the canonical edge list.
        let mut h: u64 = 0xcbf29ce484222325;
        let mut mix = |x: u64| {
            h ^= x;
            h = h.wrapping_mul(0x100000001b3);
        };
        mix(self.order as u64);
        for &(u, v) in &self.edges {
            mix(u as u64);
            mix(v as u64);
        }
        h
    }
}

// --- named constructors -----------------------------------------------------

/// Path on `1..=n` with edges `i(i+1)`.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::OrderTooSmall { min: 1, got: n });
    }
    Graph::new(n, (1..n).map(|i| (i, i + 1)), Some(format!("P{n}")))
}

/// Cycle `1-2-...-n-1`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::OrderTooSmall { min: 3, got: n });
    }
    Graph::new(
        n,
        (1..=n).map(|i| (i, i % n + 1)),
        Some(format!("C{n}")),
    )
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::OrderTooSmall { min: 1, got: n });
    }
    let edges = (1..=n).flat_map(|u| ((u + 1)..=n).map(move |v| (u, v)));
    Graph::new(n, edges, Some(format!("K{n}")))
}

/// Complete bipartite graph; left side `1..=m`, right side `m+1..=m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, GraphError> {
    if m < 1 || n < 1 {
        return Err(GraphError::OrderTooSmall { min: 1, got: m.min(n) });
    }
    let edges = (1..=m).flat_map(|u| ((m + 1)..=(m + n)).map(move |v| (u, v)));
    Graph::new(m + n, edges, Some(format!("K{m},{n}")))
}

/// Edgeless graph O_n.
pub fn empty(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::OrderTooSmall { min: 1, got: n });
    }
    Graph::new(n, std::iter::empty(), Some(format!("O{n}")))
}

/// Circulant graph: cycle vertices `1..=n`, plus an edge between every pair
/// at ring distance in `distances`. Distances must be strictly increasing
/// and lie in `[1, n/2]`.
pub fn circulant(n: usize, distances: &[usize]) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::OrderTooSmall { min: 3, got: n });
    }
    if distances.is_empty() {
        return Err(GraphError::BadCirculant("empty distance list".into()));
    }
    for w in distances.windows(2) {
        if w[0] >= w[1] {
            return Err(GraphError::BadCirculant(format!(
                "distances not strictly increasing: {} then {}",
                w[0], w[1]
            )));
        }
    }
    for &d in distances {
        if d < 1 || d > n / 2 {
            return Err(GraphError::BadCirculant(format!(
                "distance {d} outside [1, {}]",
                n / 2
            )));
        }
    }
    let edges = distances.iter().flat_map(|&d| {
        (0..n).map(move |i| (i + 1, (i + d) % n + 1))
    });
    let label = format!(
        "C{n}({})",
        distances.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    );
    Graph::from_edge_set(n, edges, Some(label))
}

/// Prism C_n x P_2: outer cycle `1..=n`, inner cycle `n+1..=2n`, rungs
/// `i -- n+i`.
pub fn prism(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::OrderTooSmall { min: 3, got: n });
    }
    let outer = (1..=n).map(|i| (i, i % n + 1));
    let inner = (1..=n).map(|i| (n + i, n + i % n + 1));
    let rungs = (1..=n).map(|i| (i, n + i));
    Graph::new(2 * n, outer.chain(inner).chain(rungs), Some(format!("C{n}xP2")))
}

/// Moebius ladder M_{2n}: cycle `1..=2n` plus all antipodal chords.
pub fn mobius(order: usize) -> Result<Graph, GraphError> {
    if order < 4 || order % 2 != 0 {
        return Err(GraphError::BadSpec {
            spec: format!("mobius:{order}"),
            reason: "order must be even and at least 4".into(),
        });
    }
    let n = order / 2;
    let ring = (1..=order).map(|i| (i, i % order + 1));
    let chords = (1..=n).map(|i| (i, i + n));
    Graph::from_edge_set(order, ring.chain(chords), Some(format!("M{order}")))
}

/// Join G v H: all of G, all of H shifted by |V(G)|, plus every cross edge.
/// Vertex order is G's vertices followed by H's.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let p1 = g.order();
    let p2 = h.order();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    edges.extend(h.edges().iter().map(|&(u, v)| (u + p1, v + p1)));
    edges.extend((1..=p1).flat_map(|u| ((p1 + 1)..=(p1 + p2)).map(move |v| (u, v))));
    let name = match (g.name(), h.name()) {
        (Some(a), Some(b)) => Some(format!("{a} v {b}")),
        _ => None,
    };
    Graph::new(p1 + p2, edges, name).expect("join of valid graphs is valid")
}

// --- descriptor grammar -----------------------------------------------------

/// Parsed form of the textual graph grammar:
///
/// `cycle:<n>` | `path:<n>` | `complete:<n>` | `bipartite:<m>,<n>` |
/// `empty:<n>` | `circulant:<n>:<d1>,<d2>,...` | `prism:<n>` |
/// `mobius:<2n>` | `name:<catalog-id>` | `join(<spec>,<spec>)`
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphDescriptor {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Bipartite(usize, usize),
    Empty(usize),
    Circulant(usize, Vec<usize>),
    Prism(usize),
    Mobius(usize),
    Named(String),
    Join(Box<GraphDescriptor>, Box<GraphDescriptor>),
}

impl GraphDescriptor {
    pub fn parse(spec: &str) -> Result<Self, GraphError> {
        let mut p = Parser { src: spec, pos: 0 };
        let d = p.parse_spec()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(d)
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        match self {
            GraphDescriptor::Cycle(n) => cycle(*n),
            GraphDescriptor::Path(n) => path(*n),
            GraphDescriptor::Complete(n) => complete(*n),
            GraphDescriptor::Bipartite(m, n) => complete_bipartite(*m, *n),
            GraphDescriptor::Empty(n) => empty(*n),
            GraphDescriptor::Circulant(n, ds) => circulant(*n, ds),
            GraphDescriptor::Prism(n) => prism(*n),
            GraphDescriptor::Mobius(n) => mobius(*n),
            GraphDescriptor::Named(id) => catalog::by_name(id),
            GraphDescriptor::Join(a, b) => Ok(join(&a.build()?, &b.build()?)),
        }
    }
}

impl fmt::Display for GraphDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphDescriptor::Cycle(n) => write!(f, "cycle:{n}"),
            GraphDescriptor::Path(n) => write!(f, "path:{n}"),
            GraphDescriptor::Complete(n) => write!(f, "complete:{n}"),
            GraphDescriptor::Bipartite(m, n) => write!(f, "bipartite:{m},{n}"),
            GraphDescriptor::Empty(n) => write!(f, "empty:{n}"),
            GraphDescriptor::Circulant(n, ds) => {
                let ds: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                write!(f, "circulant:{n}:{}", ds.join(","))
            }
            GraphDescriptor::Prism(n) => write!(f, "prism:{n}"),
            GraphDescriptor::Mobius(n) => write!(f, "mobius:{n}"),
            GraphDescriptor::Named(id) => write!(f, "name:{id}"),
            GraphDescriptor::Join(a, b) => write!(f, "join({a},{b})"),
        }
    }
}

/// Parse a descriptor and build the graph in one step.
pub fn build(spec: &str) -> Result<Graph, GraphError> {
    GraphDescriptor::parse(spec)?.build()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> GraphError {
        GraphError::BadSpec { spec: self.src.to_string(), reason: reason.into() }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn parse_usize(&mut self) -> Result<usize, GraphError> {
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.err(format!("expected integer at offset {}", self.pos)));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| self.err("integer out of range"))
    }

    /// A comma-separated integer list; stops when the next comma is not
    /// followed by a digit (so circulant lists compose inside `join(...)`).
    fn parse_int_list(&mut self) -> Result<Vec<usize>, GraphError> {
        let mut out = vec![self.parse_usize()?];
        loop {
            let rest = self.rest();
            if rest.starts_with(',')
                && rest[1..].starts_with(|c: char| c.is_ascii_digit())
            {
                self.pos += 1;
                out.push(self.parse_usize()?);
            } else {
                return Ok(out);
            }
        }
    }

    fn parse_spec(&mut self) -> Result<GraphDescriptor, GraphError> {
        self.skip_ws();
        if self.eat("join(") {
            let a = self.parse_spec()?;
            self.skip_ws();
            if !self.eat(",") {
                return Err(self.err("expected `,` between join operands"));
            }
            let b = self.parse_spec()?;
            self.skip_ws();
            if !self.eat(")") {
                return Err(self.err("expected `)` closing join"));
            }
            return Ok(GraphDescriptor::Join(Box::new(a), Box::new(b)));
        }
        for (kw, one_arg) in [
            ("cycle:", true),
            ("path:", true),
            ("complete:", true),
            ("empty:", true),
            ("prism:", true),
            ("mobius:", true),
        ] {
            if self.eat(kw) {
                let n = self.parse_usize()?;
                let _ = one_arg;
                return Ok(match kw {
                    "cycle:" => GraphDescriptor::Cycle(n),
                    "path:" => GraphDescriptor::Path(n),
                    "complete:" => GraphDescriptor::Complete(n),
                    "empty:" => GraphDescriptor::Empty(n),
                    "prism:" => GraphDescriptor::Prism(n),
                    _ => GraphDescriptor::Mobius(n),
                });
            }
        }
        if self.eat("bipartite:") {
            let m = self.parse_usize()?;
            if !self.eat(",") {
                return Err(self.err("bipartite expects `m,n`"));
            }
            let n = self.parse_usize()?;
            return Ok(GraphDescriptor::Bipartite(m, n));
        }
        if self.eat("circulant:") {
            let n = self.parse_usize()?;
            if !self.eat(":") {
                return Err(self.err("circulant expects `:d1,d2,...` after the order"));
            }
            let ds = self.parse_int_list()?;
            return Ok(GraphDescriptor::Circulant(n, ds));
        }
        if self.eat("name:") {
            let id: String = self
                .rest()
                .chars()
                .take_while(|c| c.is_ascii_alphanumeric())
                .collect();
            if id.is_empty() {
                return Err(self.err("expected catalog id after `name:`"));
            }
            self.pos += id.len();
            return Ok(GraphDescriptor::Named(id));
        }
        Err(self.err(format!("unrecognized spec at offset {}", self.pos)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_5() {
        let g = build("cycle:5").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.size(), 5);
        assert_eq!(g.regularity(), Some(2));
    }

    #[test]
    fn circulant_8_124() {
        let g = build("circulant:8:1,2,4").unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.size(), 20);
        assert_eq!(g.regularity(), Some(5));
    }

    #[test]
    fn mobius_8_is_cubic() {
        let g = build("mobius:8").unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.size(), 12);
        assert_eq!(g.regularity(), Some(3));
        // Same edge set as the circulant with the antipodal distance.
        assert_eq!(g, build("circulant:8:1,4").unwrap());
    }

    #[test]
    fn join_k1_k1_is_k2() {
        let g = join(&complete(1).unwrap(), &complete(1).unwrap());
        assert_eq!(g, complete(2).unwrap());
    }

    #[test]
    fn join_c5_o3_counts() {
        let g = build("join(cycle:5,empty:3)").unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.size(), 5 + 0 + 15);
        assert_eq!(g.regularity(), Some(5));
    }

    #[test]
    fn join_size_formula_on_catalog_pairs() {
        let specs = ["cycle:4", "path:3", "complete:4", "bipartite:2,3", "empty:2", "prism:3"];
        for a in specs {
            for b in specs {
                let (g, h) = (build(a).unwrap(), build(b).unwrap());
                let j = join(&g, &h);
                assert_eq!(j.size(), g.size() + h.size() + g.order() * h.order());
                assert_eq!(j.order(), g.order() + h.order());
            }
        }
    }

    #[test]
    fn join_regular_parity_rule() {
        // r1 + p2 = r2 + p1 makes the join regular.
        let g = build("cycle:5").unwrap(); // 2-regular, p=5
        let h = build("empty:3").unwrap(); // 0-regular, p=3
        assert_eq!(2 + 3, 0 + 5);
        assert_eq!(join(&g, &h).regularity(), Some(5));
        let h2 = build("cycle:4").unwrap(); // 2-regular, p=4: 2+4 != 2+5
        assert_eq!(join(&g, &h2).regularity(), None);
    }

    #[test]
    fn build_is_deterministic() {
        for spec in ["circulant:8:1,2,4", "name:H2", "join(cycle:5,empty:3)", "prism:4"] {
            let a = build(spec).unwrap();
            let b = build(spec).unwrap();
            assert_eq!(a.edges(), b.edges());
        }
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(build("cycle:").is_err());
        assert!(build("circulant:8").is_err());
        assert!(build("circulant:8:2,1").is_err());
        assert!(build("circulant:8:1,5").is_err()); // distance > n/2
        assert!(build("name:nope").is_err());
        assert!(build("join(cycle:3").is_err());
        assert!(build("cycle:3 extra").is_err());
    }

    #[test]
    fn nested_join_with_circulant_list_parses() {
        let g = build("join(circulant:8:1,2,empty:3)").unwrap();
        assert_eq!(g.order(), 11);
        let d = GraphDescriptor::parse("join(circulant:8:1,2,empty:3)").unwrap();
        assert_eq!(
            d,
            GraphDescriptor::Join(
                Box::new(GraphDescriptor::Circulant(8, vec![1, 2])),
                Box::new(GraphDescriptor::Empty(3))
            )
        );
    }

    #[test]
    fn graph_rejects_loops_and_duplicates() {
        assert_eq!(
            Graph::new(3, vec![(1, 1)], None).unwrap_err(),
            GraphError::Loop(1)
        );
        assert_eq!(
            Graph::new(3, vec![(1, 2), (2, 1)], None).unwrap_err(),
            GraphError::DuplicateEdge(1, 2)
        );
        assert!(matches!(
            Graph::new(3, vec![(1, 4)], None).unwrap_err(),
            GraphError::VertexOutOfRange(4, 3)
        ));
    }

    #[test]
    fn bipartition_of_even_cycle() {
        let g = cycle(6).unwrap();
        let (a, b) = g.bipartition().unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(b.len(), 3);
        assert!(cycle(5).unwrap().bipartition().is_none());
    }
}
