//! Exact chromatic number and independent-set enumeration for small graphs.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("chromatic search budget exhausted after {explored} nodes")]
    BudgetExceeded { explored: u64 },
}

/// Node budget for the exact coloring search. The default is ample for every
/// graph of order <= 16 and for the dense join graphs this crate builds.
#[derive(Debug, Clone, Copy)]
pub struct ColoringBudget {
    pub max_nodes: u64,
}

impl Default for ColoringBudget {
    fn default() -> Self {
        ColoringBudget { max_nodes: 50_000_000 }
    }
}

/// Exact chromatic number.
///
/// Joins are unwound first: the factors of a join are the connected
/// components of the complement, and chi adds over them. What remains is
/// solved by iterated k-colorability with a clique seed, which is exact --
/// heuristic bounds are only used to bracket the search.
pub fn chromatic_number(g: &Graph) -> Result<usize, ColoringError> {
    chromatic_number_with_budget(g, ColoringBudget::default())
}

pub fn chromatic_number_with_budget(
    g: &Graph,
    budget: ColoringBudget,
) -> Result<usize, ColoringError> {
    if g.order() == 0 {
        return Ok(0);
    }
    let mut nodes = 0u64;
    chromatic_inner(g, budget, &mut nodes)
}

fn chromatic_inner(g: &Graph, budget: ColoringBudget, nodes: &mut u64) -> Result<usize, ColoringError> {
    if g.size() == 0 {
        return Ok(1);
    }
    // Join decomposition: complement components are join factors.
    let comps = components_of_complement(g);
    if comps.len() > 1 {
        let mut total = 0;
        for comp in comps {
            let sub = induced_subgraph(g, &comp);
            total += chromatic_inner(&sub, budget, nodes)?;
        }
        return Ok(total);
    }
    let clique = clique_number(g);
    let greedy = greedy_coloring_count(g);
    for k in clique..=greedy {
        if k == greedy || k_colorable(g, k, budget, nodes)? {
            return Ok(k);
        }
    }
    unreachable!("greedy coloring always succeeds at its own color count")
}

fn components_of_complement(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n + 1];
    let mut comps = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in 1..=n {
                if w != v && !seen[w] && !g.has_edge(v, w) {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Graph {
    let index_of = |v: usize| vertices.iter().position(|&x| x == v).unwrap() + 1;
    let edges = g
        .edges()
        .iter()
        .filter(|(u, v)| vertices.contains(u) && vertices.contains(v))
        .map(|&(u, v)| (index_of(u), index_of(v)));
    Graph::new(vertices.len(), edges, None).expect("induced subgraph is valid")
}

/// Size of a maximum clique (exact, branch and bound).
pub fn clique_number(g: &Graph) -> usize {
    let n = g.order();
    let mut best = 0;
    let mut current = Vec::new();
    fn extend(g: &Graph, candidates: &[usize], current: &mut Vec<usize>, best: &mut usize) {
        if current.len() + candidates.len() <= *best {
            return;
        }
        if candidates.is_empty() {
            *best = (*best).max(current.len());
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if current.len() + (candidates.len() - i) <= *best {
                break;
            }
            let next: Vec<usize> =
                candidates[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            current.push(v);
            extend(g, &next, current, best);
            current.pop();
        }
    }
    let all: Vec<usize> = (1..=n).collect();
    extend(g, &all, &mut current, &mut best);
    best
}

/// Number of colors used by greedy coloring in descending-degree order.
pub fn greedy_coloring_count(g: &Graph) -> usize {
    let n = g.order();
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut color = vec![usize::MAX; n + 1];
    let mut used = 0;
    for &v in &order {
        let mut taken = vec![false; used + 1];
        for &w in g.neighbors(v) {
            if color[w] != usize::MAX {
                taken[color[w]] = true;
            }
        }
        let c = (0..=used).find(|&c| !taken[c]).unwrap();
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

/// Exact k-colorability test by backtracking; vertices in descending-degree
/// order, new colors introduced at most one at a time.
pub fn k_colorable(
    g: &Graph,
    k: usize,
    budget: ColoringBudget,
    nodes: &mut u64,
) -> Result<bool, ColoringError> {
    let n = g.order();
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut color = vec![usize::MAX; n + 1];
    fn rec(
        g: &Graph,
        order: &[usize],
        pos: usize,
        k: usize,
        max_used: usize,
        color: &mut [usize],
        budget: &ColoringBudget,
        nodes: &mut u64,
    ) -> Result<bool, ColoringError> {
        *nodes += 1;
        if *nodes > budget.max_nodes {
            return Err(ColoringError::BudgetExceeded { explored: *nodes });
        }
        if pos == order.len() {
            return Ok(true);
        }
        let v = order[pos];
        for c in 0..k.min(max_used + 1) {
            if g.neighbors(v).iter().all(|&w| color[w] != c) {
                color[v] = c;
                if rec(g, order, pos + 1, k, max_used.max(c + 1), color, budget, nodes)? {
                    return Ok(true);
                }
                color[v] = usize::MAX;
            }
        }
        Ok(false)
    }
    rec(g, &order, 0, k, 0, &mut color, &budget, nodes)
}

/// All independent sets of size at most `max_size`, in deterministic
/// lexicographic order (the empty set first).
pub fn independent_sets(g: &Graph, max_size: usize) -> IndependentSets<'_> {
    IndependentSets { g, max_size, stack: vec![(Vec::new(), 1)], started: false }
}

pub struct IndependentSets<'a> {
    g: &'a Graph,
    max_size: usize,
    stack: Vec<(Vec<usize>, usize)>,
    started: bool,
}

impl Iterator for IndependentSets<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            return Some(Vec::new());
        }
        while let Some((set, next)) = self.stack.pop() {
            if set.len() >= self.max_size {
                continue;
            }
            for v in (next..=self.g.order()).rev() {
                if set.iter().all(|&u| !self.g.has_edge(u, v)) {
                    let mut bigger = set.clone();
                    bigger.push(v);
                    self.stack.push((bigger, v + 1));
                }
            }
            // Re-pop: the lexicographically smallest extension of `set` is on
            // top now; `set` itself was already yielded.
            if let Some((set, _)) = self.stack.last() {
                let out = set.clone();
                let (set, next) = self.stack.pop().unwrap();
                self.stack.push((set, next));
                return Some(out);
            }
        }
        None
    }
}

/// Size of a maximum independent set.
pub fn independence_number(g: &Graph) -> usize {
    clique_number(&g.complement())
}

/// All partitions of the vertex set into exactly `t` nonempty independent
/// classes (unordered; each partition listed once, classes sorted).
pub fn independent_partitions(g: &Graph, t: usize) -> Vec<Vec<Vec<usize>>> {
    let n = g.order();
    let mut out = Vec::new();
    let mut class_of = vec![usize::MAX; n + 1];
    fn rec(
        g: &Graph,
        v: usize,
        used: usize,
        t: usize,
        class_of: &mut [usize],
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let n = g.order();
        if v > n {
            if used == t {
                let mut classes = vec![Vec::new(); t];
                for u in 1..=n {
                    classes[class_of[u]].push(u);
                }
                out.push(classes);
            }
            return;
        }
        // Too few vertices left to fill the remaining classes.
        if used + (n - v + 1) < t {
            return;
        }
        for c in 0..used.min(t) {
            let ok = (1..v).all(|u| class_of[u] != c || !g.has_edge(u, v));
            if ok {
                class_of[v] = c;
                rec(g, v + 1, used, t, class_of, out);
                class_of[v] = usize::MAX;
            }
        }
        if used < t {
            class_of[v] = used;
            rec(g, v + 1, used + 1, t, class_of, out);
            class_of[v] = usize::MAX;
        }
    }
    rec(g, 1, 0, t, &mut class_of, &mut out);
    out
}
