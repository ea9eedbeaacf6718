//! Flexible coloring of graphs with a treedepth decomposition.
//!
//! The random coloring colors each subtree root uniformly from its list,
//! removes that color from every list below it and trims lists that are
//! still too long, then recurses with one less level. Every requested
//! `(v, c)` then survives with probability at least `1/k`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, TreedepthForest, Vertex};
use crate::list::{reduce_to_unique, satisfied_amount, Color, Coloring, ListAssignment, Request, RequestKind};
use crate::Rational;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// A graph, a decomposition forest of height at most `k` and lists trimmed
/// to exactly `k` colors, with at most one preferred color per vertex.
#[derive(Debug, Clone)]
pub struct TdInstance<'a> {
    pub graph: &'a Graph,
    pub forest: &'a TreedepthForest,
    pub k: usize,
    lists: Vec<Vec<Color>>,
    prefs: Vec<Option<Color>>,
}

impl<'a> TdInstance<'a> {
    /// `request` must have at most one color per vertex; route general
    /// weighted requests through [`reduce_to_unique`] first.
    pub fn new(
        graph: &'a Graph,
        forest: &'a TreedepthForest,
        lists: &ListAssignment,
        k: usize,
        request: &Request,
    ) -> Result<Self> {
        lists.ensure_covers(graph)?;
        if forest.parent.len() != graph.n() {
            return Err(Error::precondition("forest and graph differ in size"));
        }
        if forest.height > k {
            return Err(Error::precondition(format!("forest height {} exceeds {k}", forest.height)));
        }
        for (u, v) in graph.edges() {
            if !forest.is_ancestor(u, v) && !forest.is_ancestor(v, u) {
                return Err(Error::precondition(format!("edge {u}-{v} is not an ancestor-descendant pair")));
            }
        }
        if request.kind() == RequestKind::Weighted {
            return Err(Error::precondition("weighted requests must be reduced to one color per vertex first"));
        }
        request.validate(lists)?;
        let n = graph.n();
        let mut prefs = vec![None; n];
        for e in request.entries() {
            prefs[e.vertex] = Some(e.color);
        }
        let mut trimmed = Vec::with_capacity(n);
        for (v, &pref) in prefs.iter().enumerate() {
            let l = lists.get(v);
            if l.len() < k {
                return Err(Error::ListTooSmall { vertex: v, len: l.len(), required: k });
            }
            let mut t: Vec<Color> = pref.into_iter().collect();
            t.extend(l.iter().copied().filter(|&c| Some(c) != pref).take(k - t.len()));
            t.sort_unstable();
            trimmed.push(t);
        }
        Ok(TdInstance { graph, forest, k, lists: trimmed, prefs })
    }

    /// The lists after trimming to exactly `k` colors.
    pub fn trimmed_lists(&self) -> ListAssignment {
        ListAssignment::new(self.lists.clone()).expect("trimmed lists are valid")
    }

    /// Level budget of `v`: `k` at the roots, one less per level.
    fn budget(&self, v: Vertex) -> usize {
        self.k + 1 - self.forest.depth[v]
    }

    /// Forest vertices in preorder, roots ascending.
    fn preorder(&self) -> Vec<Vertex> {
        self.forest.roots.iter().flat_map(|&r| self.forest.subtree(r)).collect()
    }
}

/// Removes `c` and, if the list still has `h` or more colors, drops the
/// largest color other than `pref`.
fn trim(list: &mut Vec<Color>, c: Color, h: usize, pref: Option<Color>) {
    list.retain(|&x| x != c);
    while list.len() + 1 > h {
        match list.iter().rposition(|&x| Some(x) != pref) {
            Some(i) => {
                list.remove(i);
            }
            None => break,
        }
    }
}

fn color_root(inst: &TdInstance, lists: &mut [Vec<Color>], v: Vertex, c: Color) {
    let h = inst.budget(v);
    for u in inst.forest.subtree(v).into_iter().skip(1) {
        trim(&mut lists[u], c, h, inst.prefs[u]);
    }
}

/// Draws one coloring from the distribution, reproducibly from `seed`.
pub fn sample_coloring(inst: &TdInstance, seed: u64) -> Result<Coloring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists = inst.lists.clone();
    let mut out = vec![0; inst.graph.n()];
    for v in inst.preorder() {
        if lists[v].is_empty() {
            return Err(Error::ListTooSmall { vertex: v, len: 0, required: 1 });
        }
        let c = lists[v][rng.gen_range(0..lists[v].len())];
        out[v] = c;
        color_root(inst, &mut lists, v, c);
    }
    Ok(out)
}

struct Budget {
    used: u64,
    cap: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            return Err(Error::BudgetExceeded(format!("probability enumeration exceeded {} nodes", self.cap)));
        }
        Ok(())
    }
}

/// Probability that the last vertex of `path` gets `c`, given the current
/// lists of the path vertices and their level budgets.
fn path_probability(
    lists: &[Vec<Color>],
    hs: &[usize],
    prefs: &[Option<Color>],
    c: Color,
    budget: &mut Budget,
) -> Result<Rational> {
    let head = &lists[0];
    if head.is_empty() {
        return Err(Error::internal("empty list during probability enumeration"));
    }
    let len = head.len() as i128;
    if lists.len() == 1 {
        return Ok(if head.contains(&c) { Rational::new(1, len) } else { Rational::from_integer(0) });
    }
    let mut sum = Rational::from_integer(0);
    for &x in head {
        budget.tick()?;
        let mut rest = lists[1..].to_vec();
        for (i, l) in rest.iter_mut().enumerate() {
            trim(l, x, hs[0], prefs[i + 1]);
        }
        sum += path_probability(&rest, &hs[1..], &prefs[1..], c, budget)?;
    }
    Ok(sum / len)
}

fn conditional_probability(
    inst: &TdInstance,
    lists: &[Vec<Color>],
    path: &[Vertex],
    c: Color,
    budget: &mut Budget,
) -> Result<Rational> {
    let l: Vec<Vec<Color>> = path.iter().map(|&u| lists[u].clone()).collect();
    let hs: Vec<usize> = path.iter().map(|&u| inst.budget(u)).collect();
    let prefs: Vec<Option<Color>> = path.iter().map(|&u| inst.prefs[u]).collect();
    path_probability(&l, &hs, &prefs, c, budget)
}

pub fn exact_request_probability(inst: &TdInstance, v: Vertex, c: Color) -> Result<Rational> {
    exact_request_probability_with(inst, v, c, DEFAULT_NODE_BUDGET)
}

/// Exact `Pr[φ(v) = c]`, enumerating root colors along the path to `v`.
pub fn exact_request_probability_with(inst: &TdInstance, v: Vertex, c: Color, node_budget: u64) -> Result<Rational> {
    if v >= inst.graph.n() {
        return Err(Error::precondition(format!("vertex {v} out of range")));
    }
    let mut budget = Budget { used: 0, cap: node_budget };
    conditional_probability(inst, &inst.lists, &inst.forest.root_path(v), c, &mut budget)
}

/// Expected satisfied weight of `r` under the distribution.
pub fn expected_satisfaction(inst: &TdInstance, r: &Request) -> Result<Rational> {
    let mut budget = Budget { used: 0, cap: DEFAULT_NODE_BUDGET };
    let mut sum = Rational::from_integer(0);
    for e in r.entries() {
        sum += e.weight * conditional_probability(inst, &inst.lists, &inst.forest.root_path(e.vertex), e.color, &mut budget)?;
    }
    Ok(sum)
}

pub fn derandomized_coloring(inst: &TdInstance, r: &Request) -> Result<Coloring> {
    derandomized_coloring_with(inst, r, DEFAULT_NODE_BUDGET)
}

/// Conditional expectations: each subtree root takes the color maximizing
/// the exact expected weight still reachable below it (smallest on ties).
pub fn derandomized_coloring_with(inst: &TdInstance, r: &Request, node_budget: u64) -> Result<Coloring> {
    let n = inst.graph.n();
    let mut wanted: Vec<Option<(Color, Rational)>> = vec![None; n];
    for e in r.entries() {
        if wanted[e.vertex].is_some() {
            return Err(Error::precondition("request has two colors at one vertex"));
        }
        wanted[e.vertex] = Some((e.color, e.weight));
    }
    let mut lists = inst.lists.clone();
    let mut out = vec![0; n];
    let mut budget = Budget { used: 0, cap: node_budget };
    for v in inst.preorder() {
        let below: Vec<Vertex> = inst.forest.subtree(v);
        let mut best: Option<(Color, Rational, Vec<Vec<Color>>)> = None;
        for &x in &lists[v] {
            let mut next = lists.clone();
            color_root(inst, &mut next, v, x);
            let mut score = Rational::from_integer(0);
            for &w in &below {
                let Some((a, wt)) = wanted[w] else { continue };
                if w == v {
                    if a == x {
                        score += wt;
                    }
                    continue;
                }
                let path = inst.forest.root_path(w);
                let from = inst.forest.depth[v];
                score += wt * conditional_probability(inst, &next, &path[from..], a, &mut budget)?;
            }
            if best.as_ref().is_none_or(|(_, s, _)| score > *s) {
                best = Some((x, score, next));
            }
        }
        let Some((x, _, next)) = best else {
            return Err(Error::ListTooSmall { vertex: v, len: 0, required: 1 });
        };
        out[v] = x;
        lists = next;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdOutcome {
    pub coloring: Coloring,
    pub satisfied: Rational,
    pub total: Rational,
    /// Expected weight of the one-color-per-vertex request under the distribution.
    pub expected: Rational,
    pub fraction: Rational,
    pub certified: Rational,
    /// The request actually steered, after [`reduce_to_unique`] for weighted input.
    pub steered: Request,
}

impl TdOutcome {
    pub fn meets_bound(&self) -> bool {
        self.satisfied >= self.certified
    }
}

/// Derandomized solver. Certifies `total/k`, or `total/(k·max|L|)` for
/// general weighted requests.
pub fn solve(
    g: &Graph,
    forest: &TreedepthForest,
    lists: &ListAssignment,
    k: usize,
    r: &Request,
    node_budget: u64,
) -> Result<TdOutcome> {
    r.validate(lists)?;
    if k == 0 && g.n() > 0 {
        return Err(Error::precondition("treedepth bound must be positive"));
    }
    let steered = if r.kind() == RequestKind::Weighted { reduce_to_unique(r) } else { r.clone() };
    let inst = TdInstance::new(g, forest, lists, k, &steered)?;
    let coloring = derandomized_coloring_with(&inst, &steered, node_budget)?;
    let satisfied = satisfied_amount(g, lists, &coloring, r)?;
    let expected = expected_satisfaction(&inst, &steered)?;
    let k = k.max(1) as i128;
    let fraction = if r.kind() == RequestKind::Weighted {
        Rational::new(1, k * lists.max_len().max(1) as i128)
    } else {
        Rational::new(1, k)
    };
    let total = r.total();
    Ok(TdOutcome { coloring, satisfied, total, expected, fraction, certified: fraction * total, steered })
}
