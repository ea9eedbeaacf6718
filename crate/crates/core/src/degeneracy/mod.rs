//! Flexible degeneracy orderings of 3-connected non-regular graphs.
//!
//! A spanning tree whose leaves hit many requested vertices turns into a
//! (Δ−1)-degeneracy order in which those leaves precede all their
//! neighbors. The tree comes from a connected spanning set of a hypergraph
//! whose vertices are the components left after deleting an independent
//! set of requested vertices.

mod game;
mod hypergraph;

pub use game::{exact_game_connectivity, game_connectivity_by_leaves, leaf_fraction, GameConnectivity, DEFAULT_GAME_CAP};
pub use hypergraph::{hypergraph_spanning_set, Hypergraph};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{independent_request_subset, ColoringMode, Graph, Vertex};
use crate::Rational;

/// `ε(2) = 1/3`, `ε(d) = 3ε' / (d + 3ε')` with `ε' = ε(⌈d/3 + 1⌉)`.
pub fn epsilon(d: usize) -> Rational {
    assert!(d >= 2, "ε is defined for d ≥ 2");
    if d == 2 {
        return Rational::new(1, 3);
    }
    let e = epsilon((d + 5) / 3) * 3;
    e / (Rational::from_integer(d as i128) + e)
}

/// `(d, ε(d))` for `d` in `2..=max_d`.
pub fn epsilon_table(max_d: usize) -> Vec<(usize, Rational)> {
    (2..=max_d).map(|d| (d, epsilon(d))).collect()
}

/// A vertex order with its back-degree bound `k` and the set `free` of
/// vertices preceding all their neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    pub order: Vec<Vertex>,
    pub k: usize,
    /// Sorted.
    pub free: Vec<Vertex>,
}

impl DegeneracyOrdering {
    /// Builds the ordering and computes `free` from `g`.
    pub fn new(g: &Graph, order: Vec<Vertex>, k: usize) -> Result<Self> {
        let pos = positions(g.n(), &order)?;
        let free = (0..g.n()).filter(|&v| g.neighbors(v).iter().all(|&u| pos[u] > pos[v])).collect();
        Ok(DegeneracyOrdering { order, k, free })
    }

    /// Checks that every vertex has at most `k` earlier neighbors and that
    /// every vertex of `free` precedes all its neighbors.
    pub fn check(&self, g: &Graph) -> Result<()> {
        let pos = positions(g.n(), &self.order)?;
        for v in 0..g.n() {
            let back = g.neighbors(v).iter().filter(|&&u| pos[u] < pos[v]).count();
            if back > self.k {
                return Err(Error::internal(format!("vertex {v} has {back} earlier neighbors, more than {}", self.k)));
            }
        }
        for &v in &self.free {
            if let Some(&u) = g.neighbors(v).iter().find(|&&u| pos[u] < pos[v]) {
                return Err(Error::internal(format!("free vertex {v} comes after its neighbor {u}")));
            }
        }
        Ok(())
    }

    /// Number of vertices of `set` that are free.
    pub fn free_count(&self, set: &[Vertex]) -> usize {
        set.iter().filter(|v| self.free.binary_search(v).is_ok()).count()
    }
}

fn positions(n: usize, order: &[Vertex]) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::precondition(format!("order entry {i} ({v}) is out of range or repeated")));
        }
        pos[v] = i;
    }
    if order.len() != n {
        return Err(Error::precondition(format!("order has {} of {n} vertices", order.len())));
    }
    Ok(pos)
}

/// Turns a spanning tree whose leaves include the independent set `leaves`
/// into a (Δ−1)-degeneracy order in which every vertex of `leaves` precedes
/// its neighbors. The walk starts at `w`, covers the tree minus `leaves` in
/// preorder, then the leaves; the order is the reverse.
pub fn ordering_from_tree(
    g: &Graph,
    tree: &[(Vertex, Vertex)],
    leaves: &[Vertex],
    w: Vertex,
) -> Result<DegeneracyOrdering> {
    let n = g.n();
    let delta = g.max_degree();
    if w >= n || g.degree(w) >= delta {
        return Err(Error::precondition(format!("start vertex {w} must have degree below Δ = {delta}")));
    }
    let mut is_leaf = vec![false; n];
    for &v in leaves {
        if v >= n {
            return Err(Error::precondition(format!("leaf {v} out of range")));
        }
        is_leaf[v] = true;
    }
    if is_leaf[w] {
        return Err(Error::precondition(format!("start vertex {w} lies in the independent set")));
    }
    for &v in leaves {
        if let Some(&u) = g.neighbors(v).iter().find(|&&u| is_leaf[u]) {
            return Err(Error::precondition(format!("vertices {v} and {u} of the leaf set are adjacent")));
        }
    }
    for &(a, b) in tree {
        if a >= n || b >= n || !g.has_edge(a, b) {
            return Err(Error::precondition(format!("tree edge {a}-{b} is not an edge of the graph")));
        }
    }
    let t = Graph::new(n, tree.iter().copied()).map_err(|_| Error::precondition("tree has repeated edges"))?;
    if tree.len() + 1 != n || !t.is_connected() {
        return Err(Error::precondition("edges do not form a spanning tree"));
    }
    if let Some(&v) = leaves.iter().find(|&&v| t.degree(v) != 1) {
        return Err(Error::precondition(format!("vertex {v} is not a leaf of the tree")));
    }
    let mut visit = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut stack = vec![w];
    while let Some(x) = stack.pop() {
        if seen[x] {
            continue;
        }
        seen[x] = true;
        visit.push(x);
        let mut next: Vec<Vertex> = t.neighbors(x).iter().copied().filter(|&y| !seen[y] && !is_leaf[y]).collect();
        next.reverse();
        stack.extend(next);
    }
    let mut ls = leaves.to_vec();
    ls.sort_unstable();
    ls.dedup();
    visit.extend(ls);
    visit.reverse();
    let ord = DegeneracyOrdering::new(g, visit, delta - 1)?;
    ord.check(g)?;
    Ok(ord)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PipelineOptions {
    pub mode: ColoringMode,
    /// Experimental: choose requested vertices at mutual distance at least
    /// `k + 2` instead of independent ones, and skip the 3-connectivity check.
    pub distance_k: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutcome {
    pub ordering: DegeneracyOrdering,
    pub w: Vertex,
    pub r_prime: Vec<Vertex>,
    pub r_plus: Vec<Vertex>,
    pub r_double_prime: Vec<Vertex>,
    /// Spanning tree with `r_double_prime` as leaves.
    pub tree: Vec<(Vertex, Vertex)>,
    pub mode: ColoringMode,
    pub epsilon: Rational,
    /// `|F ∩ R₀|`.
    pub achieved: usize,
    /// `ε(Δ)·|R| / c` with `c` the color bound of the mode used.
    pub certified: Rational,
    /// `ε(Δ) / (2(Δ+1)²) · |R₀|`.
    pub composed: Rational,
}

impl PipelineOutcome {
    pub fn meets_bound(&self) -> bool {
        Rational::from_integer(self.achieved as i128) >= self.certified
    }
}

/// Hypergraph on the components of `g − rp`, one edge per vertex of `rp`.
/// Also returns the component label of every vertex (`usize::MAX` on `rp`).
pub fn component_hypergraph(g: &Graph, rp: &[Vertex]) -> Result<(Hypergraph, Vec<usize>)> {
    let mut removed = vec![false; g.n()];
    for &r in rp {
        removed[r] = true;
    }
    let comps = g.components_avoiding(&removed);
    let mut label = vec![usize::MAX; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            label[v] = i;
        }
    }
    let edges = rp
        .iter()
        .map(|&r| g.neighbors(r).iter().filter(|&&u| !removed[u]).map(|&u| label[u]).collect())
        .collect();
    Ok((Hypergraph::new(comps.len(), edges)?, label))
}

/// A (Δ−1)-degeneracy order in which a certified share of `r0` precede all
/// their neighbors.
pub fn flexible_degeneracy_order(g: &Graph, r0: &[Vertex], opts: &PipelineOptions) -> Result<PipelineOutcome> {
    let n = g.n();
    g.ensure_connected()?;
    let delta = g.max_degree();
    if delta < 3 {
        return Err(Error::precondition(format!("maximum degree {delta} is below 3")));
    }
    if g.is_regular() {
        return Err(Error::precondition("graph is regular"));
    }
    if opts.distance_k.is_none() && !g.is_k_connected(3) {
        return Err(Error::precondition("graph is not 3-connected"));
    }
    let mut r0: Vec<Vertex> = r0.to_vec();
    r0.sort_unstable();
    r0.dedup();
    if let Some(&v) = r0.iter().find(|&&v| v >= n) {
        return Err(Error::precondition(format!("requested vertex {v} out of range")));
    }
    let low: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) < delta).collect();
    if low.len() == 1 && r0 == low {
        return Err(Error::precondition(format!(
            "the only vertex of degree below Δ ({}) cannot be the whole request",
            low[0]
        )));
    }
    let w = low.iter().copied().find(|v| r0.binary_search(v).is_err()).unwrap_or(low[0]);
    let r: Vec<Vertex> = r0.iter().copied().filter(|&v| v != w).collect();

    let distance = opts.distance_k.map_or(1, |k| k + 1);
    let sub = independent_request_subset(g, &r, distance, None, opts.mode)?;
    let rp = sub.vertices;
    let (h, _) = component_hypergraph(g, &rp)?;
    let eps = epsilon(delta);
    let chosen = if opts.distance_k.is_none() {
        if !h.is_k_edge_connected(3) {
            return Err(Error::internal("component hypergraph of a 3-connected graph is not 3-edge-connected"));
        }
        hypergraph_spanning_set(&h, delta)?
    } else if h.is_k_edge_connected(3) {
        hypergraph_spanning_set(&h, delta)?
    } else {
        return Err(Error::precondition("component hypergraph is not 3-edge-connected"));
    };
    let r_plus: Vec<Vertex> = chosen.iter().map(|&i| rp[i]).collect();
    let mut in_plus = vec![false; rp.len()];
    for &i in &chosen {
        in_plus[i] = true;
    }
    let rpp: Vec<Vertex> = (0..rp.len()).filter(|&i| !in_plus[i]).map(|i| rp[i]).collect();

    let mut out = vec![false; n];
    for &v in &rpp {
        out[v] = true;
    }
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    let mut seen = out.clone();
    seen[w] = true;
    let mut q = VecDeque::from([w]);
    while let Some(x) = q.pop_front() {
        for &y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                tree.push((x, y));
                q.push_back(y);
            }
        }
    }
    for &v in &rpp {
        let u = g.neighbors(v).iter().copied().find(|&u| !out[u]).ok_or_else(|| Error::internal("isolated leaf"))?;
        tree.push((u, v));
    }
    if tree.len() + 1 != n {
        return Err(Error::internal("graph minus the leaf set is disconnected"));
    }
    let ordering = ordering_from_tree(g, &tree, &rpp, w)?;
    let achieved = ordering.free_count(&r0);
    let c = match (sub.mode, opts.distance_k) {
        (_, Some(_)) | (ColoringMode::Greedy, None) => {
            let p = g.power(distance).max_degree();
            p + 1
        }
        (ColoringMode::Brooks, None) => delta,
    };
    let certified = eps * Rational::from_integer(r.len() as i128) / Rational::from_integer(c as i128);
    let d1 = (delta + 1) as i128;
    let composed = eps * Rational::from_integer(r0.len() as i128) / Rational::from_integer(2 * d1 * d1);
    let out = PipelineOutcome {
        ordering,
        w,
        r_prime: rp,
        r_plus,
        r_double_prime: rpp,
        tree,
        mode: sub.mode,
        epsilon: eps,
        achieved,
        certified,
        composed,
    };
    if !out.meets_bound() {
        return Err(Error::internal(format!(
            "{} free requested vertices, below the certified {}",
            out.achieved,
            crate::format_rational(&out.certified)
        )));
    }
    Ok(out)
}
