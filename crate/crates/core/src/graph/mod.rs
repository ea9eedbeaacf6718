//! Simple undirected graphs and the decompositions the solvers rely on.

mod blocks;
mod coloring;
mod forest;
mod ktree;

pub use blocks::{block_cut_tree, Block, BlockCutTree, BlockKind};
pub use coloring::{
    independent_request_subset, proper_coloring, ColoringMode, IndependentSubset, ProperColoring,
};
pub use forest::TreedepthForest;
pub use ktree::{validate_ktree_order, KTreeOrder, KTreeViolation};

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted, so `has_edge` is a binary search.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Builds a graph, rejecting loops, parallel edges and out-of-range ids.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (i, (u, v)) in edges.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge #{i} ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge #{i} is a loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (v, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("parallel edge {v}-{}", w[0])));
            }
        }
        Ok(Graph { adj, m })
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        n > 0 && self.m == n * (n - 1) / 2
    }

    /// Connected, 2-regular, at least three vertices.
    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.adj.iter().all(|a| a.len() == 2) && self.is_connected()
    }

    pub fn is_odd_cycle(&self) -> bool {
        self.is_cycle() && self.n() % 2 == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m + 1 == self.n() && self.is_connected()
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Returns `Err(Disconnected)` naming the smallest vertex of the first two
    /// components.
    pub fn ensure_connected(&self) -> Result<()> {
        let comps = self.components();
        if comps.len() > 1 {
            return Err(Error::Disconnected { a: comps[0][0], b: comps[1][0] });
        }
        Ok(())
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_avoiding(&vec![false; self.n()])
    }

    /// Components of the graph with the vertices flagged in `removed` deleted.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = removed.to_vec();
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// BFS distances from `src`, restricted to vertices not flagged in `removed`.
    pub fn distances_avoiding(&self, src: Vertex, removed: &[bool]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        if removed[src] {
            return dist;
        }
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.adj[u] {
                if !removed[v] && dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distances(&self, src: Vertex) -> Vec<Option<usize>> {
        self.distances_avoiding(src, &vec![false; self.n()])
    }

    /// Subgraph induced by `vertices`; local vertex `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut m = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if local[w] != usize::MAX {
                    adj[i].push(local[w]);
                    if local[w] > i {
                        m += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        Graph { adj, m }
    }

    /// The `p`-th power: `u ~ v` iff `0 < dist(u, v) <= p`.
    pub fn power(&self, p: usize) -> Graph {
        if p <= 1 {
            return self.clone();
        }
        let n = self.n();
        let mut adj = vec![Vec::new(); n];
        let mut dist = vec![usize::MAX; n];
        let mut touched = Vec::new();
        let mut m = 0;
        for s in 0..n {
            dist[s] = 0;
            touched.push(s);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if dist[u] == p {
                    continue;
                }
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        touched.push(v);
                        queue.push_back(v);
                    }
                }
            }
            for &v in &touched {
                if v != s {
                    adj[s].push(v);
                    if v > s {
                        m += 1;
                    }
                }
                dist[v] = usize::MAX;
            }
            touched.clear();
            adj[s].sort_unstable();
        }
        Graph { adj, m }
    }

    /// Exact check: at least `k + 1` vertices and no separator of size `< k`.
    ///
    /// Brute force over all vertex subsets of size `k - 1`; intended for
    /// `k <= 3` on graphs of moderate size.
    pub fn is_k_connected(&self, k: usize) -> bool {
        let n = self.n();
        if n < k + 1 {
            return false;
        }
        let mut removed = vec![false; n];
        fn rec(g: &Graph, removed: &mut Vec<bool>, start: usize, left: usize) -> bool {
            if left == 0 {
                return g.components_avoiding(removed).len() == 1;
            }
            for v in start..g.n() {
                removed[v] = true;
                let ok = rec(g, removed, v + 1, left - 1);
                removed[v] = false;
                if !ok {
                    return false;
                }
            }
            true
        }
        (0..k).all(|size| rec(self, &mut removed, 0, size))
    }
}
