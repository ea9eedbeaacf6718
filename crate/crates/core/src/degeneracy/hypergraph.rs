use std::collections::VecDeque;

use super::epsilon;
use crate::error::{Error, Result};
use crate::Rational;

/// A hypergraph on `0..n`. Edges are sorted vertex sets; singletons and
/// repeated edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    pub(crate) count: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), count: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.parent[a.max(b)] = a.min(b);
        self.count -= 1;
        true
    }
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut edges = edges;
        for (i, e) in edges.iter_mut().enumerate() {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(Error::precondition(format!("hyperedge {i} is empty")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::precondition(format!("hyperedge {i} has vertex {v} outside 0..{n}")));
            }
        }
        Ok(Hypergraph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Whether `(V, {edges[i] : i ∈ subset})` is connected.
    pub fn is_connected_by(&self, subset: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.n);
        for &i in subset {
            let e = &self.edges[i];
            for &v in &e[1..] {
                uf.union(e[0], v);
            }
        }
        uf.count <= 1
    }

    /// Minimum number of edges crossing a proper nonempty vertex cut, capped
    /// at `cap`. Unit-capacity flow in the star expansion from vertex 0.
    pub fn edge_connectivity_capped(&self, cap: usize) -> usize {
        if self.n <= 1 {
            return cap;
        }
        let mut best = cap;
        for t in 1..self.n {
            let mut net = StarExpansion::new(self);
            best = best.min(net.max_flow(0, t, best));
            if best == 0 {
                break;
            }
        }
        best
    }

    pub fn is_k_edge_connected(&self, k: usize) -> bool {
        self.edge_connectivity_capped(k) >= k
    }
}

/// Residual network: vertex `v` is node `v`; hyperedge `i` is a unit arc
/// from node `n + 2i` to `n + 2i + 1`.
struct StarExpansion {
    to: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl StarExpansion {
    fn new(h: &Hypergraph) -> Self {
        let nodes = h.n + 2 * h.edges.len();
        let mut net = StarExpansion { to: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); nodes] };
        let inf = h.edges.len() as i64 + 1;
        for (i, e) in h.edges.iter().enumerate() {
            let (a, b) = (h.n + 2 * i, h.n + 2 * i + 1);
            net.arc(a, b, 1);
            for &v in e {
                net.arc(v, a, inf);
                net.arc(b, v, inf);
            }
        }
        net
    }

    fn arc(&mut self, u: usize, v: usize, c: i64) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut value = 0;
        while value < limit {
            let mut via = vec![usize::MAX; self.adj.len()];
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &a in &self.adj[x] {
                    let y = self.to[a];
                    if self.cap[a] > 0 && !seen[y] {
                        seen[y] = true;
                        via[y] = a;
                        q.push_back(y);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut y = t;
            while y != s {
                let a = via[y];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                y = self.to[a ^ 1];
            }
            value += 1;
        }
        value
    }
}

/// Connected spanning edge set with at most `(1 − ε(d))|E|` edges for a
/// 3-edge-connected hypergraph of rank at most `d`. Returns sorted edge
/// indices.
pub fn hypergraph_spanning_set(h: &Hypergraph, d: usize) -> Result<Vec<usize>> {
    if d < 2 {
        return Err(Error::precondition("rank bound d must be at least 2"));
    }
    if let Some(i) = h.edges.iter().position(|e| e.len() > d) {
        return Err(Error::precondition(format!("hyperedge {i} has {} vertices, more than {d}", h.edges[i].len())));
    }
    if !h.is_k_edge_connected(3) {
        return Err(Error::precondition("hypergraph is not 3-edge-connected"));
    }
    let m = h.edges.len() as i128;
    if h.n >= 2 && m * (d as i128) < 3 * (h.n as i128) {
        return Err(Error::internal(format!("{m} edges on {} vertices contradicts 3-edge-connectivity", h.n)));
    }
    let all: Vec<usize> = (0..h.edges.len()).collect();
    let mut a = spanning(h.n, &h.edges, &all, d);
    a.sort_unstable();
    if !h.is_connected_by(&a) {
        return Err(Error::internal("spanning set is disconnected"));
    }
    if Rational::from_integer(a.len() as i128) > (Rational::from_integer(1) - epsilon(d)) * m {
        return Err(Error::internal(format!("spanning set has {} of {m} edges, above the bound", a.len())));
    }
    Ok(a)
}

/// `ids` are the original indices of `edges`; the result is in terms of them.
fn spanning(n: usize, edges: &[Vec<usize>], ids: &[usize], d: usize) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    let join = |uf: &mut UnionFind, e: &[usize]| {
        let mut merged = false;
        for &v in &e[1..] {
            merged |= uf.union(e[0], v);
        }
        merged
    };
    if d <= 2 {
        return (0..edges.len()).filter(|&i| join(&mut uf, &edges[i])).map(|i| ids[i]).collect();
    }
    let need = (d + 8) / 3;
    let mut in_a1 = vec![false; edges.len()];
    loop {
        let pick = (0..edges.len()).find(|&i| {
            if in_a1[i] {
                return false;
            }
            let mut roots: Vec<usize> = edges[i].iter().map(|&v| uf.find(v)).collect();
            roots.sort_unstable();
            roots.dedup();
            roots.len() >= need
        });
        match pick {
            Some(i) => {
                in_a1[i] = true;
                join(&mut uf, &edges[i]);
            }
            None => break,
        }
    }
    let a1: Vec<usize> = (0..edges.len()).filter(|&i| in_a1[i]).collect();
    let k = Rational::new(3, d as i128);
    let size = Rational::from_integer(a1.len() as i128);
    let kn = k * Rational::from_integer(n as i128);
    let threshold = if d == 3 {
        Rational::new(1, 4)
    } else {
        let e1 = epsilon((d + 5) / 3);
        let one = Rational::from_integer(1);
        (k * e1 - k + one) / (one + k * e1)
    };
    let mut out: Vec<usize> = a1.iter().map(|&i| ids[i]).collect();
    if size >= threshold * kn {
        for i in 0..edges.len() {
            if !in_a1[i] && join(&mut uf, &edges[i]) {
                out.push(ids[i]);
            }
        }
        return out;
    }
    let mut label = vec![usize::MAX; n];
    let mut c = 0;
    for v in 0..n {
        let r = uf.find(v);
        if label[r] == usize::MAX {
            label[r] = c;
            c += 1;
        }
        label[v] = label[r];
    }
    let mut sub_edges = Vec::new();
    let mut sub_ids = Vec::new();
    for i in (0..edges.len()).filter(|&i| !in_a1[i]) {
        let mut e: Vec<usize> = edges[i].iter().map(|&v| label[v]).collect();
        e.sort_unstable();
        e.dedup();
        sub_edges.push(e);
        sub_ids.push(ids[i]);
    }
    out.extend(spanning(c, &sub_edges, &sub_ids, (d + 5) / 3));
    out
}
