use super::{Graph, Vertex};
use crate::error::{Error, Result};

/// Rooted forest on the vertex set whose closure contains the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreedepthForest {
    pub parent: Vec<Option<Vertex>>,
    /// Children in ascending order.
    pub children: Vec<Vec<Vertex>>,
    pub roots: Vec<Vertex>,
    /// Number of vertices on the root path of each vertex (roots have depth 1).
    pub depth: Vec<usize>,
    pub height: usize,
}

impl TreedepthForest {
    /// Builds the forest from a parent array and checks it against `g` and
    /// the height bound `k`.
    pub fn new(g: &Graph, parent: Vec<Option<Vertex>>, k: usize) -> Result<Self> {
        let n = g.n();
        if parent.len() != n {
            return Err(Error::precondition(format!("forest has {} parents for {n} vertices", parent.len())));
        }
        let mut children = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None => roots.push(v),
                Some(p) if p >= n || p == v => {
                    return Err(Error::precondition(format!("vertex {v} has invalid parent {p}")))
                }
                Some(p) => children[p].push(v),
            }
        }
        let mut depth = vec![0; n];
        let mut stack: Vec<Vertex> = roots.clone();
        for &r in &roots {
            depth[r] = 1;
        }
        let mut seen = roots.len();
        while let Some(v) = stack.pop() {
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                seen += 1;
                stack.push(c);
            }
        }
        if seen != n {
            let v = (0..n).find(|&v| depth[v] == 0).unwrap();
            return Err(Error::precondition(format!("parent pointers of vertex {v} form a cycle")));
        }
        let height = depth.iter().copied().max().unwrap_or(0);
        let forest = TreedepthForest { parent, children, roots, depth, height };
        if height > k {
            return Err(Error::precondition(format!("forest height {height} exceeds {k}")));
        }
        for (u, v) in g.edges() {
            if !forest.is_ancestor(u, v) && !forest.is_ancestor(v, u) {
                return Err(Error::precondition(format!("edge {u}-{v} is not an ancestor-descendant pair")));
            }
        }
        Ok(forest)
    }

    pub fn is_ancestor(&self, a: Vertex, mut v: Vertex) -> bool {
        while self.depth[v] > self.depth[a] {
            v = self.parent[v].unwrap();
        }
        v == a
    }

    /// Vertices of the subtree rooted at `v`, in preorder (children ascending).
    pub fn subtree(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(self.children[x].iter().rev());
        }
        out
    }

    /// Path from the root down to `v`, inclusive.
    pub fn root_path(&self, mut v: Vertex) -> Vec<Vertex> {
        let mut path = vec![v];
        while let Some(p) = self.parent[v] {
            path.push(p);
            v = p;
        }
        path.reverse();
        path
    }

    /// The closure graph: every ancestor-descendant pair is an edge.
    pub fn closure(&self) -> Graph {
        let n = self.parent.len();
        let mut edges = Vec::new();
        for v in 0..n {
            let mut a = self.parent[v];
            while let Some(p) = a {
                edges.push((p, v));
                a = self.parent[p];
            }
        }
        Graph::new(n, edges).expect("closure is simple")
    }
}
