//! Naive reference computations shared by the integration tests. Nothing
//! here calls into the solvers.
#![allow(dead_code)]

use flexicolor::{Color, Graph, Rational, Request};

/// Every proper coloring drawn from the lists, by plain odometer.
pub fn proper_colorings(g: &Graph, lists: &[Vec<Color>]) -> Vec<Vec<Color>> {
    let n = g.n();
    let mut out = Vec::new();
    if lists.iter().any(|l| l.is_empty()) {
        return out;
    }
    let mut idx = vec![0usize; n];
    loop {
        let c: Vec<Color> = (0..n).map(|v| lists[v][idx[v]]).collect();
        if g.edges().all(|(u, v)| c[u] != c[v]) {
            out.push(c);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

pub fn weight_of(c: &[Color], r: &Request) -> Rational {
    r.entries().iter().filter(|e| c[e.vertex] == e.color).map(|e| e.weight).sum()
}

/// Best satisfied weight over all proper colorings; `None` if there are none.
pub fn best_weight(g: &Graph, lists: &[Vec<Color>], r: &Request) -> Option<Rational> {
    proper_colorings(g, lists).iter().map(|c| weight_of(c, r)).max()
}

/// Largest subset of `set` with pairwise distances above `d`.
pub fn max_spread_subset(g: &Graph, set: &[usize], d: usize) -> usize {
    let dist: Vec<Vec<Option<usize>>> = (0..g.n()).map(|v| bfs(g, v)).collect();
    let mut best = 0;
    for mask in 0u32..(1 << set.len()) {
        let s: Vec<usize> = (0..set.len()).filter(|&i| mask >> i & 1 == 1).map(|i| set[i]).collect();
        let ok = s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| dist[a][b].is_none_or(|x| x > d)));
        if ok {
            best = best.max(s.len());
        }
    }
    best
}

pub fn bfs(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut d = vec![None; g.n()];
    d[s] = Some(0);
    let mut q = std::collections::VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &u in g.neighbors(v) {
            if d[u].is_none() {
                d[u] = Some(d[v].unwrap() + 1);
                q.push_back(u);
            }
        }
    }
    d
}

/// Connectivity of the vertices in `keep` through edges inside `keep`.
pub fn connected_within(g: &Graph, keep: &[bool]) -> bool {
    let Some(s) = (0..g.n()).find(|&v| keep[v]) else { return true };
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if keep[u] && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    (0..g.n()).all(|v| !keep[v] || seen[v])
}

pub fn q(a: i128, b: i128) -> Rational {
    Rational::new(a, b)
}

pub fn fig3() -> Graph {
    let e = [
        (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (5, 4), (5, 3), (5, 2),
        (6, 5), (6, 4), (6, 2), (8, 6), (8, 5), (8, 4), (7, 5), (7, 6), (7, 4),
    ];
    Graph::new(8, e.iter().map(|&(a, b)| (a - 1, b - 1))).unwrap()
}

pub fn diamond() -> Graph {
    Graph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn bowtie() -> Graph {
    Graph::new(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
}

pub fn petersen() -> Graph {
    let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    e.extend((0..5).map(|i| (i, i + 5)));
    Graph::new(10, e).unwrap()
}

/// Triangles `{0,1,2}` and `{3,4,5}` joined by the edge `2-3`.
pub fn joined_triangles() -> Graph {
    Graph::new(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]).unwrap()
}
