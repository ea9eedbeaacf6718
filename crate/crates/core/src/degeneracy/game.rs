use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::Rational;

use super::hypergraph::UnionFind;

pub const DEFAULT_GAME_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameConnectivity {
    pub value: Rational,
    /// A minimizing set `R` (the first in bitmask order).
    pub witness: Vec<Vertex>,
}

fn members(mask: u32, n: usize) -> Vec<Vertex> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Whether `s` can be made leaves of one spanning tree: `g − s` is
/// connected and nonempty and every vertex of `s` has a neighbor outside.
fn removable(g: &Graph, s: u32) -> bool {
    let n = g.n();
    let removed: Vec<bool> = (0..n).map(|v| s >> v & 1 == 1).collect();
    if removed.iter().all(|&r| r) {
        return false;
    }
    if g.components_avoiding(&removed).len() != 1 {
        return false;
    }
    members(s, n).into_iter().all(|v| g.neighbors(v).iter().any(|&u| !removed[u]))
}

/// `best[R]` = largest `|S|` with `S ⊆ R` and `ok[S]`.
fn best_sub(n: usize, ok: &[bool]) -> Vec<u32> {
    let mut best = vec![0u32; 1 << n];
    for r in 0..(1u32 << n) {
        let mut b = if ok[r as usize] { r.count_ones() } else { 0 };
        for v in 0..n {
            if r >> v & 1 == 1 {
                b = b.max(best[(r & !(1 << v)) as usize]);
            }
        }
        best[r as usize] = b;
    }
    best
}

fn minimize(n: usize, best: &[u32]) -> GameConnectivity {
    let mut out: Option<(Rational, u32)> = None;
    for r in 1..(1u32 << n) {
        let l = Rational::new(best[r as usize] as i128, r.count_ones() as i128);
        if out.is_none_or(|(v, _)| l < v) {
            out = Some((l, r));
        }
    }
    let (value, r) = out.expect("graph has a vertex");
    GameConnectivity { value, witness: members(r, n) }
}

fn check_size(g: &Graph, cap: usize) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::precondition("graph has no vertices"));
    }
    if g.n() > cap.min(30) {
        return Err(Error::BudgetExceeded(format!("{} vertices exceed the cap of {}", g.n(), cap.min(30))));
    }
    g.ensure_connected()
}

/// Game connectivity by the remove-set formulation:
/// `l(R) = max |R′|/|R|` over removable `R′ ⊆ R`, minimized over `R ≠ ∅`.
pub fn exact_game_connectivity(g: &Graph, cap: usize) -> Result<GameConnectivity> {
    check_size(g, cap)?;
    let n = g.n();
    let ok: Vec<bool> = (0..(1u32 << n)).map(|s| s == 0 || removable(g, s)).collect();
    Ok(minimize(n, &best_sub(n, &ok)))
}

/// Game connectivity from the leaf sets of all spanning trees, enumerated
/// explicitly. Fails when more than `tree_budget` trees are found.
pub fn game_connectivity_by_leaves(g: &Graph, cap: usize, tree_budget: u64) -> Result<GameConnectivity> {
    check_size(g, cap)?;
    let n = g.n();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut leafsets = vec![false; 1 << n];
    let mut count = 0u64;
    let mut chosen = Vec::with_capacity(n);

    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        n: usize,
        edges: &[(Vertex, Vertex)],
        chosen: &mut Vec<usize>,
        leafsets: &mut [bool],
        count: &mut u64,
        budget: u64,
    ) -> Result<()> {
        if chosen.len() + 1 == n {
            let mut uf = UnionFind::new(n);
            for &j in chosen.iter() {
                if !uf.union(edges[j].0, edges[j].1) {
                    return Ok(());
                }
            }
            *count += 1;
            if *count > budget {
                return Err(Error::BudgetExceeded(format!("more than {budget} spanning trees")));
            }
            let mut deg = vec![0; n];
            for &j in chosen.iter() {
                deg[edges[j].0] += 1;
                deg[edges[j].1] += 1;
            }
            let mask = (0..n).filter(|&v| deg[v] == 1).fold(0u32, |m, v| m | 1 << v);
            leafsets[mask as usize] = true;
            return Ok(());
        }
        if edges.len() - i < n - 1 - chosen.len() {
            return Ok(());
        }
        // prune forests that already contain a cycle
        let mut uf = UnionFind::new(n);
        for &j in chosen.iter() {
            if !uf.union(edges[j].0, edges[j].1) {
                return Ok(());
            }
        }
        chosen.push(i);
        rec(i + 1, n, edges, chosen, leafsets, count, budget)?;
        chosen.pop();
        rec(i + 1, n, edges, chosen, leafsets, count, budget)
    }

    rec(0, n, &edges, &mut chosen, &mut leafsets, &mut count, tree_budget)?;
    let mut ok = leafsets;
    for s in (0..(1usize << n)).rev() {
        if !ok[s] {
            ok[s] = (0..n).any(|v| s >> v & 1 == 0 && ok[s | 1 << v]);
        }
    }
    Ok(minimize(n, &best_sub(n, &ok)))
}

/// `l(R)` for one set `R`.
pub fn leaf_fraction(g: &Graph, r: &[Vertex]) -> Result<Rational> {
    g.ensure_connected()?;
    let mut r = r.to_vec();
    r.sort_unstable();
    r.dedup();
    if r.is_empty() {
        return Err(Error::precondition("request set is empty"));
    }
    if g.n() > 32 || r.len() > 20 {
        return Err(Error::BudgetExceeded("leaf fraction needs n ≤ 32 and |R| ≤ 20".into()));
    }
    if let Some(&v) = r.iter().find(|&&v| v >= g.n()) {
        return Err(Error::precondition(format!("vertex {v} out of range")));
    }
    let mut best = 0;
    for sub in 0..(1u32 << r.len()) {
        let size = sub.count_ones();
        if size <= best {
            continue;
        }
        let s = members(sub, r.len()).iter().fold(0u64, |m, &i| m | 1 << r[i]);
        let removed: Vec<bool> = (0..g.n()).map(|v| s >> v & 1 == 1).collect();
        let ok = removed.iter().any(|&x| !x)
            && g.components_avoiding(&removed).len() == 1
            && (0..g.n()).filter(|&v| removed[v]).all(|v| g.neighbors(v).iter().any(|&u| !removed[u]));
        if ok {
            best = size;
        }
    }
    Ok(Rational::new(best as i128, r.len() as i128))
}
