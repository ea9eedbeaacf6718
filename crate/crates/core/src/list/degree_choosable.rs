use super::{Color, Coloring, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{block_cut_tree, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeChoosableOptions {
    /// Largest bad component decided by exhaustive search.
    pub bad_component_cap: usize,
}

impl Default for DegreeChoosableOptions {
    fn default() -> Self {
        DegreeChoosableOptions { bad_component_cap: 20 }
    }
}

pub fn degree_choosable_coloring(g: &Graph, lists: &ListAssignment) -> Result<Coloring> {
    degree_choosable_coloring_with(g, lists, &DegreeChoosableOptions::default())
}

/// L-colors a connected graph with `|L(v)| >= deg(v)` everywhere.
///
/// With a slack vertex the coloring is greedy by decreasing distance from
/// it. With tight lists and some block that is neither a clique nor an odd
/// cycle, backtracking always succeeds. Otherwise (a bad component) the
/// answer is decided by exhaustive search, and `Infeasible` is returned
/// when no coloring exists.
pub fn degree_choosable_coloring_with(
    g: &Graph,
    lists: &ListAssignment,
    opts: &DegreeChoosableOptions,
) -> Result<Coloring> {
    lists.ensure_covers(g)?;
    g.ensure_connected()?;
    for v in 0..g.n() {
        if lists.len_of(v) < g.degree(v) {
            return Err(Error::ListTooSmall { vertex: v, len: lists.len_of(v), required: g.degree(v) });
        }
    }
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    if let Some(root) = (0..g.n()).find(|&v| lists.len_of(v) > g.degree(v)) {
        return Ok(greedy_from(g, lists, root));
    }
    let bad = block_cut_tree(g)?.blocks.iter().all(|b| b.is_clique_or_odd_cycle());
    if bad && g.n() > opts.bad_component_cap {
        return Err(Error::BudgetExceeded(format!(
            "bad component on {} vertices exceeds the exhaustive cap {}",
            g.n(),
            opts.bad_component_cap
        )));
    }
    match backtrack(g, lists.as_slice().to_vec()) {
        Some(c) => Ok(c),
        None if bad => Err(Error::Infeasible { component: (0..g.n()).collect() }),
        None => Err(Error::internal("tight lists on a good component admitted no coloring")),
    }
}

/// Greedy in order of decreasing distance from `root`; every vertex but the
/// root still has an uncolored neighbor when its turn comes.
fn greedy_from(g: &Graph, lists: &ListAssignment, root: Vertex) -> Coloring {
    let dist = g.distances(root);
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(dist[v].unwrap()), v));
    let mut coloring: Vec<Option<Color>> = vec![None; g.n()];
    for v in order {
        let c = lists
            .get(v)
            .iter()
            .copied()
            .find(|&c| g.neighbors(v).iter().all(|&u| coloring[u] != Some(c)))
            .expect("degree bound leaves a free color");
        coloring[v] = Some(c);
    }
    coloring.into_iter().map(Option::unwrap).collect()
}

/// Complete search with smallest-domain-first ordering and forward checking.
pub(crate) fn backtrack(g: &Graph, mut domains: Vec<Vec<Color>>) -> Option<Coloring> {
    fn rec(g: &Graph, domains: &mut [Vec<Color>], assigned: &mut [Option<Color>]) -> bool {
        let next = (0..g.n()).filter(|&v| assigned[v].is_none()).min_by_key(|&v| (domains[v].len(), v));
        let Some(v) = next else { return true };
        for c in domains[v].clone() {
            assigned[v] = Some(c);
            let mut pruned = Vec::new();
            let mut dead = false;
            for &u in g.neighbors(v) {
                if assigned[u].is_none() {
                    if let Ok(i) = domains[u].binary_search(&c) {
                        domains[u].remove(i);
                        pruned.push(u);
                        if domains[u].is_empty() {
                            dead = true;
                            break;
                        }
                    }
                }
            }
            if !dead && rec(g, domains, assigned) {
                return true;
            }
            for u in pruned {
                let i = domains[u].binary_search(&c).unwrap_err();
                domains[u].insert(i, c);
            }
            assigned[v] = None;
        }
        false
    }
    if domains.iter().any(Vec::is_empty) {
        return None;
    }
    let mut assigned = vec![None; g.n()];
    rec(g, &mut domains, &mut assigned).then(|| assigned.into_iter().map(Option::unwrap).collect())
}
