//! Exhaustive ground truth on small instances.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::list::{Color, Coloring, ListAssignment, Request};
use crate::Rational;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Best satisfied amount over all proper L-colorings (0 when there are none).
    pub optimum: Rational,
    /// First optimal coloring in enumeration order; `None` iff uncolorable.
    pub witness: Option<Coloring>,
    /// Number of proper L-colorings enumerated.
    pub count: u64,
}

fn check_budget(lists: &ListAssignment, budget: u128) -> Result<()> {
    let product = lists.as_slice().iter().try_fold(1u128, |acc, l| acc.checked_mul(l.len() as u128));
    match product {
        Some(p) if p <= budget => Ok(()),
        _ => Err(Error::BudgetExceeded(format!(
            "product of list sizes {} exceeds budget {budget}",
            product.map_or("overflows".into(), |p| p.to_string())
        ))),
    }
}

/// Vertices by list size, then id.
fn static_order(lists: &ListAssignment) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..lists.n()).collect();
    order.sort_by_key(|&v| (lists.len_of(v), v));
    order
}

struct Enumerator<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    order: Vec<Vertex>,
    weight: Vec<Vec<Rational>>,
    current: Vec<Option<Color>>,
    stop_at_first: bool,
    best: Option<(Rational, Coloring)>,
    count: u64,
}

impl Enumerator<'_> {
    fn run(&mut self, depth: usize, acc: Rational) -> bool {
        if depth == self.order.len() {
            self.count += 1;
            if self.best.as_ref().is_none_or(|(b, _)| acc > *b) {
                self.best = Some((acc, self.current.iter().map(|c| c.unwrap()).collect()));
            }
            return self.stop_at_first;
        }
        let v = self.order[depth];
        for (i, &c) in self.lists.get(v).iter().enumerate() {
            if self.g.neighbors(v).iter().any(|&u| self.current[u] == Some(c)) {
                continue;
            }
            self.current[v] = Some(c);
            let stop = self.run(depth + 1, acc + self.weight[v][i]);
            self.current[v] = None;
            if stop {
                return true;
            }
        }
        false
    }
}

fn enumerate(g: &Graph, lists: &ListAssignment, r: &Request, budget: u128, stop_at_first: bool) -> Result<OracleResult> {
    lists.ensure_covers(g)?;
    r.validate(lists)?;
    check_budget(lists, budget)?;
    let mut weight: Vec<Vec<Rational>> =
        (0..g.n()).map(|v| vec![Rational::from_integer(0); lists.len_of(v)]).collect();
    for e in r.entries() {
        let i = lists.get(e.vertex).binary_search(&e.color).unwrap();
        weight[e.vertex][i] += e.weight;
    }
    let mut en = Enumerator {
        g,
        lists,
        order: static_order(lists),
        weight,
        current: vec![None; g.n()],
        stop_at_first,
        best: None,
        count: 0,
    };
    en.run(0, Rational::from_integer(0));
    let (optimum, witness) = match en.best {
        Some((o, w)) => (o, Some(w)),
        None => (Rational::from_integer(0), None),
    };
    Ok(OracleResult { optimum, witness, count: en.count })
}

pub fn optimal_satisfaction(g: &Graph, lists: &ListAssignment, r: &Request) -> Result<OracleResult> {
    optimal_satisfaction_with(g, lists, r, DEFAULT_BUDGET)
}

/// Exact maximum of the satisfied amount over every proper L-coloring.
pub fn optimal_satisfaction_with(g: &Graph, lists: &ListAssignment, r: &Request, budget: u128) -> Result<OracleResult> {
    enumerate(g, lists, r, budget, false)
}

/// Whether at least one proper L-coloring exists.
pub fn is_degree_choosable_here(g: &Graph, lists: &ListAssignment) -> Result<bool> {
    is_degree_choosable_here_with(g, lists, DEFAULT_BUDGET)
}

pub fn is_degree_choosable_here_with(g: &Graph, lists: &ListAssignment, budget: u128) -> Result<bool> {
    Ok(enumerate(g, lists, &Request::empty(), budget, true)?.witness.is_some())
}

/// Largest component accepted by [`bruteforce_bad_component`].
pub const BAD_COMPONENT_CAP: usize = 16;

/// Recomputes the bad-component definition from scratch: every list has
/// exactly `deg(v)` colors and every block (found by subset enumeration) is
/// a clique or an odd cycle. Lists may be empty.
pub fn bruteforce_bad_component(g: &Graph, lists: &[Vec<Color>]) -> Result<bool> {
    if g.n() > BAD_COMPONENT_CAP {
        return Err(Error::BudgetExceeded(format!("component of {} vertices exceeds {BAD_COMPONENT_CAP}", g.n())));
    }
    if lists.len() != g.n() {
        return Err(Error::precondition("one list per vertex required"));
    }
    if !g.is_connected() || g.n() == 0 {
        return Err(Error::precondition("component must be connected and non-empty"));
    }
    if (0..g.n()).any(|v| lists[v].len() != g.degree(v)) {
        return Ok(false);
    }
    Ok(brute_force_blocks(g).iter().all(|b| {
        let h = g.induced(b);
        h.is_complete() || h.is_odd_cycle()
    }))
}

/// Maximal vertex sets inducing a connected subgraph without cut-vertex.
pub fn brute_force_blocks(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    if n == 1 {
        return vec![vec![0]];
    }
    let mut good: Vec<u64> = Vec::new();
    for mask in 1u64..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let vs: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let h = g.induced(&vs);
        if !h.is_connected() {
            continue;
        }
        let mut removed = vec![false; h.n()];
        let no_cut = (0..h.n()).all(|x| {
            removed[x] = true;
            let ok = h.components_avoiding(&removed).len() <= 1;
            removed[x] = false;
            ok
        });
        if no_cut {
            good.push(mask);
        }
    }
    let mut blocks: Vec<Vec<Vertex>> = good
        .iter()
        .filter(|&&m| !good.iter().any(|&o| o != m && o & m == m))
        .map(|&m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    blocks.sort();
    blocks
}
