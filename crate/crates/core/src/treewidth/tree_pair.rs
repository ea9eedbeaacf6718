use super::ColoringFamily;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::list::{Color, ListAssignment};

/// Two colorings `φ1`, `φ2` of a tree with `{φ1(v), φ2(v)} = L(v)`.
///
/// Walks a BFS order from vertex 0; the root takes (smaller, larger) and
/// each child does the same unless that clashes with its parent.
pub fn tree_pair_family(g: &Graph, lists: &ListAssignment) -> Result<ColoringFamily> {
    lists.ensure_covers(g)?;
    if !g.is_tree() {
        return Err(Error::precondition("graph is not a tree"));
    }
    check_pairs(lists, (0..g.n()).collect::<Vec<_>>().as_slice())?;
    let mut order = Vec::with_capacity(g.n());
    let mut parent = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[0] = true;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                order.push(v);
            }
        }
    }
    let (a, b) = pair_walk(&order, &parent, |v| lists.get(v));
    Ok(ColoringFamily { members: vec![a, b], multiplicity: 1 })
}

pub(crate) fn check_pairs(lists: &ListAssignment, vertices: &[Vertex]) -> Result<()> {
    for &v in vertices {
        if lists.len_of(v) != 2 {
            return Err(Error::precondition(format!("list of vertex {v} has {} colors, expected 2", lists.len_of(v))));
        }
    }
    Ok(())
}

/// Assigns the two colorings along `order`, where `parent[v]` precedes `v`.
/// Indices are whatever `order` and `parent` use.
pub(crate) fn pair_walk<'a>(
    order: &[usize],
    parent: &[Option<usize>],
    list: impl Fn(usize) -> &'a [Color],
) -> (Vec<Color>, Vec<Color>) {
    let n = parent.len();
    let mut a = vec![0; n];
    let mut b = vec![0; n];
    for &v in order {
        let l = list(v);
        let (lo, hi) = (l[0], l[1]);
        let (x, y) = match parent[v] {
            Some(p) if lo == a[p] || hi == b[p] => (hi, lo),
            _ => (lo, hi),
        };
        a[v] = x;
        b[v] = y;
    }
    (a, b)
}
