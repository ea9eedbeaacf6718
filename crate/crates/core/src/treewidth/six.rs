use std::sync::OnceLock;

use super::ColoringFamily;
use crate::error::{Error, Result};
use crate::graph::{Graph, KTreeOrder};
use crate::list::{Color, ListAssignment};

/// Colors of one vertex across the six colorings.
pub type Column = [Color; 6];

/// The 90 arrangements of the multiset `{0,0,1,1,2,2}`, in lexicographic order.
fn arrangements() -> &'static [[usize; 6]] {
    static ALL: OnceLock<Vec<[usize; 6]>> = OnceLock::new();
    ALL.get_or_init(|| {
        let mut out = Vec::with_capacity(90);
        let mut cur = [0usize; 6];
        fn rec(i: usize, left: &mut [usize; 3], cur: &mut [usize; 6], out: &mut Vec<[usize; 6]>) {
            if i == 6 {
                out.push(*cur);
                return;
            }
            for c in 0..3 {
                if left[c] > 0 {
                    left[c] -= 1;
                    cur[i] = c;
                    rec(i + 1, left, cur, out);
                    left[c] += 1;
                }
            }
        }
        rec(0, &mut [2, 2, 2], &mut cur, &mut out);
        out
    })
}

fn pairs_distinct(a: &Column, b: &Column) -> bool {
    (0..6).all(|i| (i + 1..6).all(|j| (a[i], b[i]) != (a[j], b[j])))
}

fn each_twice(col: &Column, list: &[Color]) -> bool {
    list.len() == 3 && list.iter().all(|&c| col.iter().filter(|&&x| x == c).count() == 2)
}

/// The four admissibility conditions at an edge `uv`.
pub fn is_admissible(phi_u: &Column, phi_v: &Column, lu: &[Color], lv: &[Color]) -> bool {
    (0..6).all(|i| phi_u[i] != phi_v[i]) && pairs_distinct(phi_u, phi_v) && each_twice(phi_u, lu) && each_twice(phi_v, lv)
}

/// Lexicographically smallest admissible sequence of six `(φ(u), φ(v))`
/// pairs for a single edge.
pub fn seed_phi(lu: &[Color], lv: &[Color]) -> Result<(Column, Column)> {
    fn rec(
        i: usize,
        lu: &[Color],
        lv: &[Color],
        cu: &mut [usize; 3],
        cv: &mut [usize; 3],
        pu: &mut Column,
        pv: &mut Column,
    ) -> bool {
        if i == 6 {
            return true;
        }
        for x in 0..3 {
            if cu[x] == 2 {
                continue;
            }
            for y in 0..3 {
                if cv[y] == 2 || lu[x] == lv[y] || (0..i).any(|j| (pu[j], pv[j]) == (lu[x], lv[y])) {
                    continue;
                }
                cu[x] += 1;
                cv[y] += 1;
                pu[i] = lu[x];
                pv[i] = lv[y];
                if rec(i + 1, lu, lv, cu, cv, pu, pv) {
                    return true;
                }
                cu[x] -= 1;
                cv[y] -= 1;
            }
        }
        false
    }
    if lu.len() != 3 || lv.len() != 3 {
        return Err(Error::precondition("six-coloring families need lists of size 3"));
    }
    let (mut pu, mut pv) = ([0; 6], [0; 6]);
    if rec(0, lu, lv, &mut [0; 3], &mut [0; 3], &mut pu, &mut pv) {
        Ok((pu, pv))
    } else {
        Err(Error::internal(format!("no admissible seed for lists {lu:?} and {lv:?}")))
    }
}

/// Extends an admissible family at `uv` to a new vertex `w` adjacent to both,
/// keeping admissibility at `uw` and `vw`. Tries the 90 arrangements of
/// `L(w)` in lexicographic order.
pub fn extend_phi(phi_u: &Column, phi_v: &Column, lw: &[Color]) -> Result<Column> {
    if lw.len() != 3 {
        return Err(Error::precondition("six-coloring families need lists of size 3"));
    }
    for arr in arrangements() {
        let w: Column = std::array::from_fn(|i| lw[arr[i]]);
        if (0..6).all(|i| w[i] != phi_u[i] && w[i] != phi_v[i]) && pairs_distinct(phi_u, &w) && pairs_distinct(phi_v, &w)
        {
            return Ok(w);
        }
    }
    Err(Error::internal(format!(
        "no admissible extension of {phi_u:?}/{phi_v:?} to list {lw:?}"
    )))
}

/// Column of a lone vertex.
fn lone(l: &[Color]) -> Column {
    [l[0], l[0], l[1], l[1], l[2], l[2]]
}

/// Columns along a 2-tree order, indexed like `list`.
pub(crate) fn six_walk<'a>(
    n: usize,
    order: &[usize],
    back: impl Fn(usize) -> (usize, usize),
    list: impl Fn(usize) -> &'a [Color],
) -> Result<Vec<Column>> {
    let mut cols = vec![[0; 6]; n];
    match order.len() {
        0 => return Ok(cols),
        1 => {
            cols[order[0]] = lone(list(order[0]));
            return Ok(cols);
        }
        _ => {}
    }
    let (a, b) = seed_phi(list(order[0]), list(order[1]))?;
    cols[order[0]] = a;
    cols[order[1]] = b;
    for &w in &order[2..] {
        let (u, v) = back(w);
        cols[w] = extend_phi(&cols[u], &cols[v], list(w))?;
    }
    Ok(cols)
}

pub(crate) fn columns_to_members(cols: &[Column]) -> Vec<Vec<Color>> {
    (0..6).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// Six colorings of a 2-tree, admissible at every edge: each color of
/// each list appears exactly twice at its vertex.
pub fn two_tree_family(g: &Graph, order: &KTreeOrder, lists: &ListAssignment) -> Result<ColoringFamily> {
    lists.ensure_covers(g)?;
    if order.k != 2 || order.order.len() != g.n() {
        return Err(Error::precondition("a 2-tree order is required"));
    }
    for v in 0..g.n() {
        if lists.len_of(v) != 3 {
            return Err(Error::precondition(format!("list of vertex {v} has {} colors, expected 3", lists.len_of(v))));
        }
    }
    let cols = six_walk(g.n(), &order.order, |w| (order.back[w][0], order.back[w][1]), |v| lists.get(v))?;
    Ok(ColoringFamily { members: columns_to_members(&cols), multiplicity: 2 })
}
