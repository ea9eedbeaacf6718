use super::six::{columns_to_members, six_walk};
use super::tree_pair::pair_walk;
use super::ColoringFamily;
use crate::error::{Error, Result};
use crate::graph::{validate_ktree_order, Graph, KTreeOrder, Vertex};
use crate::list::{Color, Coloring, ListAssignment};

pub const DEFAULT_FAMILY_CAP: u128 = 1_000_000;

/// A partition `λ = (λ_1, …, λ_t)` of `k + 1` together with disjoint color
/// classes `C_1, …, C_t`. The last part drives the recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaAssignment {
    pub parts: Vec<usize>,
    pub classes: Vec<Vec<Color>>,
}

impl LambdaAssignment {
    pub fn new(parts: Vec<usize>, classes: Vec<Vec<Color>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::precondition("λ must have at least one part"));
        }
        if parts.len() != classes.len() {
            return Err(Error::precondition(format!(
                "λ has {} parts but {} color classes were given",
                parts.len(),
                classes.len()
            )));
        }
        if let Some(&p) = parts.iter().find(|&&p| p > 3) {
            return Err(Error::Unsupported(format!(
                "λ part of size {p}: only parts of size at most 3 are supported; \
                 a uniform family of (k+1)! colorings of a k-tree is not known for k ≥ 3"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::precondition("λ parts must be positive"));
        }
        let mut classes = classes;
        for c in &mut classes {
            c.sort_unstable();
            c.dedup();
        }
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                if let Some(c) = classes[i].iter().find(|c| classes[j].binary_search(c).is_ok()) {
                    return Err(Error::precondition(format!("color {c} lies in classes {i} and {j}")));
                }
            }
        }
        Ok(LambdaAssignment { parts, classes })
    }

    /// `k` such that the parts sum to `k + 1`.
    pub fn k(&self) -> usize {
        self.parts.iter().sum::<usize>() - 1
    }

    fn class_of(&self, c: Color) -> Option<usize> {
        self.classes.iter().position(|cl| cl.binary_search(&c).is_ok())
    }

    /// Checks `|L(v) ∩ C_i| = λ_i` for every vertex and class.
    pub fn validate(&self, lists: &ListAssignment) -> Result<()> {
        for v in 0..lists.n() {
            let mut count = vec![0; self.parts.len()];
            for &c in lists.get(v) {
                match self.class_of(c) {
                    Some(i) => count[i] += 1,
                    None => {
                        return Err(Error::precondition(format!("color {c} of vertex {v} lies in no class")));
                    }
                }
            }
            if let Some(i) = (0..count.len()).find(|&i| count[i] != self.parts[i]) {
                return Err(Error::precondition(format!(
                    "vertex {v} has {} colors in class {i}, expected {}",
                    count[i], self.parts[i]
                )));
            }
        }
        Ok(())
    }
}

fn binom(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Size of the family built for `parts`: each level multiplies by
/// `(C(k, λ_t − 1) + C(k, λ_t)) · λ_t!`. `None` on overflow.
pub fn family_size(parts: &[usize]) -> Option<u128> {
    let mut size: u128 = 1;
    let mut k1: usize = parts.iter().sum();
    for (i, &lt) in parts.iter().enumerate().rev() {
        let fact: u128 = (1..=lt as u128).product();
        let level = if i == 0 { fact } else { (binom(k1 - 1, lt - 1) + binom(k1 - 1, lt)) * fact };
        size = size.checked_mul(level)?;
        k1 -= lt;
    }
    Some(size)
}

/// Grows `A` (a subset of the first `k` vertices of the order) into `S_A`:
/// a later vertex joins when exactly `k − λ_t` of its back-neighbors are in.
/// Returned in order position.
pub fn build_sa(order: &KTreeOrder, a: &[Vertex], lambda_t: usize) -> Result<Vec<Vertex>> {
    let k = order.k;
    if lambda_t == 0 || lambda_t > k {
        return Err(Error::precondition(format!("λ_t = {lambda_t} outside 1..={k}")));
    }
    let m = k - lambda_t;
    if a.len() != m && a.len() != m + 1 {
        return Err(Error::precondition(format!("|A| = {} but must be {m} or {}", a.len(), m + 1)));
    }
    let n = order.order.len();
    let mut inside = vec![false; n];
    for &v in a {
        if v >= n || order.position[v] >= k {
            return Err(Error::precondition(format!("vertex {v} is not among the first {k} of the order")));
        }
        inside[v] = true;
    }
    Ok(sa_from(order, &inside, m))
}

fn sa_from(order: &KTreeOrder, inside: &[bool], m: usize) -> Vec<Vertex> {
    let mut inside = inside.to_vec();
    let mut out = Vec::new();
    for (i, &v) in order.order.iter().enumerate() {
        if i >= order.k && order.back[v].iter().filter(|&&u| inside[u]).count() == m {
            inside[v] = true;
        }
        if inside[v] {
            out.push(v);
        }
    }
    out
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(0, n, r, &mut Vec::new(), &mut out);
    }
    out
}

pub fn lambda_family(
    g: &Graph,
    order: &KTreeOrder,
    lam: &LambdaAssignment,
    lists: &ListAssignment,
) -> Result<ColoringFamily> {
    lambda_family_with(g, order, lam, lists, DEFAULT_FAMILY_CAP)
}

/// A family of `(k+1)!` L-colorings of a k-tree in which every color of
/// every list appears at its vertex in exactly `1/(k+1)` of the members.
pub fn lambda_family_with(
    g: &Graph,
    order: &KTreeOrder,
    lam: &LambdaAssignment,
    lists: &ListAssignment,
    cap: u128,
) -> Result<ColoringFamily> {
    lists.ensure_covers(g)?;
    let k = lam.k();
    if order.k != k || order.order.len() != g.n() {
        return Err(Error::precondition(format!("a {k}-tree order of all {} vertices is required", g.n())));
    }
    lam.validate(lists)?;
    let size = family_size(&lam.parts).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::BudgetExceeded(format!("family would have {size} members, cap is {cap}")));
    }
    let local: Vec<Vec<Color>> = order.order.iter().map(|&v| lists.get(v).to_vec()).collect();
    let sub = g.induced(&order.order);
    let identity: Vec<usize> = (0..g.n()).collect();
    let members = level(&sub, &identity, &local, &lam.parts, &lam.classes)?;
    let members: Vec<Coloring> = members
        .into_iter()
        .map(|m| {
            let mut out = vec![0; g.n()];
            for (i, &v) in order.order.iter().enumerate() {
                out[v] = m[i];
            }
            out
        })
        .collect();
    let multiplicity = members.len() / (k + 1);
    Ok(ColoringFamily { members, multiplicity })
}

/// Members on a graph whose vertices are already numbered in order.
fn level(g: &Graph, order: &[usize], lists: &[Vec<Color>], parts: &[usize], classes: &[Vec<Color>]) -> Result<Vec<Coloring>> {
    let k = parts.iter().sum::<usize>() - 1;
    let ko = validate_ktree_order(g, k, order)
        .map_err(|e| Error::internal(format!("derived {k}-tree order rejected: {}", e.reason)))?;
    let t = parts.len();
    if t == 1 {
        return base(&ko, lists, parts[0]);
    }
    let lt = parts[t - 1];
    let ct = &classes[t - 1];
    let m = k - lt;
    let n = g.n();
    let first = n.min(k);
    let mut out = Vec::new();
    for size in [m + 1, m] {
        for a in combinations(first, size) {
            let mut inside = vec![false; n];
            for &p in &a {
                inside[ko.order[p]] = true;
            }
            let s = sa_from(&ko, &inside, m);
            let mut in_s = vec![false; n];
            for &v in &s {
                in_s[v] = true;
            }
            let rest: Vec<usize> = ko.order.iter().copied().filter(|&v| !in_s[v]).collect();

            let split = |vs: &[usize], keep: bool| -> Vec<Vec<Color>> {
                vs.iter()
                    .map(|&v| lists[v].iter().copied().filter(|c| ct.binary_search(c).is_ok() != keep).collect())
                    .collect()
            };
            let ident1: Vec<usize> = (0..s.len()).collect();
            let d1 = level(&g.induced(&s), &ident1, &split(&s, true), &parts[..t - 1], &classes[..t - 1])?;
            let g2 = g.induced(&rest);
            let ident2: Vec<usize> = (0..rest.len()).collect();
            let ko2 = validate_ktree_order(&g2, lt - 1, &ident2)
                .map_err(|e| Error::internal(format!("complement is not a {}-tree: {}", lt - 1, e.reason)))?;
            let d2 = base(&ko2, &split(&rest, false), lt)?;
            for c1 in &d1 {
                for c2 in &d2 {
                    let mut col = vec![0; n];
                    for (i, &v) in s.iter().enumerate() {
                        col[v] = c1[i];
                    }
                    for (i, &v) in rest.iter().enumerate() {
                        col[v] = c2[i];
                    }
                    out.push(col);
                }
            }
        }
    }
    Ok(out)
}

/// One part: lists of size `lam` on a `(lam − 1)`-tree.
fn base(ko: &KTreeOrder, lists: &[Vec<Color>], lam: usize) -> Result<Vec<Coloring>> {
    let n = lists.len();
    if let Some(v) = (0..n).find(|&v| lists[v].len() != lam) {
        return Err(Error::internal(format!("sub-list of vertex {v} has {} colors, expected {lam}", lists[v].len())));
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    match lam {
        1 => Ok(vec![lists.iter().map(|l| l[0]).collect()]),
        2 => {
            let parent: Vec<Option<usize>> = (0..n).map(|v| ko.back[v].first().copied()).collect();
            let (a, b) = pair_walk(&ko.order, &parent, |v| lists[v].as_slice());
            Ok(vec![a, b])
        }
        3 => {
            let cols = six_walk(n, &ko.order, |w| (ko.back[w][0], ko.back[w][1]), |v| lists[v].as_slice())?;
            Ok(columns_to_members(&cols))
        }
        _ => Err(Error::Unsupported(format!("λ part of size {lam}"))),
    }
}
