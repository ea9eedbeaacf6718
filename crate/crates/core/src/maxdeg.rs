//! Flexible list coloring of graphs with maximum degree Δ ≥ 3 and lists of
//! size Δ (size `deg + 1` below Δ).

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{block_cut_tree, independent_request_subset, Block, BlockKind, ColoringMode, Graph, Vertex};
use crate::list::{
    precolor_and_extend_with, reduce_to_unique, satisfied_amount, Color, Coloring, DegreeChoosableOptions,
    ListAssignment, Request, RequestKind,
};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxDegOptions {
    pub mode: ColoringMode,
    pub bad_component_cap: usize,
}

impl Default for MaxDegOptions {
    fn default() -> Self {
        MaxDegOptions { mode: ColoringMode::Brooks, bad_component_cap: DegreeChoosableOptions::default().bad_component_cap }
    }
}

/// One component of `g - S` with its pruned lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadComponentReport {
    /// Sorted vertex set.
    pub vertices: Vec<Vertex>,
    /// Pruned lists, aligned with `vertices`.
    pub lists: Vec<Vec<Color>>,
    /// Blocks of the component, in global vertex ids.
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
    pub bad: bool,
}

impl BadComponentReport {
    pub fn terminal_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.terminal)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Pruned list `L(v)` minus the preferred colors of neighbors in `S`.
fn pruned_list(g: &Graph, lists: &ListAssignment, pref: &[Option<Color>], v: Vertex) -> Vec<Color> {
    let mut l = lists.get(v).to_vec();
    l.retain(|c| !g.neighbors(v).iter().any(|&u| pref[u] == Some(*c)));
    l
}

fn is_tight(g: &Graph, comp: &[Vertex], lists: &[Vec<Color>]) -> bool {
    comp.iter().zip(lists).all(|(&v, l)| {
        let deg = g.neighbors(v).iter().filter(|u| comp.binary_search(u).is_ok()).count();
        l.len() == deg
    })
}

fn report(g: &Graph, comp: Vec<Vertex>, lists: Vec<Vec<Color>>) -> Result<BadComponentReport> {
    let sub = g.induced(&comp);
    let tree = block_cut_tree(&sub)?;
    let blocks: Vec<Block> = tree
        .blocks
        .into_iter()
        .map(|b| Block {
            vertices: b.vertices.iter().map(|&i| comp[i]).collect(),
            edges: b.edges.iter().map(|&(x, y)| (comp[x], comp[y])).collect(),
            kind: b.kind,
            terminal: b.terminal,
        })
        .collect();
    let cut_vertices = tree.cut_vertices.iter().map(|&i| comp[i]).collect();
    let bad = is_tight(g, &comp, &lists) && blocks.iter().all(Block::is_clique_or_odd_cycle);
    Ok(BadComponentReport { vertices: comp, lists, blocks, cut_vertices, bad })
}

fn classify_with(g: &Graph, lists: &ListAssignment, pref: &[Option<Color>]) -> Result<Vec<BadComponentReport>> {
    let removed: Vec<bool> = pref.iter().map(Option::is_some).collect();
    g.components_avoiding(&removed)
        .into_iter()
        .map(|comp| {
            let l = comp.iter().map(|&v| pruned_list(g, lists, pref, v)).collect();
            report(g, comp, l)
        })
        .collect()
}

/// Components of `g - S` with lists pruned by the preferences of `S`, each
/// tagged bad or good.
pub fn classify_components(
    g: &Graph,
    lists: &ListAssignment,
    prefs: &[(Vertex, Color)],
) -> Result<Vec<BadComponentReport>> {
    lists.ensure_covers(g)?;
    let pref = pref_vector(g.n(), lists, prefs)?;
    classify_with(g, lists, &pref)
}

fn pref_vector(n: usize, lists: &ListAssignment, prefs: &[(Vertex, Color)]) -> Result<Vec<Option<Color>>> {
    let mut pref = vec![None; n];
    for &(v, c) in prefs {
        if v >= n {
            return Err(Error::precondition(format!("precolored vertex {v} outside the graph")));
        }
        if pref[v].is_some() {
            return Err(Error::precondition(format!("vertex {v} precolored twice")));
        }
        if !lists.contains(v, c) {
            return Err(Error::OffList { vertex: v, color: c });
        }
        pref[v] = Some(c);
    }
    Ok(pref)
}

/// The set `R'` split into `R''` (still precolored) and `R⁺` (released),
/// together with the classification of `g - R''`.
#[derive(Debug, Clone)]
pub struct PrecolorState<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    /// Preferences of `R''` only.
    active: Vec<Option<Color>>,
    released: Vec<Vertex>,
    reports: Vec<BadComponentReport>,
    comp_of: Vec<usize>,
}

impl<'a> PrecolorState<'a> {
    pub fn new(g: &'a Graph, lists: &'a ListAssignment, prefs: &[(Vertex, Color)]) -> Result<Self> {
        lists.ensure_covers(g)?;
        let active = pref_vector(g.n(), lists, prefs)?;
        let mut s = PrecolorState {
            g,
            lists,
            active,
            released: Vec::new(),
            reports: Vec::new(),
            comp_of: Vec::new(),
        };
        s.reclassify()?;
        Ok(s)
    }

    fn reclassify(&mut self) -> Result<()> {
        self.reports = classify_with(self.g, self.lists, &self.active)?;
        self.comp_of = vec![usize::MAX; self.g.n()];
        for (i, r) in self.reports.iter().enumerate() {
            for &v in &r.vertices {
                self.comp_of[v] = i;
            }
        }
        Ok(())
    }

    /// `R''`, ascending.
    pub fn remaining(&self) -> Vec<Vertex> {
        (0..self.g.n()).filter(|&v| self.active[v].is_some()).collect()
    }

    /// `R⁺` in the order vertices were released.
    pub fn released(&self) -> &[Vertex] {
        &self.released
    }

    pub fn reports(&self) -> &[BadComponentReport] {
        &self.reports
    }

    pub fn bad_count(&self) -> usize {
        self.reports.iter().filter(|r| r.bad).count()
    }

    /// Distinct components adjacent to `r`, ascending.
    fn adjacent_components(&self, r: Vertex) -> Vec<usize> {
        let set: BTreeSet<usize> =
            self.g.neighbors(r).iter().map(|&u| self.comp_of[u]).filter(|&c| c != usize::MAX).collect();
        set.into_iter().collect()
    }

    /// Indices of bad components adjacent to `r`.
    pub fn adjacent_bad(&self, r: Vertex) -> Vec<usize> {
        self.adjacent_components(r).into_iter().filter(|&c| self.reports[c].bad).collect()
    }

    fn ensure_remaining(&self, r: Vertex) -> Result<()> {
        if r >= self.g.n() || self.active[r].is_none() {
            return Err(Error::precondition(format!("vertex {r} is not in R''")));
        }
        Ok(())
    }

    /// Decrease in the number of bad components when `r` is released,
    /// by full reclassification.
    pub fn b_value(&self, r: Vertex) -> Result<i64> {
        self.ensure_remaining(r)?;
        let mut active = self.active.clone();
        active[r] = None;
        let after = classify_with(self.g, self.lists, &active)?.iter().filter(|x| x.bad).count();
        Ok(self.bad_count() as i64 - after as i64)
    }

    /// Same value as [`PrecolorState::b_value`], reclassifying only the
    /// component that `r` joins.
    pub(crate) fn local_b(&self, r: Vertex) -> Result<i64> {
        let adj = self.adjacent_components(r);
        let bad_adj = adj.iter().filter(|&&c| self.reports[c].bad).count() as i64;
        let mut merged = vec![r];
        for &c in &adj {
            merged.extend_from_slice(&self.reports[c].vertices);
        }
        merged.sort_unstable();
        let mut active = self.active.clone();
        active[r] = None;
        let lists: Vec<Vec<Color>> = merged.iter().map(|&v| pruned_list(self.g, self.lists, &active, v)).collect();
        let merged_bad = if is_tight(self.g, &merged, &lists) { report(self.g, merged, lists)?.bad } else { false };
        Ok(bad_adj - i64::from(merged_bad))
    }

    /// Moves `r` from `R''` to `R⁺`.
    pub fn release(&mut self, r: Vertex) -> Result<()> {
        self.ensure_remaining(r)?;
        self.active[r] = None;
        self.released.push(r);
        self.reclassify()
    }

    pub fn active_prefs(&self) -> Vec<(Vertex, Color)> {
        (0..self.g.n()).filter_map(|v| self.active[v].map(|c| (v, c))).collect()
    }

    /// Checks the edge count between each bad component `A` and `R''`: it
    /// equals `Σ (Δ - deg_A(v))`, is exactly Δ for `K_Δ` and `K_1`, and at
    /// least `2Δ - 2` otherwise.
    pub fn check_edge_counts(&self, delta: usize) -> Result<()> {
        for rep in self.reports.iter().filter(|r| r.bad) {
            let mut edges = 0;
            let mut deficit = 0;
            for &v in &rep.vertices {
                let deg_a = self.g.neighbors(v).iter().filter(|u| rep.contains(**u)).count();
                edges += self.g.neighbors(v).iter().filter(|&&u| self.active[u].is_some()).count();
                deficit += delta.checked_sub(deg_a).ok_or_else(|| Error::internal("degree above Δ"))?;
            }
            let k = rep.vertices.len();
            let small = k == 1 || (k == delta && rep.blocks.len() == 1 && rep.blocks[0].kind == BlockKind::Clique);
            let ok = edges == deficit && if small { edges == delta } else { edges + 2 >= 2 * delta };
            if !ok {
                return Err(Error::internal(format!(
                    "bad component at {} has {edges} edges to R'' (deficit {deficit}, Δ = {delta})",
                    rep.vertices[0]
                )));
            }
        }
        Ok(())
    }

    /// The bipartite graph between `R''` and the bad components.
    pub fn discharge_diagnostic(&self) -> DischargeDiagnostic {
        let bad: Vec<usize> = (0..self.reports.len()).filter(|&c| self.reports[c].bad).collect();
        let mut deg_a = vec![0usize; self.reports.len()];
        let mut max_deg_r = 0;
        let remaining = self.remaining();
        for &r in &remaining {
            let adj = self.adjacent_bad(r);
            max_deg_r = max_deg_r.max(adj.len());
            for c in adj {
                deg_a[c] += 1;
            }
        }
        let min_deg_a = bad.iter().map(|&c| deg_a[c]).min();
        let r_count = remaining.len();
        let d_count = bad.len();
        let holds = max_deg_r <= 2 && min_deg_a.is_none_or(|d| d >= 2) && 4 * r_count >= 5 * d_count;
        DischargeDiagnostic { r_count, d_count, max_deg_r, min_deg_a, holds }
    }
}

/// Auxiliary bipartite graph H after process (P): `R''` against the set D
/// of bad components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DischargeDiagnostic {
    pub r_count: usize,
    pub d_count: usize,
    pub max_deg_r: usize,
    pub min_deg_a: Option<usize>,
    /// `deg_H(r) <= 2`, `deg_H(A) >= 2` and `|R''| >= 5/4 |D|`.
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Released while some vertex had `b >= 2`.
    Merge,
    /// Released as a neighbor of a bad component with `b = 1`.
    Cleanup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub vertex: Vertex,
    pub b: i64,
    pub phase: Phase,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub r_prime: Vec<Vertex>,
    pub r_plus: Vec<Vertex>,
    pub r_double_prime: Vec<Vertex>,
    pub steps: Vec<Step>,
    /// Colors used by the coloring `R'` was extracted from.
    pub chi: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverOutcome {
    pub coloring: Coloring,
    pub satisfied: Rational,
    pub total: Rational,
    /// Certified fraction of `total`.
    pub fraction: Rational,
    /// `fraction * total`.
    pub certified: Rational,
    pub note: String,
    pub mode: ColoringMode,
    pub trace: Trace,
    pub diagnostic: Option<DischargeDiagnostic>,
}

impl SolverOutcome {
    pub fn meets_bound(&self) -> bool {
        self.satisfied >= self.certified
    }
}

/// Checks the common preconditions and returns Δ.
pub fn validate_instance(g: &Graph, lists: &ListAssignment, r: &Request) -> Result<usize> {
    lists.ensure_covers(g)?;
    g.ensure_connected()?;
    let delta = g.max_degree();
    if delta < 3 {
        return Err(Error::precondition(format!("maximum degree {delta} is below 3")));
    }
    if g.is_complete() {
        return Err(Error::CompleteGraph { n: g.n() });
    }
    for v in 0..g.n() {
        let d = g.degree(v);
        let required = if d < delta { d + 1 } else { d };
        if lists.len_of(v) < required {
            return Err(Error::ListTooSmall { vertex: v, len: lists.len_of(v), required });
        }
    }
    r.validate(lists)?;
    Ok(delta)
}

fn finish(
    g: &Graph,
    lists: &ListAssignment,
    r: &Request,
    fixed: &[(Vertex, Color)],
    opts: &MaxDegOptions,
) -> Result<(Coloring, Rational)> {
    let dc = DegreeChoosableOptions { bad_component_cap: opts.bad_component_cap };
    let coloring = precolor_and_extend_with(g, lists, fixed, &dc)?;
    let satisfied = satisfied_amount(g, lists, &coloring, r)?;
    Ok((coloring, satisfied))
}

fn empty_outcome(g: &Graph, lists: &ListAssignment, r: &Request, opts: &MaxDegOptions) -> Result<SolverOutcome> {
    let (coloring, satisfied) = finish(g, lists, r, &[], opts)?;
    Ok(SolverOutcome {
        coloring,
        satisfied,
        total: r.total(),
        fraction: Rational::from_integer(0),
        certified: Rational::from_integer(0),
        note: "empty request".into(),
        mode: opts.mode,
        trace: Trace::default(),
        diagnostic: None,
    })
}

/// At least `|R| / (6Δ)` requests satisfied (`|R| / (6(Δ+1))` when the
/// independent set comes from greedy coloring).
pub fn solve_unweighted(g: &Graph, lists: &ListAssignment, r: &Request, opts: &MaxDegOptions) -> Result<SolverOutcome> {
    let delta = validate_instance(g, lists, r)?;
    if r.kind() == RequestKind::Weighted {
        return Err(Error::precondition("unweighted solver needs at most one requested color per vertex"));
    }
    if r.is_empty() {
        return empty_outcome(g, lists, r, opts);
    }
    let domain = r.domain();
    let sub = independent_request_subset(g, &domain, 1, None, opts.mode)?;
    let prefs: Vec<(Vertex, Color)> = sub.vertices.iter().map(|&v| (v, r.color_of(v).unwrap())).collect();
    let mut state = PrecolorState::new(g, lists, &prefs)?;
    state.check_edge_counts(delta)?;
    let mut steps = Vec::new();

    let pick_merge = |state: &PrecolorState| -> Result<Option<(Vertex, i64)>> {
        for v in state.remaining() {
            let b = state.local_b(v)?;
            if b >= 2 {
                return Ok(Some((v, b)));
            }
        }
        Ok(None)
    };

    while let Some((v, b)) = pick_merge(&state)? {
        state.release(v)?;
        state.check_edge_counts(delta)?;
        steps.push(Step { vertex: v, b, phase: Phase::Merge });
    }
    let diagnostic = state.discharge_diagnostic();
    if !diagnostic.holds {
        return Err(Error::internal(format!("discharging diagnostic failed: {diagnostic:?}")));
    }
    while state.bad_count() > 0 {
        let (v, b, phase) = match pick_merge(&state)? {
            Some((v, b)) => (v, b, Phase::Merge),
            None => {
                let v = state
                    .remaining()
                    .into_iter()
                    .find(|&v| !state.adjacent_bad(v).is_empty())
                    .ok_or_else(|| Error::internal("bad component with no neighbor in R''"))?;
                let b = state.local_b(v)?;
                if b < 1 {
                    return Err(Error::internal(format!("neighbor {v} of a bad component has b = {b}")));
                }
                (v, b, Phase::Cleanup)
            }
        };
        state.release(v)?;
        state.check_edge_counts(delta)?;
        steps.push(Step { vertex: v, b, phase });
    }

    let fixed = state.active_prefs();
    let (coloring, satisfied) = finish(g, lists, r, &fixed, opts)?;
    let (fraction, note) = match sub.mode {
        ColoringMode::Brooks => (Rational::new(1, 6 * delta as i128), format!("|R|/(6Δ), Δ = {delta}, brooks independent set")),
        ColoringMode::Greedy => {
            (Rational::new(1, 6 * (delta as i128 + 1)), format!("|R|/(6(Δ+1)), Δ = {delta}, greedy independent set"))
        }
    };
    let total = r.total();
    Ok(SolverOutcome {
        coloring,
        satisfied,
        total,
        fraction,
        certified: fraction * total,
        note,
        mode: sub.mode,
        trace: Trace {
            r_prime: sub.vertices,
            r_plus: state.released().to_vec(),
            r_double_prime: state.remaining(),
            steps,
            chi: sub.chi,
        },
        diagnostic: Some(diagnostic),
    })
}

/// At least `total / (2Δ³)` of the weight for unweighted and uniquely
/// weighted requests, `total / (2Δ³ max|L|)` for general weights.
pub fn solve_weighted(g: &Graph, lists: &ListAssignment, r: &Request, opts: &MaxDegOptions) -> Result<SolverOutcome> {
    let delta = validate_instance(g, lists, r)?;
    if r.is_empty() {
        return empty_outcome(g, lists, r, opts);
    }
    let unique = reduce_to_unique(r);
    let domain: Vec<Vertex> = unique.entries().iter().map(|e| e.vertex).collect();
    let weights: Vec<Rational> = unique.entries().iter().map(|e| e.weight).collect();
    let weight_of = |v: Vertex| weights[domain.binary_search(&v).unwrap()];
    let sub = independent_request_subset(g, &domain, 3, Some(&weights), ColoringMode::Greedy)?;

    let mut in_r1 = vec![false; g.n()];
    for &v in &sub.vertices {
        in_r1[v] = true;
    }
    for v in 0..g.n() {
        if !in_r1[v] && g.neighbors(v).iter().filter(|&&u| in_r1[u]).count() > 1 {
            return Err(Error::internal(format!("vertex {v} has two neighbors in the distance-3 set")));
        }
    }

    let prefs: Vec<(Vertex, Color)> = sub.vertices.iter().map(|&v| (v, unique.color_of(v).unwrap())).collect();
    let mut state = PrecolorState::new(g, lists, &prefs)?;
    state.check_edge_counts(delta)?;
    let mut plus: BTreeSet<Vertex> = BTreeSet::new();
    for rep in state.reports().iter().filter(|x| x.bad) {
        let mut best: Option<Vertex> = None;
        for block in rep.terminal_blocks() {
            for &x in block.vertices.iter().filter(|&&x| rep.cut_vertices.binary_search(&x).is_err()) {
                for &u in g.neighbors(x).iter().filter(|&&u| in_r1[u]) {
                    if best.is_none_or(|b| (weight_of(u), u) < (weight_of(b), b)) {
                        best = Some(u);
                    }
                }
            }
        }
        let u = best.ok_or_else(|| {
            Error::internal(format!("bad component at {} has no R' neighbor at a terminal block", rep.vertices[0]))
        })?;
        plus.insert(u);
    }
    for &u in &plus {
        state.release(u)?;
    }
    if state.bad_count() > 0 {
        return Err(Error::internal("bad components survive releasing terminal-block neighbors"));
    }

    let fixed = state.active_prefs();
    let (coloring, satisfied) = finish(g, lists, r, &fixed, opts)?;
    let d3 = (delta as i128).pow(3);
    let (fraction, note) = if r.kind() == RequestKind::Weighted {
        let m = lists.max_len() as i128;
        (Rational::new(1, 2 * d3 * m), format!("total/(2Δ³·max|L|), Δ = {delta}, max|L| = {m}"))
    } else {
        (Rational::new(1, 2 * d3), format!("total/(2Δ³), Δ = {delta}"))
    };
    let total = r.total();
    Ok(SolverOutcome {
        coloring,
        satisfied,
        total,
        fraction,
        certified: fraction * total,
        note,
        mode: ColoringMode::Greedy,
        trace: Trace {
            r_prime: sub.vertices,
            r_plus: state.released().to_vec(),
            r_double_prime: state.remaining(),
            steps: Vec::new(),
            chi: sub.chi,
        },
        diagnostic: None,
    })
}
