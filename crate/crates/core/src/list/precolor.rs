use super::{degree_choosable_coloring_with, Color, Coloring, DegreeChoosableOptions, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub fn precolor_and_extend(g: &Graph, lists: &ListAssignment, fixed: &[(Vertex, Color)]) -> Result<Coloring> {
    precolor_and_extend_with(g, lists, fixed, &DegreeChoosableOptions::default())
}

/// Colors the independent set `fixed` as given, deletes those colors from
/// the neighbors' lists and colors each remaining component on its own.
///
/// Errors from a component are reported with global vertex ids.
pub fn precolor_and_extend_with(
    g: &Graph,
    lists: &ListAssignment,
    fixed: &[(Vertex, Color)],
    opts: &DegreeChoosableOptions,
) -> Result<Coloring> {
    lists.ensure_covers(g)?;
    let n = g.n();
    let mut pre: Vec<Option<Color>> = vec![None; n];
    for &(v, c) in fixed {
        if v >= n {
            return Err(Error::precondition(format!("fixed vertex {v} outside the graph")));
        }
        if pre[v].is_some() {
            return Err(Error::precondition(format!("vertex {v} fixed twice")));
        }
        if !lists.contains(v, c) {
            return Err(Error::OffList { vertex: v, color: c });
        }
        pre[v] = Some(c);
    }
    for &(v, _) in fixed {
        if let Some(&u) = g.neighbors(v).iter().find(|&&u| pre[u].is_some()) {
            return Err(Error::precondition(format!("fixed vertices {} and {} are adjacent", v.min(u), v.max(u))));
        }
    }

    let removed: Vec<bool> = pre.iter().map(Option::is_some).collect();
    let mut coloring: Vec<Option<Color>> = pre.clone();
    for comp in g.components_avoiding(&removed) {
        let sub = g.induced(&comp);
        let pruned: Vec<Vec<Color>> = comp
            .iter()
            .map(|&v| {
                let mut l = lists.get(v).to_vec();
                l.retain(|c| !g.neighbors(v).iter().any(|&u| pre[u] == Some(*c)));
                l
            })
            .collect();
        if let Some(i) = pruned.iter().position(Vec::is_empty) {
            return Err(Error::Infeasible { component: vec![comp[i]] });
        }
        let local = ListAssignment::from_sorted(pruned);
        let colors = degree_choosable_coloring_with(&sub, &local, opts).map_err(|e| globalize(e, &comp))?;
        for (i, &v) in comp.iter().enumerate() {
            coloring[v] = Some(colors[i]);
        }
    }
    Ok(coloring.into_iter().map(Option::unwrap).collect())
}

fn globalize(e: Error, comp: &[Vertex]) -> Error {
    match e {
        Error::Infeasible { component } => Error::Infeasible { component: component.iter().map(|&i| comp[i]).collect() },
        Error::ListTooSmall { vertex, len, required } => Error::ListTooSmall { vertex: comp[vertex], len, required },
        other => other,
    }
}
