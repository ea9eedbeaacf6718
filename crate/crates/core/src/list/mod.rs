//! List assignments, requests and the degree-choosable coloring engine.

mod degree_choosable;
mod precolor;

pub use degree_choosable::{degree_choosable_coloring, degree_choosable_coloring_with, DegreeChoosableOptions};
pub use precolor::{precolor_and_extend, precolor_and_extend_with};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::Rational;

pub type Color = u32;

/// A total vertex-to-color map.
pub type Coloring = Vec<Color>;

/// Per-vertex color lists, each sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    /// Sorts each list; rejects empty lists and repeated colors.
    pub fn new(lists: Vec<Vec<Color>>) -> Result<Self> {
        let mut lists = lists;
        for (v, l) in lists.iter_mut().enumerate() {
            if l.is_empty() {
                return Err(Error::schema(format!("lists[{v}]"), "list is empty"));
            }
            l.sort_unstable();
            if let Some(w) = l.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::schema(format!("lists[{v}]"), format!("color {} repeated", w[0])));
            }
        }
        Ok(ListAssignment { lists })
    }

    /// Every vertex gets the same list.
    pub fn uniform(n: usize, colors: impl IntoIterator<Item = Color>) -> Self {
        let l: Vec<Color> = colors.into_iter().collect();
        ListAssignment::new(vec![l; n]).expect("uniform list is valid")
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn get(&self, v: Vertex) -> &[Color] {
        &self.lists[v]
    }

    pub fn len_of(&self, v: Vertex) -> usize {
        self.lists[v].len()
    }

    pub fn contains(&self, v: Vertex, c: Color) -> bool {
        self.lists[v].binary_search(&c).is_ok()
    }

    pub fn max_len(&self) -> usize {
        self.lists.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[Vec<Color>] {
        &self.lists
    }

    /// Lists of `vertices`, reindexed locally.
    pub fn restrict(&self, vertices: &[Vertex]) -> ListAssignment {
        ListAssignment { lists: vertices.iter().map(|&v| self.lists[v].clone()).collect() }
    }

    pub(crate) fn from_sorted(lists: Vec<Vec<Color>>) -> Self {
        ListAssignment { lists }
    }

    /// Checks that there is one list per vertex of `g`.
    pub fn ensure_covers(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::schema("lists", format!("{} lists for {} vertices", self.n(), g.n())));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RequestKind {
    Unweighted,
    UniquelyWeighted,
    Weighted,
}

impl RequestKind {
    pub fn name(self) -> &'static str {
        match self {
            RequestKind::Unweighted => "unweighted",
            RequestKind::UniquelyWeighted => "uniquely-weighted",
            RequestKind::Weighted => "weighted",
        }
    }
}

/// One requested `(vertex, color)` pair with its weight (1 when unweighted).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RequestEntry {
    pub vertex: Vertex,
    pub color: Color,
    pub weight: Rational,
}

/// A color request. Entries are kept sorted by `(vertex, color)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Request {
    kind: RequestKind,
    entries: Vec<RequestEntry>,
}

impl Request {
    /// At most one color per vertex, each with weight 1.
    pub fn unweighted(pairs: impl IntoIterator<Item = (Vertex, Color)>) -> Result<Self> {
        let entries =
            pairs.into_iter().map(|(vertex, color)| RequestEntry { vertex, color, weight: Rational::from_integer(1) });
        Request::build(RequestKind::Unweighted, entries.collect())
    }

    /// At most one color per vertex, with positive weight.
    pub fn uniquely_weighted(triples: impl IntoIterator<Item = (Vertex, Color, Rational)>) -> Result<Self> {
        let entries = triples.into_iter().map(|(vertex, color, weight)| RequestEntry { vertex, color, weight });
        Request::build(RequestKind::UniquelyWeighted, entries.collect())
    }

    /// Any non-negative weights on distinct `(vertex, color)` pairs.
    pub fn weighted(triples: impl IntoIterator<Item = (Vertex, Color, Rational)>) -> Result<Self> {
        let entries = triples.into_iter().map(|(vertex, color, weight)| RequestEntry { vertex, color, weight });
        Request::build(RequestKind::Weighted, entries.collect())
    }

    pub fn empty() -> Self {
        Request { kind: RequestKind::Unweighted, entries: Vec::new() }
    }

    fn build(kind: RequestKind, mut entries: Vec<RequestEntry>) -> Result<Self> {
        entries.sort_by_key(|e| (e.vertex, e.color));
        for (i, e) in entries.iter().enumerate() {
            let zero = Rational::from_integer(0);
            let ok = match kind {
                RequestKind::Weighted => e.weight >= zero,
                _ => e.weight > zero,
            };
            if !ok {
                return Err(Error::schema(format!("request[{i}].weight"), "weight out of range"));
            }
        }
        for w in entries.windows(2) {
            let same_vertex = w[0].vertex == w[1].vertex;
            if same_vertex && (kind != RequestKind::Weighted || w[0].color == w[1].color) {
                return Err(Error::schema(
                    "request",
                    format!("vertex {} requested more than once", w[0].vertex),
                ));
            }
        }
        Ok(Request { kind, entries })
    }

    pub fn kind(&self) -> RequestKind {
        self.kind
    }

    pub fn entries(&self) -> &[RequestEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Requested vertices, ascending and distinct.
    pub fn domain(&self) -> Vec<Vertex> {
        let mut d: Vec<Vertex> = self.entries.iter().map(|e| e.vertex).collect();
        d.dedup();
        d
    }

    pub fn is_widespread(&self, n: usize) -> bool {
        self.domain().len() == n
    }

    /// Total weight (the number of requests when unweighted).
    pub fn total(&self) -> Rational {
        self.entries.iter().map(|e| e.weight).sum()
    }

    /// Requested color of `v`, for requests with at most one color per vertex.
    pub fn color_of(&self, v: Vertex) -> Option<Color> {
        if self.kind == RequestKind::Weighted {
            return None;
        }
        let i = self.entries.binary_search_by_key(&v, |e| e.vertex).ok()?;
        Some(self.entries[i].color)
    }

    /// Checks vertex ranges and that every requested color is on its list.
    pub fn validate(&self, lists: &ListAssignment) -> Result<()> {
        for (i, e) in self.entries.iter().enumerate() {
            if e.vertex >= lists.n() {
                return Err(Error::schema(format!("request[{i}].vertex"), format!("vertex {} out of range", e.vertex)));
            }
            if !lists.contains(e.vertex, e.color) {
                return Err(Error::OffList { vertex: e.vertex, color: e.color });
            }
        }
        Ok(())
    }
}

/// Fails with the first improper edge or off-list vertex.
pub fn check_coloring(g: &Graph, lists: &ListAssignment, coloring: &[Color]) -> Result<()> {
    if coloring.len() != g.n() {
        return Err(Error::precondition(format!("coloring has {} entries for {} vertices", coloring.len(), g.n())));
    }
    for (v, &c) in coloring.iter().enumerate() {
        if !lists.contains(v, c) {
            return Err(Error::OffList { vertex: v, color: c });
        }
    }
    for (u, v) in g.edges() {
        if coloring[u] == coloring[v] {
            return Err(Error::ImproperEdge { u, v, color: coloring[u] });
        }
    }
    Ok(())
}

/// Weight of the requests honored by a valid L-coloring.
pub fn satisfied_amount(g: &Graph, lists: &ListAssignment, coloring: &[Color], r: &Request) -> Result<Rational> {
    check_coloring(g, lists, coloring)?;
    Ok(r.entries.iter().filter(|e| coloring.get(e.vertex) == Some(&e.color)).map(|e| e.weight).sum())
}

/// Keeps, per vertex, one color of maximum weight (smallest color on ties).
/// Vertices whose best weight is zero are dropped.
pub fn reduce_to_unique(r: &Request) -> Request {
    let mut best: BTreeMap<Vertex, RequestEntry> = BTreeMap::new();
    for e in &r.entries {
        match best.get(&e.vertex) {
            Some(b) if b.weight >= e.weight => {}
            _ => {
                best.insert(e.vertex, *e);
            }
        }
    }
    let entries = best.into_values().filter(|e| e.weight > Rational::from_integer(0)).collect();
    Request { kind: RequestKind::UniquelyWeighted, entries }
}
