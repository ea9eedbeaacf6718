//! Instance and result documents, DIMACS ingestion, fixtures and random
//! instance families.
//!
//! Instances are TOML:
//!
//! ```toml
//! name = "fig2"
//! n = 4
//! edges = [[0, 1], [2, 3]]
//! lists = [[1, 2], [1, 2, 3], [1, 2, 3], [1, 3]]
//!
//! [[request]]
//! vertex = 0
//! color = 2
//! ```
//!
//! plus optional `seed`, `[structure]` (`kind = "ktree"` with `k` and
//! `order`, or `kind = "treedepth"` with `k` and `parents`, `-1` for roots),
//! `[lambda]` (`parts`, `classes`) and per-request `weight` (integer or
//! `"p/q"`).

mod dimacs;
mod generate;
mod result;

pub use dimacs::parse_dimacs;
pub use generate::{generate, FamilySpec, FAMILIES, FIXTURES};
pub use result::{solve_instance, verify_result, Method, ResultDoc, SolveOptions};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{validate_ktree_order, Graph, KTreeOrder, TreedepthForest, Vertex};
use crate::list::{Color, ListAssignment, Request, RequestKind};
use crate::treewidth::LambdaAssignment;
use crate::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    KTree { k: usize, order: Vec<Vertex> },
    Treedepth { k: usize, parent: Vec<Option<Vertex>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub seed: Option<u64>,
    pub graph: Graph,
    pub lists: ListAssignment,
    pub request: Request,
    pub structure: Option<Structure>,
    pub lambda: Option<LambdaAssignment>,
}

impl Instance {
    /// Checks ids, lists, the request and the structure against the graph.
    pub fn validate(&self) -> Result<()> {
        if self.lists.n() != self.graph.n() {
            return Err(Error::schema("lists", format!("{} lists for {} vertices", self.lists.n(), self.graph.n())));
        }
        for (i, e) in self.request.entries().iter().enumerate() {
            if e.vertex >= self.graph.n() {
                return Err(Error::schema(format!("request[{i}].vertex"), format!("vertex {} out of range", e.vertex)));
            }
            if !self.lists.contains(e.vertex, e.color) {
                return Err(Error::schema(
                    format!("request[{i}].color"),
                    format!("color {} is not in the list of vertex {}", e.color, e.vertex),
                ));
            }
        }
        match &self.structure {
            Some(Structure::KTree { k, order }) => {
                validate_ktree_order(&self.graph, *k, order).map_err(|v| {
                    Error::schema(format!("structure.order[{}]", v.index), v.reason)
                })?;
            }
            Some(Structure::Treedepth { k, parent }) => {
                TreedepthForest::new(&self.graph, parent.clone(), *k)
                    .map_err(|e| Error::schema("structure.parents", e.to_string()))?;
            }
            None => {}
        }
        if let Some(lam) = &self.lambda {
            lam.validate(&self.lists).map_err(|e| Error::schema("lambda", e.to_string()))?;
        }
        Ok(())
    }

    pub fn ktree_order(&self) -> Result<KTreeOrder> {
        match &self.structure {
            Some(Structure::KTree { k, order }) => Ok(validate_ktree_order(&self.graph, *k, order)?),
            _ => Err(Error::precondition("instance has no k-tree structure")),
        }
    }

    pub fn treedepth_forest(&self) -> Result<(usize, TreedepthForest)> {
        match &self.structure {
            Some(Structure::Treedepth { k, parent }) => Ok((*k, TreedepthForest::new(&self.graph, parent.clone(), *k)?)),
            _ => Err(Error::precondition("instance has no treedepth structure")),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    n: usize,
    edges: Vec<[usize; 2]>,
    lists: Vec<Vec<Color>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    structure: Option<RawStructure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<RawLambda>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    request_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    request: Vec<RawRequest>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawStructure {
    Ktree { k: usize, order: Vec<usize> },
    Treedepth { k: usize, parents: Vec<i64> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLambda {
    parts: Vec<usize>,
    classes: Vec<Vec<Color>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRequest {
    vertex: usize,
    color: Color,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<RawWeight>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RawWeight {
    Int(i64),
    Text(String),
}

fn weight_to_raw(w: &Rational) -> RawWeight {
    if *w.denom() == 1 && i64::try_from(*w.numer()).is_ok() {
        RawWeight::Int(*w.numer() as i64)
    } else {
        RawWeight::Text(format_rational(w))
    }
}

/// Wraps a bare graph: lists `1..=deg+1` below the maximum degree and
/// `1..=Δ` at it, and color 1 requested everywhere.
pub fn instance_from_graph(name: &str, graph: Graph) -> Result<Instance> {
    let delta = graph.max_degree() as Color;
    let lists = (0..graph.n())
        .map(|v| {
            let d = graph.degree(v) as Color;
            (1..=if d < delta { d + 1 } else { delta.max(1) }).collect()
        })
        .collect();
    let request = Request::unweighted((0..graph.n()).map(|v| (v, 1)))?;
    let inst =
        Instance { name: name.into(), seed: None, graph, lists: ListAssignment::new(lists)?, request, structure: None, lambda: None };
    inst.validate()?;
    Ok(inst)
}

/// Instance TOML, or a DIMACS edge list wrapped by [`instance_from_graph`].
pub fn read_instance(name: &str, text: &str) -> Result<Instance> {
    let dimacs = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('c') && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("p ") || l.starts_with("e "));
    if dimacs {
        instance_from_graph(name, parse_dimacs(text)?)
    } else {
        parse_instance(text)
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance = toml::from_str(text).map_err(|e| Error::Parse(e.to_string().trim_end().to_string()))?;
    let n = raw.n;
    for (i, e) in raw.edges.iter().enumerate() {
        if e[0] >= n || e[1] >= n {
            return Err(Error::schema(format!("edges[{i}]"), format!("endpoint outside 0..{n}")));
        }
        if e[0] == e[1] {
            return Err(Error::schema(format!("edges[{i}]"), "self-loop"));
        }
    }
    let graph = Graph::new(n, raw.edges.iter().map(|e| (e[0], e[1])))
        .map_err(|e| Error::schema("edges", e.to_string()))?;
    if raw.lists.len() != n {
        return Err(Error::schema("lists", format!("{} lists for {n} vertices", raw.lists.len())));
    }
    let lists = ListAssignment::new(raw.lists)?;
    let mut triples = Vec::with_capacity(raw.request.len());
    let weighted = raw.request.iter().any(|r| r.weight.is_some());
    for (i, r) in raw.request.iter().enumerate() {
        let w = match &r.weight {
            None if weighted => {
                return Err(Error::schema(format!("request[{i}].weight"), "missing while other requests are weighted"))
            }
            None => Rational::from_integer(1),
            Some(RawWeight::Int(x)) => Rational::from_integer(*x as i128),
            Some(RawWeight::Text(s)) => {
                parse_rational(s).map_err(|e| Error::schema(format!("request[{i}].weight"), e.to_string()))?
            }
        };
        triples.push((r.vertex, r.color, w));
    }
    let mut vertices: Vec<usize> = triples.iter().map(|t| t.0).collect();
    vertices.sort_unstable();
    let repeated = vertices.windows(2).any(|w| w[0] == w[1]);
    let kind = match raw.request_kind.as_deref() {
        None if repeated => RequestKind::Weighted,
        None if weighted => RequestKind::UniquelyWeighted,
        None => RequestKind::Unweighted,
        Some("weighted") => RequestKind::Weighted,
        Some("uniquely-weighted") if !repeated => RequestKind::UniquelyWeighted,
        Some("unweighted") if !weighted && !repeated => RequestKind::Unweighted,
        Some(k) => return Err(Error::schema("request_kind", format!("{k:?} does not fit the requests"))),
    };
    let request = match kind {
        RequestKind::Unweighted => Request::unweighted(triples.iter().map(|t| (t.0, t.1)))?,
        RequestKind::UniquelyWeighted => Request::uniquely_weighted(triples)?,
        RequestKind::Weighted => Request::weighted(triples)?,
    };
    let structure = match raw.structure {
        None => None,
        Some(RawStructure::Ktree { k, order }) => Some(Structure::KTree { k, order }),
        Some(RawStructure::Treedepth { k, parents }) => {
            if parents.len() != n {
                return Err(Error::schema("structure.parents", format!("{} parents for {n} vertices", parents.len())));
            }
            let mut parent = Vec::with_capacity(n);
            for (i, &p) in parents.iter().enumerate() {
                parent.push(match p {
                    -1 => None,
                    p if p >= 0 && (p as usize) < n => Some(p as usize),
                    _ => return Err(Error::schema(format!("structure.parents[{i}]"), format!("invalid parent {p}"))),
                });
            }
            Some(Structure::Treedepth { k, parent })
        }
    };
    let lambda = match raw.lambda {
        None => None,
        Some(l) => Some(LambdaAssignment::new(l.parts, l.classes).map_err(|e| Error::schema("lambda", e.to_string()))?),
    };
    let inst = Instance { name: raw.name, seed: raw.seed, graph, lists, request, structure, lambda };
    inst.validate()?;
    Ok(inst)
}

/// Serializes an instance; `parse_instance` inverts it exactly.
pub fn serialize_instance(inst: &Instance) -> String {
    let weighted = inst.request.kind() != RequestKind::Unweighted;
    let raw = RawInstance {
        name: inst.name.clone(),
        seed: inst.seed,
        n: inst.graph.n(),
        edges: inst.graph.edges().map(|(u, v)| [u, v]).collect(),
        lists: inst.lists.as_slice().to_vec(),
        structure: inst.structure.as_ref().map(|s| match s {
            Structure::KTree { k, order } => RawStructure::Ktree { k: *k, order: order.clone() },
            Structure::Treedepth { k, parent } => RawStructure::Treedepth {
                k: *k,
                parents: parent.iter().map(|p| p.map_or(-1, |p| p as i64)).collect(),
            },
        }),
        lambda: inst.lambda.as_ref().map(|l| RawLambda { parts: l.parts.clone(), classes: l.classes.clone() }),
        request_kind: (inst.request.kind() == RequestKind::Weighted).then(|| "weighted".to_string()),
        request: inst
            .request
            .entries()
            .iter()
            .map(|e| RawRequest { vertex: e.vertex, color: e.color, weight: weighted.then(|| weight_to_raw(&e.weight)) })
            .collect(),
    };
    toml::to_string(&raw).expect("instance serializes")
}
