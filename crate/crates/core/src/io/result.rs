use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Instance;
use crate::degeneracy::{flexible_degeneracy_order, PipelineOptions};
use crate::error::{Error, Result};
use crate::graph::ColoringMode;
use crate::list::{satisfied_amount, RequestKind};
use crate::maxdeg::{solve_unweighted, solve_weighted, MaxDegOptions};
use crate::oracle::optimal_satisfaction_with;
use crate::treewidth::{best_of_family, lambda_family_with, tree_pair_family, two_tree_family};
use crate::{format_rational, parse_rational, treedepth, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    MaxDeg,
    MaxDegWeighted,
    TwoTree,
    Lambda,
    Treedepth,
    Degeneracy,
    Oracle,
}

impl Method {
    pub const SOLVERS: [Method; 6] =
        [Method::MaxDeg, Method::MaxDegWeighted, Method::TwoTree, Method::Lambda, Method::Treedepth, Method::Degeneracy];

    pub fn name(self) -> &'static str {
        match self {
            Method::MaxDeg => "maxdeg",
            Method::MaxDegWeighted => "maxdeg-weighted",
            Method::TwoTree => "two-tree",
            Method::Lambda => "lambda",
            Method::Treedepth => "treedepth",
            Method::Degeneracy => "degeneracy",
            Method::Oracle => "oracle",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::SOLVERS
            .into_iter()
            .chain([Method::Oracle])
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub method: Method,
    pub mode: ColoringMode,
    pub seed: Option<u64>,
    /// Search budget: list-product cap for the oracle, node cap for
    /// treedepth, family-size cap for lambda.
    pub budget: Option<u64>,
}

impl SolveOptions {
    pub fn new(method: Method) -> Self {
        SolveOptions { method, mode: ColoringMode::default(), seed: None, budget: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceSummary {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub r_prime: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub r_plus: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub r_double_prime: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colorings: Option<u64>,
}

/// Result document. Rationals are `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDoc {
    pub instance: String,
    pub method: String,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub satisfied: String,
    pub total: String,
    pub fraction: String,
    pub certified: String,
    pub meets_bound: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_requested: Option<Vec<usize>>,
    #[serde(default)]
    pub note: String,
    #[serde(default)]
    pub trace: TraceSummary,
}

impl ResultDoc {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("result serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string().trim_end().to_string()))
    }

    fn rational(&self, field: &str, value: &str) -> Result<Rational> {
        parse_rational(value).map_err(|e| Error::schema(field, e.to_string()))
    }
}

fn f(r: &Rational) -> String {
    format_rational(r)
}

#[allow(clippy::too_many_arguments)]
fn doc(
    inst: &Instance,
    opts: &SolveOptions,
    mode: ColoringMode,
    satisfied: Rational,
    total: Rational,
    fraction: Rational,
    certified: Rational,
    note: String,
) -> ResultDoc {
    ResultDoc {
        instance: inst.name.clone(),
        method: opts.method.name().into(),
        mode: mode.name().into(),
        seed: opts.seed.or(inst.seed),
        satisfied: f(&satisfied),
        total: f(&total),
        fraction: f(&fraction),
        certified: f(&certified),
        meets_bound: satisfied >= certified,
        coloring: None,
        ordering: None,
        free_requested: None,
        note,
        trace: TraceSummary::default(),
    }
}

/// Runs one method on an instance.
pub fn solve_instance(inst: &Instance, opts: &SolveOptions) -> Result<ResultDoc> {
    inst.validate()?;
    let (g, lists, r) = (&inst.graph, &inst.lists, &inst.request);
    match opts.method {
        Method::MaxDeg | Method::MaxDegWeighted => {
            let mo = MaxDegOptions { mode: opts.mode, ..MaxDegOptions::default() };
            let out =
                if opts.method == Method::MaxDeg { solve_unweighted(g, lists, r, &mo)? } else { solve_weighted(g, lists, r, &mo)? };
            let mut d = doc(inst, opts, out.mode, out.satisfied, out.total, out.fraction, out.certified, out.note);
            d.coloring = Some(out.coloring);
            d.trace = TraceSummary {
                r_prime: out.trace.r_prime,
                r_plus: out.trace.r_plus,
                r_double_prime: out.trace.r_double_prime,
                chi: Some(out.trace.chi),
                ..TraceSummary::default()
            };
            Ok(d)
        }
        Method::TwoTree | Method::Lambda => {
            let order = inst.ktree_order()?;
            let family = match opts.method {
                Method::TwoTree => match order.k {
                    1 => tree_pair_family(g, lists)?,
                    2 => two_tree_family(g, &order, lists)?,
                    k => return Err(Error::precondition(format!("two-tree needs a 1- or 2-tree order, got k = {k}"))),
                },
                _ => {
                    let lam = inst.lambda.as_ref().ok_or_else(|| Error::precondition("instance has no λ-assignment"))?;
                    if lam.k() != order.k {
                        return Err(Error::precondition(format!("λ sums to {} but the order is a {}-tree", lam.k() + 1, order.k)));
                    }
                    let cap = opts.budget.map_or(crate::treewidth::DEFAULT_FAMILY_CAP, u128::from);
                    lambda_family_with(g, &order, lam, lists, cap)?
                }
            };
            let best = best_of_family(&family, g, lists, r)?;
            let fraction = family.guaranteed_fraction();
            let note = format!("best of {} colorings, each (v, c) in a {} share", family.len(), f(&fraction));
            let mut d = doc(inst, opts, opts.mode, best.satisfied, r.total(), fraction, best.guaranteed, note);
            d.mode = "family".into();
            d.coloring = Some(best.coloring);
            d.trace.family_size = Some(family.len());
            Ok(d)
        }
        Method::Treedepth => {
            let (k, forest) = inst.treedepth_forest()?;
            let budget = opts.budget.unwrap_or(treedepth::DEFAULT_NODE_BUDGET);
            let out = treedepth::solve(g, &forest, lists, k, r, budget)?;
            let note = if r.kind() == RequestKind::Weighted {
                format!("total/(k·max|L|), k = {k}")
            } else {
                format!("total/k, k = {k}")
            };
            let mut d = doc(inst, opts, opts.mode, out.satisfied, out.total, out.fraction, out.certified, note);
            d.mode = "derandomized".into();
            d.coloring = Some(out.coloring);
            d.trace.expected = Some(f(&out.expected));
            Ok(d)
        }
        Method::Degeneracy => {
            let r0 = r.domain();
            let po = PipelineOptions { mode: opts.mode, distance_k: None };
            let out = flexible_degeneracy_order(g, &r0, &po)?;
            let total = Rational::from_integer(r0.len() as i128);
            let fraction = if r0.is_empty() { Rational::from_integer(0) } else { out.certified / total };
            let note = format!(
                "ε = {}, composed bound {}",
                f(&out.epsilon),
                f(&out.composed)
            );
            let sat = Rational::from_integer(out.achieved as i128);
            let mut d = doc(inst, opts, out.mode, sat, total, fraction, out.certified, note);
            d.free_requested = Some(r0.iter().copied().filter(|v| out.ordering.free.binary_search(v).is_ok()).collect());
            d.ordering = Some(out.ordering.order);
            d.trace = TraceSummary {
                r_prime: out.r_prime,
                r_plus: out.r_plus,
                r_double_prime: out.r_double_prime,
                start: Some(out.w),
                ..TraceSummary::default()
            };
            Ok(d)
        }
        Method::Oracle => {
            let budget = opts.budget.map_or(crate::oracle::DEFAULT_BUDGET, u128::from);
            let out = optimal_satisfaction_with(g, lists, r, budget)?;
            let coloring = out.witness.ok_or_else(|| Error::Infeasible { component: (0..g.n()).collect() })?;
            let mut d = doc(
                inst,
                opts,
                opts.mode,
                out.optimum,
                r.total(),
                Rational::from_integer(0),
                Rational::from_integer(0),
                "exact optimum".into(),
            );
            d.mode = "exhaustive".into();
            d.coloring = Some(coloring);
            d.trace.colorings = Some(out.count);
            Ok(d)
        }
    }
}

/// Re-checks a result document against its instance from scratch:
/// the coloring or ordering, the satisfied amount, the total and the
/// claimed bound arithmetic.
pub fn verify_result(doc: &ResultDoc, inst: &Instance) -> Result<()> {
    let (g, lists, r) = (&inst.graph, &inst.lists, &inst.request);
    let method: Method = doc.method.parse()?;
    let satisfied = doc.rational("satisfied", &doc.satisfied)?;
    let total = doc.rational("total", &doc.total)?;
    let fraction = doc.rational("fraction", &doc.fraction)?;
    let certified = doc.rational("certified", &doc.certified)?;
    let mismatch = |field: &str, claimed: &str, actual: String| {
        Err(Error::schema(field, format!("document claims {claimed}, recomputed {actual}")))
    };

    if method == Method::Degeneracy {
        let order = doc.ordering.as_ref().ok_or_else(|| Error::schema("ordering", "missing"))?;
        let n = g.n();
        let mut pos = vec![usize::MAX; n];
        if order.len() != n {
            return Err(Error::schema("ordering", format!("{} entries for {n} vertices", order.len())));
        }
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::schema(format!("ordering[{i}]"), "not a permutation"));
            }
            pos[v] = i;
        }
        let k = g.max_degree().saturating_sub(1);
        for v in 0..n {
            let back = g.neighbors(v).iter().filter(|&&u| pos[u] < pos[v]).count();
            if back > k {
                return Err(Error::schema("ordering", format!("vertex {v} has {back} earlier neighbors, more than {k}")));
            }
        }
        let r0 = r.domain();
        let free: Vec<usize> =
            r0.iter().copied().filter(|&v| g.neighbors(v).iter().all(|&u| pos[u] > pos[v])).collect();
        if doc.free_requested.as_ref() != Some(&free) {
            return Err(Error::schema("free_requested", format!("recomputed {free:?}")));
        }
        let achieved = Rational::from_integer(free.len() as i128);
        if achieved != satisfied {
            return mismatch("satisfied", &doc.satisfied, f(&achieved));
        }
        let t = Rational::from_integer(r0.len() as i128);
        if t != total {
            return mismatch("total", &doc.total, f(&t));
        }
    } else {
        let coloring = doc.coloring.as_ref().ok_or_else(|| Error::schema("coloring", "missing"))?;
        let s = satisfied_amount(g, lists, coloring, r)?;
        if s != satisfied {
            return mismatch("satisfied", &doc.satisfied, f(&s));
        }
        if r.total() != total {
            return mismatch("total", &doc.total, f(&r.total()));
        }
    }

    let expected_fraction = match method {
        Method::MaxDeg if r.is_empty() => Some(Rational::from_integer(0)),
        Method::MaxDeg => {
            let d = g.max_degree() as i128;
            match doc.mode.as_str() {
                "brooks" => Some(Rational::new(1, 6 * d)),
                "greedy" => Some(Rational::new(1, 6 * (d + 1))),
                m => return Err(Error::schema("mode", format!("unknown mode {m:?}"))),
            }
        }
        Method::MaxDegWeighted if r.is_empty() => Some(Rational::from_integer(0)),
        Method::MaxDegWeighted => {
            let d3 = (g.max_degree() as i128).pow(3);
            let m = if r.kind() == RequestKind::Weighted { lists.max_len() as i128 } else { 1 };
            Some(Rational::new(1, 2 * d3 * m))
        }
        Method::TwoTree => Some(Rational::new(1, 3)),
        Method::Lambda => {
            let k = inst.ktree_order()?.k as i128;
            Some(Rational::new(1, k + 1))
        }
        Method::Treedepth => {
            let (k, _) = inst.treedepth_forest()?;
            let m = if r.kind() == RequestKind::Weighted { lists.max_len().max(1) as i128 } else { 1 };
            Some(Rational::new(1, k.max(1) as i128 * m))
        }
        Method::Degeneracy => None,
        Method::Oracle => Some(Rational::from_integer(0)),
    };
    if method == Method::TwoTree && inst.ktree_order()?.k == 1 {
        if fraction != Rational::new(1, 2) {
            return mismatch("fraction", &doc.fraction, "1/2".into());
        }
    } else if let Some(e) = expected_fraction {
        if e != fraction {
            return mismatch("fraction", &doc.fraction, f(&e));
        }
    }
    if fraction * total != certified {
        return mismatch("certified", &doc.certified, f(&(fraction * total)));
    }
    if doc.meets_bound != (satisfied >= certified) {
        return Err(Error::schema("meets_bound", "inconsistent with satisfied and certified"));
    }
    Ok(())
}
