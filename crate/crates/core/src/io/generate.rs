use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Instance, Structure};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::list::{Color, ListAssignment, Request};
use crate::oracle::optimal_satisfaction;
use crate::treewidth::LambdaAssignment;
use crate::Rational;

pub const FIXTURES: &[&str] = &["fig1", "fig2", "fig3", "fig4", "fig5", "two-cliques-matching", "cube-chord"];

pub const FAMILIES: &[&str] = &["random-ktree", "random-bounded-degree", "random-treedepth", "random-3-connected"];

/// `name` or `name:key=value,key=value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

impl FamilySpec {
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let mut params = BTreeMap::new();
        for kv in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("spec parameter {kv:?} is not key=value")))?;
            if params.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Parse(format!("spec parameter {k:?} given twice")));
            }
        }
        Ok(FamilySpec { name: name.trim().to_string(), params })
    }

    fn allow(&self, keys: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(Error::Parse(format!("{}: unknown parameter {k:?} (expected one of {keys:?})", self.name))),
            None => Ok(()),
        }
    }

    fn usize(&self, key: &str, default: usize) -> Result<usize> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| Error::Parse(format!("{}: {key}={v:?} is not a non-negative integer", self.name))),
        }
    }

    fn prob(&self, key: &str, default: f64) -> Result<f64> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => match v.parse::<f64>() {
                Ok(p) if (0.0..=1.0).contains(&p) => Ok(p),
                _ => Err(Error::Parse(format!("{}: {key}={v:?} is not a probability", self.name))),
            },
        }
    }

    fn weights(&self) -> Result<Weights> {
        match self.params.get("weights").map(String::as_str) {
            None | Some("unit") => Ok(Weights::Unit),
            Some("unique") => Ok(Weights::Unique),
            Some("general") => Ok(Weights::General),
            Some(w) => Err(Error::Parse(format!("{}: weights={w:?} (expected unit, unique or general)", self.name))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Weights {
    Unit,
    Unique,
    General,
}

/// Builds a fixture or a random instance. Fixtures ignore the seed.
pub fn generate(spec: &str, seed: u64) -> Result<Instance> {
    let fs = FamilySpec::parse(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inst = match fs.name.as_str() {
        "fig1" => {
            fs.allow(&[])?;
            fig1()?
        }
        "fig2" => {
            fs.allow(&[])?;
            fig2()
        }
        "fig3" => {
            fs.allow(&[])?;
            fig3()
        }
        "fig4" => {
            fs.allow(&["gadgets", "delta"])?;
            fig4(fs.usize("gadgets", 6)?, fs.usize("delta", 3)?)?
        }
        "fig5" => {
            fs.allow(&[])?;
            fig5()
        }
        "two-cliques-matching" => {
            fs.allow(&["delta"])?;
            two_cliques_matching(fs.usize("delta", 3)?)?
        }
        "cube-chord" => {
            fs.allow(&[])?;
            cube_chord()
        }
        "random-ktree" => {
            fs.allow(&["k", "n", "parts", "palette", "density", "weights"])?;
            random_ktree(&fs, &mut rng)?
        }
        "random-bounded-degree" => {
            fs.allow(&["delta", "n", "extra", "palette", "density", "weights"])?;
            random_bounded_degree(&fs, &mut rng)?
        }
        "random-treedepth" => {
            fs.allow(&["k", "n", "p", "palette", "density", "weights"])?;
            random_treedepth(&fs, &mut rng)?
        }
        "random-3-connected" => {
            fs.allow(&["delta", "n", "palette", "density", "weights"])?;
            random_three_connected(&fs, &mut rng)?
        }
        other => {
            return Err(Error::Unsupported(format!(
                "unknown fixture or family {other:?}; fixtures: {}; families: {}",
                FIXTURES.join(", "),
                FAMILIES.join(", ")
            )))
        }
    };
    if fs.name.starts_with("random-") {
        inst.seed = Some(seed);
    }
    inst.name = spec.to_string();
    inst.validate()?;
    Ok(inst)
}

fn instance(graph: Graph, lists: Vec<Vec<Color>>, request: Request) -> Result<Instance> {
    Ok(Instance {
        name: String::new(),
        seed: None,
        graph,
        lists: ListAssignment::new(lists)?,
        request,
        structure: None,
        lambda: None,
    })
}

fn fig1() -> Result<Instance> {
    // cycle order a, c, bb, d, b1, b2, f, bbb, e, a2
    let g = Graph::cycle(10);
    let fixed: [(Vec<Color>, Option<Color>); 10] = [
        (vec![2, 3], None),
        (vec![1, 3], None),
        (vec![1, 2], Some(1)),
        (vec![1, 2], Some(2)),
        (vec![], None),
        (vec![], None),
        (vec![1, 2], Some(1)),
        (vec![1, 2], Some(2)),
        (vec![1, 2], Some(1)),
        (vec![1, 2], Some(2)),
    ];
    let pairs: [[Color; 2]; 3] = [[1, 2], [1, 3], [2, 3]];
    let choices: Vec<([Color; 2], Color)> = pairs.iter().flat_map(|p| p.iter().map(move |&c| (*p, c))).collect();
    for &(l4, c4) in &choices {
        for &(l5, c5) in &choices {
            let mut lists: Vec<Vec<Color>> = fixed.iter().map(|f| f.0.clone()).collect();
            lists[4] = l4.to_vec();
            lists[5] = l5.to_vec();
            let mut req: Vec<(Vertex, Color)> = fixed.iter().enumerate().filter_map(|(v, f)| f.1.map(|c| (v, c))).collect();
            req.extend([(4, c4), (5, c5)]);
            let inst = instance(g.clone(), lists, Request::unweighted(req)?)?;
            let o = optimal_satisfaction(&inst.graph, &inst.lists, &inst.request)?;
            if o.witness.is_some() && o.optimum == Rational::from_integer(0) {
                return Ok(inst);
            }
        }
    }
    Err(Error::internal("no completion of the cycle fixture has optimum 0"))
}

fn fig2() -> Instance {
    let g = Graph::new(4, [(0, 1), (2, 3), (0, 2), (1, 3), (1, 2)]).unwrap();
    let lists = vec![vec![1, 2], vec![1, 2, 3], vec![1, 2, 3], vec![1, 3]];
    let r = Request::unweighted([(0, 2), (1, 1), (2, 1), (3, 3)]).unwrap();
    instance(g, lists, r).unwrap()
}

fn fig3() -> Instance {
    let e = [
        (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (5, 4), (5, 3), (5, 2),
        (6, 5), (6, 4), (6, 2), (8, 6), (8, 5), (8, 4), (7, 5), (7, 6), (7, 4),
    ];
    let g = Graph::new(8, e.iter().map(|&(a, b)| (a - 1, b - 1))).unwrap();
    let r = Request::unweighted((0..8).map(|v| (v, 1 + (v % 4) as Color))).unwrap();
    let mut inst = instance(g, vec![vec![1, 2, 3, 4]; 8], r).unwrap();
    inst.structure = Some(Structure::KTree { k: 3, order: (0..8).collect() });
    inst.lambda = Some(LambdaAssignment::new(vec![3, 1], vec![vec![1, 2, 3], vec![4]]).unwrap());
    inst
}

/// Cycle of `K_{Δ+1}` minus an edge; in gadget `i` the vertices `b` and
/// `b+1` (`b = i(Δ+1)`) are the nonadjacent pair, `b+1` links to the next
/// gadget's `b`, and every `b` requests color 1.
fn fig4(gadgets: usize, delta: usize) -> Result<Instance> {
    if delta < 3 || gadgets < 2 {
        return Err(Error::precondition("fig4 needs delta >= 3 and at least 2 gadgets"));
    }
    let s = delta + 1;
    let mut e = Vec::new();
    for i in 0..gadgets {
        let b = i * s;
        for x in 0..s {
            for y in x + 1..s {
                if (x, y) != (0, 1) {
                    e.push((b + x, b + y));
                }
            }
        }
        e.push((b + 1, ((i + 1) % gadgets) * s));
    }
    let n = gadgets * s;
    let lists = vec![(1..=delta as Color).collect(); n];
    let r = Request::unweighted((0..gadgets).map(|i| (i * s, 1)))?;
    instance(Graph::new(n, e)?, lists, r)
}

/// Five dark vertices `0..5` and one light vertex per 3-subset of them.
fn fig5() -> Instance {
    let mut e = Vec::new();
    let mut next = 5;
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                e.extend([(next, a), (next, b), (next, c)]);
                next += 1;
            }
        }
    }
    let r = Request::unweighted((0..5).map(|v| (v, 1))).unwrap();
    instance(Graph::new(15, e).unwrap(), vec![(1..=6).collect(); 15], r).unwrap()
}

fn two_cliques_matching(delta: usize) -> Result<Instance> {
    if delta < 2 {
        return Err(Error::precondition("two-cliques-matching needs delta >= 2"));
    }
    let mut e = Vec::new();
    for side in [0, delta] {
        for a in 0..delta {
            for b in a + 1..delta {
                e.push((side + a, side + b));
            }
        }
    }
    e.extend((0..delta).map(|i| (i, delta + i)));
    let lists = vec![(1..=delta as Color).collect(); 2 * delta];
    let r = Request::unweighted((0..delta).map(|v| (v, 1)))?;
    instance(Graph::new(2 * delta, e)?, lists, r)
}

/// The 3-cube with the chord `0-7`.
fn cube_chord() -> Instance {
    let mut e: Vec<(Vertex, Vertex)> =
        (0..8).flat_map(|v: usize| (0..3).map(move |b| (v, v ^ (1 << b)))).filter(|&(u, v)| u < v).collect();
    e.push((0, 7));
    let r = Request::unweighted((0..8).map(|v| (v, 1))).unwrap();
    instance(Graph::new(8, e).unwrap(), vec![vec![1, 2, 3, 4]; 8], r).unwrap()
}

fn sample(rng: &mut ChaCha8Rng, palette: &[Color], size: usize) -> Vec<Color> {
    let mut l: Vec<Color> = palette.choose_multiple(rng, size).copied().collect();
    l.sort_unstable();
    l
}

/// Each vertex requests with probability `density`.
fn random_request(fs: &FamilySpec, lists: &[Vec<Color>], rng: &mut ChaCha8Rng) -> Result<Request> {
    let density = fs.prob("density", 1.0)?;
    let weights = fs.weights()?;
    let mut triples = Vec::new();
    for (v, l) in lists.iter().enumerate() {
        if l.is_empty() || !rng.gen_bool(density) {
            continue;
        }
        match weights {
            Weights::Unit | Weights::Unique => {
                let c = *l.choose(rng).unwrap();
                let w = if weights == Weights::Unit { 1 } else { rng.gen_range(1..=10) };
                triples.push((v, c, Rational::from_integer(w)));
            }
            Weights::General => {
                let k = rng.gen_range(1..=l.len());
                for c in sample(rng, l, k) {
                    triples.push((v, c, Rational::new(rng.gen_range(0..=12), rng.gen_range(1..=4))));
                }
            }
        }
    }
    match weights {
        Weights::Unit => Request::unweighted(triples.into_iter().map(|t| (t.0, t.1))),
        Weights::Unique => Request::uniquely_weighted(triples),
        Weights::General => Request::weighted(triples),
    }
}

/// Random k-tree on `0..n` in insertion order.
pub(crate) fn ktree_edges(k: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    for v in 0..n.min(k + 1) {
        for u in 0..v {
            edges.push((u, v));
        }
    }
    let mut cliques: Vec<Vec<Vertex>> = Vec::new();
    if n > k {
        for skip in 0..=k {
            cliques.push((0..=k).filter(|&x| x != skip).collect());
        }
    }
    for v in k + 1..n {
        let c = cliques[rng.gen_range(0..cliques.len())].clone();
        edges.extend(c.iter().map(|&u| (u, v)));
        for skip in 0..k {
            let mut d: Vec<Vertex> = c.iter().copied().filter(|&x| x != c[skip]).collect();
            d.push(v);
            cliques.push(d);
        }
    }
    edges
}

fn random_ktree(fs: &FamilySpec, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let k = fs.usize("k", 2)?;
    let n = fs.usize("n", 20)?;
    if k == 0 || n <= k {
        return Err(Error::precondition("random-ktree needs k >= 1 and n > k"));
    }
    let g = Graph::new(n, ktree_edges(k, n, rng))?;
    let (lists, lambda) = match fs.params.get("parts") {
        Some(p) => {
            let parts = p
                .split('+')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("random-ktree: parts={p:?} (expected e.g. 2+1)")))?;
            if parts.iter().sum::<usize>() != k + 1 {
                return Err(Error::precondition(format!("random-ktree: parts {p} must sum to k+1 = {}", k + 1)));
            }
            let mut classes = Vec::new();
            let mut next: Color = 1;
            for &l in &parts {
                classes.push((next..next + l as Color + 1).collect::<Vec<_>>());
                next += l as Color + 1;
            }
            let lists = (0..n)
                .map(|_| {
                    let mut l: Vec<Color> =
                        classes.iter().zip(&parts).flat_map(|(c, &p)| sample(rng, c, p)).collect();
                    l.sort_unstable();
                    l
                })
                .collect::<Vec<_>>();
            (lists, Some(LambdaAssignment::new(parts, classes)?))
        }
        None => {
            let palette: Vec<Color> = (1..=fs.usize("palette", k + 3)?.max(k + 1) as Color).collect();
            ((0..n).map(|_| sample(rng, &palette, k + 1)).collect(), None)
        }
    };
    let request = random_request(fs, &lists, rng)?;
    let mut inst = instance(g, lists, request)?;
    inst.structure = Some(Structure::KTree { k, order: (0..n).collect() });
    inst.lambda = lambda;
    Ok(inst)
}

/// Lists of size `deg + 1` below the maximum degree and `Δ` at it.
fn maxdeg_lists(g: &Graph, palette: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Color>> {
    let delta = g.max_degree();
    let palette: Vec<Color> = (1..=palette.max(delta) as Color).collect();
    (0..g.n())
        .map(|v| {
            let d = g.degree(v);
            sample(rng, &palette, if d < delta { d + 1 } else { delta })
        })
        .collect()
}

fn random_bounded_degree(fs: &FamilySpec, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let delta = fs.usize("delta", 3)?;
    let n = fs.usize("n", 12)?;
    let extra = fs.usize("extra", n)?;
    if delta < 3 || n < delta + 1 {
        return Err(Error::precondition("random-bounded-degree needs delta >= 3 and n >= delta + 1"));
    }
    for _ in 0..1000 {
        let mut deg = vec![0usize; n];
        let mut e = Vec::new();
        let mut ok = true;
        for v in 1..n {
            let open: Vec<Vertex> = (0..v).filter(|&u| deg[u] < delta).collect();
            let Some(&u) = open.choose(rng) else {
                ok = false;
                break;
            };
            e.push((u, v));
            deg[u] += 1;
            deg[v] += 1;
        }
        if !ok {
            continue;
        }
        for _ in 0..extra {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v && deg[u] < delta && deg[v] < delta && !e.contains(&(u.min(v), u.max(v))) && !e.contains(&(u.max(v), u.min(v))) {
                e.push((u.min(v), u.max(v)));
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        let g = Graph::new(n, e)?;
        if g.max_degree() != delta || g.is_complete() {
            continue;
        }
        let lists = maxdeg_lists(&g, fs.usize("palette", delta + 1)?, rng);
        let request = random_request(fs, &lists, rng)?;
        return instance(g, lists, request);
    }
    Err(Error::BudgetExceeded("random-bounded-degree: no graph of the requested maximum degree found".into()))
}

fn random_treedepth(fs: &FamilySpec, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let k = fs.usize("k", 3)?;
    let n = fs.usize("n", 10)?;
    let p = fs.prob("p", 0.6)?;
    if k == 0 {
        return Err(Error::precondition("random-treedepth needs k >= 1"));
    }
    let mut parent: Vec<Option<Vertex>> = Vec::with_capacity(n);
    let mut depth = Vec::with_capacity(n);
    for v in 0..n {
        let open: Vec<Vertex> = (0..v).filter(|&u| depth[u] < k).collect();
        let par = if v == 0 || open.is_empty() || rng.gen_bool(0.1) { None } else { open.choose(rng).copied() };
        depth.push(par.map_or(1, |u| depth[u] + 1));
        parent.push(par);
    }
    let mut e = Vec::new();
    for v in 0..n {
        let mut a = parent[v];
        while let Some(u) = a {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
            a = parent[u];
        }
    }
    let palette: Vec<Color> = (1..=fs.usize("palette", k + 2)?.max(k) as Color).collect();
    let lists: Vec<Vec<Color>> = (0..n).map(|_| sample(rng, &palette, k)).collect();
    let request = random_request(fs, &lists, rng)?;
    let mut inst = instance(Graph::new(n, e)?, lists, request)?;
    inst.structure = Some(Structure::Treedepth { k, parent });
    Ok(inst)
}

/// Non-regular 3-connected graphs of maximum degree `Δ`. There are none for
/// `Δ = 3`.
fn random_three_connected(fs: &FamilySpec, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let delta = fs.usize("delta", 4)?;
    let n = fs.usize("n", 12)?;
    if delta == 3 {
        return Err(Error::precondition("a 3-connected graph of maximum degree 3 is 3-regular"));
    }
    if delta < 3 || n < delta + 2 {
        return Err(Error::precondition("random-3-connected needs delta >= 4 and n >= delta + 2"));
    }
    for _ in 0..2000 {
        let mut deg = vec![0usize; n];
        let mut adj = vec![vec![false; n]; n];
        let mut e = Vec::new();
        loop {
            let open: Vec<(Vertex, Vertex)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| deg[u] < delta && deg[v] < delta && !adj[u][v])
                .collect();
            let Some(&(u, v)) = open.choose(rng) else { break };
            adj[u][v] = true;
            adj[v][u] = true;
            deg[u] += 1;
            deg[v] += 1;
            e.push((u, v));
        }
        if deg.iter().all(|&d| d == delta) {
            let i = rng.gen_range(0..e.len());
            e.swap_remove(i);
        }
        let g = Graph::new(n, e)?;
        if g.max_degree() != delta || g.is_regular() || !g.is_k_connected(3) {
            continue;
        }
        let lists = maxdeg_lists(&g, fs.usize("palette", delta + 1)?, rng);
        let request = random_request(fs, &lists, rng)?;
        return instance(g, lists, request);
    }
    Err(Error::BudgetExceeded("random-3-connected: no suitable graph found".into()))
}
