//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
//!
//! Every criterion reports hard violations (bugs) separately from places
//! where the literal wording of the criterion cannot hold. The test fails
//! on any violation, and on any literal mismatch other than the two known
//! ones (the family-size recurrence and the two-vertex game value).

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::*;
use flexicolor::degeneracy::{
    component_hypergraph, epsilon, exact_game_connectivity, flexible_degeneracy_order, game_connectivity_by_leaves,
    hypergraph_spanning_set, leaf_fraction, Hypergraph, PipelineOptions,
};
use flexicolor::graph::{validate_ktree_order, ColoringMode};
use flexicolor::io::{generate, solve_instance, verify_result, Instance, Method, SolveOptions};
use flexicolor::list::reduce_to_unique;
use flexicolor::maxdeg::{classify_components, solve_unweighted, solve_weighted, MaxDegOptions};
use flexicolor::oracle::{bruteforce_bad_component, optimal_satisfaction};
use flexicolor::treedepth::{exact_request_probability, solve as td_solve, TdInstance, DEFAULT_NODE_BUDGET};
use flexicolor::treewidth::{best_of_family, build_sa, is_admissible, lambda_family, two_tree_family, Column};
use flexicolor::{parse_rational, Color, Error, Graph, ListAssignment, Rational, Request};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Default)]
struct Outcome {
    checks: usize,
    violations: Vec<String>,
    /// Places where the criterion as worded does not hold.
    literal: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(msg());
        }
    }

    fn pass(&self) -> bool {
        self.violations.is_empty() && self.literal.is_empty()
    }

    fn line(&self, id: usize, elapsed: Duration) -> String {
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        let mut detail = format!("{} checks, {} violations", self.checks, self.violations.len());
        if let Some(v) = self.violations.first() {
            detail += &format!(" (first: {v})");
        }
        for l in &self.literal {
            detail += &format!("; {l}");
        }
        for n in &self.notes {
            detail += &format!("; {n}");
        }
        format!("criterion {id}: {verdict}: {detail} [{:.1}s]", elapsed.as_secs_f64())
    }
}

fn int(x: usize) -> Rational {
    Rational::from_integer(x as i128)
}

/// Proper, on-list, and the satisfied amount recomputed by hand.
fn independent_amount(g: &Graph, lists: &ListAssignment, c: &[Color], r: &Request) -> Option<Rational> {
    let ok = c.len() == g.n()
        && (0..g.n()).all(|v| lists.get(v).contains(&c[v]))
        && g.edges().all(|(a, b)| c[a] != c[b]);
    ok.then(|| weight_of(c, r))
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, size: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(size);
    all.sort_unstable();
    all
}

fn bounded_degree_instance(rng: &mut ChaCha8Rng, seed: u64) -> Instance {
    let delta = rng.gen_range(3..=5);
    let n = rng.gen_range(delta + 2..=16);
    let extra = rng.gen_range(0..=2 * n);
    generate(&format!("random-bounded-degree:delta={delta},n={n},extra={extra},density=0"), seed).unwrap()
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::default();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut sizes = std::collections::BTreeSet::new();
    for i in 0..1000u64 {
        let inst = bounded_degree_instance(&mut rng, i);
        let (g, l) = (&inst.graph, &inst.lists);
        let delta = g.max_degree() as i128;
        let size = i as usize % (g.n() + 1);
        sizes.insert(size);
        let pairs: Vec<_> = random_subset(&mut rng, g.n(), size)
            .into_iter()
            .map(|v| (v, *l.get(v).choose(&mut rng).unwrap()))
            .collect();
        let r = Request::unweighted(pairs).unwrap();
        for mode in [ColoringMode::Brooks, ColoringMode::Greedy] {
            let res = solve_unweighted(g, l, &r, &MaxDegOptions { mode, ..Default::default() });
            let Ok(res) = res else {
                out.check(false, || format!("instance {i} {mode:?}: {}", res.unwrap_err()));
                continue;
            };
            let got = independent_amount(g, l, &res.coloring, &r);
            out.check(got == Some(res.satisfied), || format!("instance {i} {mode:?}: improper or miscounted"));
            let c = if mode == ColoringMode::Brooks { 6 * delta } else { 6 * (delta + 1) };
            let sat = got.unwrap_or_default();
            out.check(sat * c >= int(size), || format!("instance {i} {mode:?}: {sat} of {size} (Δ={delta})"));
        }
    }
    let elapsed = start.elapsed();
    out.check(sizes.len() == 17, || format!("request sizes covered: {sizes:?}"));
    out.check(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"));
    out.notes.push(format!("2000 solves in {:.1}s", elapsed.as_secs_f64()));
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..1000u64 {
        let inst = bounded_degree_instance(&mut rng, 10_000 + i);
        let (g, l) = (&inst.graph, &inst.lists);
        let delta = g.max_degree() as i128;
        let size = rng.gen_range(1..=g.n());
        let unique = i % 2 == 0;
        let mut triples = Vec::new();
        for v in random_subset(&mut rng, g.n(), size) {
            if unique {
                triples.push((v, *l.get(v).choose(&mut rng).unwrap(), Rational::from_integer(rng.gen_range(1..=10))));
            } else {
                let k = rng.gen_range(1..=l.len_of(v));
                for &c in l.get(v).choose_multiple(&mut rng, k) {
                    triples.push((v, c, Rational::new(rng.gen_range(0..=12), rng.gen_range(1..=4))));
                }
            }
        }
        let r = if unique { Request::uniquely_weighted(triples) } else { Request::weighted(triples) }.unwrap();
        let res = match solve_weighted(g, l, &r, &MaxDegOptions::default()) {
            Ok(res) => res,
            Err(e) => {
                out.check(false, || format!("instance {i}: {e}"));
                continue;
            }
        };
        let got = independent_amount(g, l, &res.coloring, &r);
        out.check(got == Some(res.satisfied), || format!("instance {i}: improper or miscounted"));
        let sat = got.unwrap_or_default();
        let total = r.total();
        out.check(sat * 2 * delta.pow(4) >= total, || format!("instance {i}: {sat} of {total} (Δ={delta})"));
        if unique {
            out.check(sat * 2 * delta.pow(3) >= total, || format!("instance {i}: unique {sat} of {total} (Δ={delta})"));
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::default();
    for (name, expected) in [("fig2", 0), ("fig1", 0), ("two-cliques-matching:delta=3", 1)] {
        let inst = generate(name, 0).unwrap();
        let res = optimal_satisfaction(&inst.graph, &inst.lists, &inst.request).unwrap();
        out.check(res.optimum == int(expected), || format!("{name}: optimum {} expected {expected}", res.optimum));
        out.check(res.count > 0, || format!("{name}: no proper coloring"));
        let naive = best_weight(&inst.graph, inst.lists.as_slice(), &inst.request);
        out.check(naive == Some(int(expected)), || format!("{name}: naive optimum {naive:?}"));
    }
    out
}

fn two_tree(n: usize, seed: u64) -> Instance {
    generate(&format!("random-ktree:k=2,n={n},density=0"), seed).unwrap()
}

fn time_two_tree(inst: &Instance) -> Duration {
    (0..3)
        .map(|_| {
            let t = Instant::now();
            let order = validate_ktree_order(&inst.graph, 2, &(0..inst.graph.n()).collect::<Vec<_>>()).unwrap();
            let f = two_tree_family(&inst.graph, &order, &inst.lists).unwrap();
            let e = t.elapsed();
            assert_eq!(f.len(), 6);
            e
        })
        .min()
        .unwrap()
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::default();
    for (n, seed) in [(100_000, 40), (5_000, 41), (17, 42)] {
        let inst = two_tree(n, seed);
        let order = inst.ktree_order().unwrap();
        let f = two_tree_family(&inst.graph, &order, &inst.lists).unwrap();
        let col = |v: usize| -> Column { std::array::from_fn(|i| f.members[i][v]) };
        let bad_edges = inst
            .graph
            .edges()
            .filter(|&(a, b)| !is_admissible(&col(a), &col(b), inst.lists.get(a), inst.lists.get(b)))
            .count();
        out.check(bad_edges == 0, || format!("n={n}: {bad_edges} inadmissible edges"));
        out.check(f.verify(&inst.graph, &inst.lists).is_ok(), || format!("n={n}: family fails verification"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (n, seed) in [(3, 50), (10, 51), (60, 52), (200, 53)] {
        let inst = two_tree(n, seed);
        let (g, l) = (&inst.graph, &inst.lists);
        let f = two_tree_family(g, &inst.ktree_order().unwrap(), l).unwrap();
        for j in 0..1000 {
            let density = rng.gen_range(0.05..1.0);
            let mut triples = Vec::new();
            for v in 0..n {
                for &c in l.get(v) {
                    if rng.gen_bool(density) {
                        triples.push((v, c, Rational::new(rng.gen_range(0..=20), rng.gen_range(1..=5))));
                    }
                }
            }
            let r = Request::weighted(triples).unwrap();
            let best = best_of_family(&f, g, l, &r).unwrap();
            let naive = f.members.iter().map(|m| weight_of(m, &r)).max().unwrap();
            let got = independent_amount(g, l, &best.coloring, &r);
            out.check(got == Some(naive) && best.satisfied == naive, || format!("n={n} request {j}: best member mismatch"));
            out.check(naive * 3 >= r.total(), || format!("n={n} request {j}: {naive} of {}", r.total()));
        }
    }

    let small = time_two_tree(&two_tree(20_000, 60));
    let large = time_two_tree(&two_tree(100_000, 61));
    let ratio = large.as_secs_f64() / small.as_secs_f64().max(1e-6);
    out.check(large < Duration::from_secs(5), || format!("n=1e5 took {large:?}"));
    out.check(ratio < 15.0, || format!("time ratio 1e5/2e4 = {ratio:.1}"));
    out.notes.push(format!("n=2e4 {:.1}ms, n=1e5 {:.1}ms, ratio {ratio:.1}", small.as_secs_f64() * 1e3, large.as_secs_f64() * 1e3));
    out
}

fn compositions(total: usize, max: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    (1..=max.min(total))
        .flat_map(|first| {
            compositions(total - first, max).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn binom(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn fact(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Level multiplier `(C(m, λ_t − 1) + C(m, λ_t)) · λ_t!` where `m` is
/// `k_t − shift` and `k_t = λ_1 + … + λ_t − 1`; the first level is `λ_1!`.
fn recurrence(parts: &[usize], shift: usize) -> u128 {
    let mut size = fact(parts[0]);
    let mut sum = parts[0];
    for &lt in &parts[1..] {
        sum += lt;
        let m = sum - 1 - shift;
        size *= (binom(m, lt - 1) + binom(m, lt)) * fact(lt);
    }
    size
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatched = Vec::new();
    for k in 1..=4usize {
        for parts in compositions(k + 1, 3) {
            let spec: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
            let spec = spec.join("+");
            let mut size = None;
            for rep in 0..3 {
                let n = rng.gen_range(k + 1..=12);
                let inst = generate(&format!("random-ktree:k={k},n={n},parts={spec},density=0"), rng.gen()).unwrap();
                let f = lambda_family(&inst.graph, &inst.ktree_order().unwrap(), inst.lambda.as_ref().unwrap(), &inst.lists)
                    .unwrap();
                let proper = f.members.iter().all(|m| independent_amount(&inst.graph, &inst.lists, m, &Request::empty()).is_some());
                out.check(proper, || format!("parts {spec} rep {rep}: improper member"));
                for v in 0..n {
                    for &c in inst.lists.get(v) {
                        let count = f.members.iter().filter(|m| m[v] == c).count();
                        out.check(count * (k + 1) == f.len(), || {
                            format!("parts {spec}: color {c} at {v} used {count} of {}", f.len())
                        });
                    }
                }
                size = Some(f.len() as u128);
            }
            let size = size.unwrap();
            out.check(size == fact(k + 1), || format!("parts {spec}: |D| = {size}"));
            out.check(recurrence(&parts, 0) == size, || format!("parts {spec}: C(k,·) recurrence gives {}", recurrence(&parts, 0)));
            let literal = recurrence(&parts, 1);
            if literal != size {
                mismatched.push(format!("{spec}:{literal}≠{size}"));
            }
        }
    }
    let fig = generate("fig3", 0).unwrap();
    let sa: Vec<usize> = build_sa(&fig.ktree_order().unwrap(), &[0, 1], 1).unwrap().iter().map(|v| v + 1).collect();
    out.check(sa == vec![1, 2, 4, 5, 7, 8], || format!("fig3 S_A = {sa:?}"));
    if !mismatched.is_empty() {
        out.literal.push(format!(
            "recurrence with C(k−1,·) disagrees with |D| on {} compositions ({}); the C(k,·) form matches on all",
            mismatched.len(),
            mismatched.join(", ")
        ));
    }
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..500u64 {
        let k = 1 + i as usize % 4;
        let n = rng.gen_range(1..=20);
        let weights = ["unit", "unique", "general"][i as usize % 3];
        let density = rng.gen_range(0.1..=1.0);
        let p = rng.gen_range(0.2..=0.9);
        let inst = generate(&format!("random-treedepth:k={k},n={n},p={p},density={density},weights={weights}"), i).unwrap();
        let (k, forest) = inst.treedepth_forest().unwrap();
        let (g, l, r) = (&inst.graph, &inst.lists, &inst.request);
        let steered = reduce_to_unique(r);
        let td = TdInstance::new(g, &forest, l, k, &steered).unwrap();
        for e in steered.entries() {
            let pr = exact_request_probability(&td, e.vertex, e.color).unwrap();
            out.check(pr * k as i128 >= int(1), || format!("instance {i}: P({}={}) = {pr} < 1/{k}", e.vertex, e.color));
        }
        let res = match td_solve(g, &forest, l, k, r, DEFAULT_NODE_BUDGET) {
            Ok(res) => res,
            Err(e) => {
                out.check(false, || format!("instance {i}: {e}"));
                continue;
            }
        };
        let got = independent_amount(g, l, &res.coloring, r);
        out.check(got == Some(res.satisfied), || format!("instance {i}: improper or miscounted"));
        let sat = got.unwrap_or_default();
        let total = r.total();
        let bound = if weights == "general" { (k * k) as i128 } else { k as i128 };
        out.check(sat * bound >= total, || format!("instance {i} ({weights}): {sat} of {total}, k={k}"));
        out.check(weight_of(&res.coloring, &steered) * k as i128 >= steered.total(), || {
            format!("instance {i}: reduced request below 1/{k}")
        });
    }
    out
}

/// Union-find connectivity of `chosen` edges over all vertices.
fn spans(n: usize, edges: &[Vec<usize>], chosen: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &i in chosen {
        for w in edges[i].windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// Every cut crossed by at least three edges, by subset enumeration.
fn three_edge_connected_naive(n: usize, edges: &[Vec<usize>]) -> bool {
    (1u32..(1 << (n - 1))).all(|s| {
        let side = |v: usize| v > 0 && s >> (v - 1) & 1 == 1;
        edges.iter().filter(|e| e.iter().any(|&v| side(v)) && e.iter().any(|&v| !side(v))).count() >= 3
    })
}

fn check_spanning(out: &mut Outcome, label: &str, h: &Hypergraph, d: usize) {
    let edges = h.edges();
    let a = match hypergraph_spanning_set(h, d) {
        Ok(a) => a,
        Err(e) => {
            out.check(false, || format!("{label}: {e}"));
            return;
        }
    };
    let mut dedup = a.clone();
    dedup.sort_unstable();
    dedup.dedup();
    out.check(dedup.len() == a.len() && a.iter().all(|&i| i < edges.len()), || format!("{label}: bad indices"));
    out.check(spans(h.n(), edges, &a), || format!("{label}: output not connected"));
    let bound = (int(1) - epsilon(d)) * int(edges.len());
    out.check(int(a.len()) <= bound, || format!("{label}: |A| = {} > {bound}", a.len()));
    out.check(int(edges.len()) * d as i128 >= int(3 * h.n()), || format!("{label}: |E| < 3n/d"));
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::default();
    out.check(epsilon(2) == q(1, 3) && epsilon(3) == q(1, 4) && epsilon(4) == q(3, 19), || "ε table".into());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 220 {
        attempts += 1;
        let n = rng.gen_range(2..=30);
        let d = rng.gen_range(2..=6usize);
        let mut edges: Vec<Vec<usize>> = Vec::new();
        let mut h = Hypergraph::new(n, vec![]).unwrap();
        while edges.len() < 6 * n {
            let size = rng.gen_range(2..=d.min(n));
            edges.push(random_subset(&mut rng, n, size));
            if edges.len() * d >= 3 * n {
                h = Hypergraph::new(n, edges.clone()).unwrap();
                if h.is_k_edge_connected(3) {
                    break;
                }
            }
        }
        if !h.is_k_edge_connected(3) || h.edges().is_empty() {
            continue;
        }
        if n <= 12 {
            out.check(three_edge_connected_naive(n, h.edges()), || format!("hypergraph {attempts}: not 3-edge-connected"));
        }
        accepted += 1;
        check_spanning(&mut out, &format!("random hypergraph {attempts}"), &h, h.rank().max(2));
    }
    let mut components = 0;
    for seed in 0..400u64 {
        let n = rng.gen_range(6..=24);
        let inst = generate(&format!("random-3-connected:delta=4,n={n},density=0"), seed).unwrap();
        let g = &inst.graph;
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.shuffle(&mut rng);
        let mut rp: Vec<usize> = Vec::new();
        for v in order {
            if rp.iter().all(|&u| !g.has_edge(u, v)) {
                rp.push(v);
            }
        }
        rp.sort_unstable();
        let (h, _) = component_hypergraph(g, &rp).unwrap();
        if h.n() < 2 {
            continue;
        }
        out.check(h.is_k_edge_connected(3), || format!("component hypergraph {seed}: not 3-edge-connected"));
        components += 1;
        check_spanning(&mut out, &format!("component hypergraph {seed}"), &h, 4);
    }
    out.notes.push(format!("{accepted} random and {components} component hypergraphs"));
    out
}

fn three_connected_naive(g: &Graph) -> bool {
    let n = g.n();
    n >= 4
        && (0..n).all(|a| {
            (a..n).all(|b| {
                let keep: Vec<bool> = (0..n).map(|v| v != a && v != b).collect();
                connected_within(g, &keep)
            })
        })
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::default();
    let refused = generate("random-3-connected:delta=3,n=10", 0);
    out.check(matches!(refused, Err(Error::Precondition(_))), || "Δ=3 generator did not refuse".into());
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let delta = 4;
    for i in 0..120u64 {
        let n = rng.gen_range(6..=24);
        let inst = generate(&format!("random-3-connected:delta={delta},n={n},density=0"), 800 + i).unwrap();
        let g = &inst.graph;
        out.check(
            g.max_degree() == delta && (0..n).any(|v| g.degree(v) < delta) && three_connected_naive(g),
            || format!("instance {i}: not a 3-connected non-regular Δ=4 graph"),
        );
        let low: Vec<usize> = (0..n).filter(|&v| g.degree(v) < delta).collect();
        let r0 = loop {
            let size = rng.gen_range(1..=n);
            let r0 = random_subset(&mut rng, n, size);
            if !(low.len() == 1 && r0 == low) {
                break r0;
            }
        };
        let mode = if i % 2 == 0 { ColoringMode::Brooks } else { ColoringMode::Greedy };
        let res = match flexible_degeneracy_order(g, &r0, &PipelineOptions { mode, distance_k: None }) {
            Ok(res) => res,
            Err(e) => {
                out.check(false, || format!("instance {i}: {e}"));
                continue;
            }
        };
        let order = &res.ordering.order;
        let mut pos = vec![usize::MAX; n];
        for (j, &v) in order.iter().enumerate() {
            if v < n {
                pos[v] = j;
            }
        }
        let perm = order.len() == n && pos.iter().all(|&p| p != usize::MAX);
        out.check(perm, || format!("instance {i}: order is not a permutation"));
        if !perm {
            continue;
        }
        let back = (0..n).map(|v| g.neighbors(v).iter().filter(|&&u| pos[u] < pos[v]).count()).max().unwrap();
        out.check(back < delta, || format!("instance {i}: back-degree {back}"));
        let free: Vec<usize> = (0..n).filter(|&v| g.neighbors(v).iter().all(|&u| pos[u] > pos[v])).collect();
        let hit = r0.iter().filter(|v| free.contains(v)).count();
        out.check(free == res.ordering.free && hit == res.achieved, || format!("instance {i}: free set misreported"));
        out.check(int(hit) >= res.certified, || format!("instance {i}: {hit} free requested < {}", res.certified));
        out.check(res.certified >= res.composed, || format!("instance {i}: certified below composed bound"));
    }
    out.notes.push("Δ=4 only: a 3-connected graph of maximum degree 3 is 3-regular".into());
    out
}

/// Best `|R'|` over removable `R' ⊆ R`, straight from the definition.
fn remover_value(g: &Graph, r: &[usize]) -> Rational {
    let mut best = 0;
    for s in 0u32..(1 << r.len()) {
        let keep: Vec<bool> = (0..g.n()).map(|v| !r.iter().enumerate().any(|(i, &x)| x == v && s >> i & 1 == 1)).collect();
        let ok = keep.iter().any(|&k| k)
            && connected_within(g, &keep)
            && (0..g.n()).all(|v| keep[v] || g.neighbors(v).iter().any(|&u| keep[u]));
        if ok {
            best = best.max(s.count_ones());
        }
    }
    Rational::new(best as i128, r.len() as i128)
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// Smallest edge code over relabelings that sort vertices by degree.
fn canonical(n: usize, adj: &[u8]) -> u32 {
    let deg: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let mut slots: Vec<u32> = deg.clone();
    slots.sort_unstable_by(|a, b| b.cmp(a));
    let mut best = u32::MAX;
    let mut perm = Vec::with_capacity(n);
    fn rec(n: usize, adj: &[u8], deg: &[u32], slots: &[u32], used: u8, perm: &mut Vec<usize>, best: &mut u32) {
        if perm.len() == n {
            let mut code = 0u32;
            for i in 0..n {
                for j in i + 1..n {
                    if adj[perm[i]] >> perm[j] & 1 == 1 {
                        code |= 1 << pair_index(n, i, j);
                    }
                }
            }
            *best = (*best).min(code);
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 0 && deg[v] == slots[perm.len()] {
                perm.push(v);
                rec(n, adj, deg, slots, used | 1 << v, perm, best);
                perm.pop();
            }
        }
    }
    rec(n, adj, &deg, &slots, 0, &mut perm, &mut best);
    best
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, grown by adding a vertex to the classes on `n − 1`.
fn connected_graphs(max_n: usize) -> Vec<Vec<Vec<u8>>> {
    let mut levels: Vec<Vec<Vec<u8>>> = vec![vec![], vec![vec![0]]];
    for n in 2..=max_n {
        let mut seen: BTreeMap<u32, Vec<u8>> = BTreeMap::new();
        for prev in &levels[n - 1] {
            for mask in 1u8..(1 << (n - 1)) {
                let mut adj = prev.clone();
                for (v, a) in adj.iter_mut().enumerate() {
                    if mask >> v & 1 == 1 {
                        *a |= 1 << (n - 1);
                    }
                }
                adj.push(mask);
                seen.entry(canonical(n, &adj)).or_insert(adj);
            }
        }
        levels.push(seen.into_values().collect());
    }
    levels
}

fn to_graph(adj: &[u8]) -> Graph {
    let n = adj.len();
    Graph::new(n, (0..n).flat_map(|a| (a + 1..n).filter(move |&b| adj[a] >> b & 1 == 1).map(move |b| (a, b)))).unwrap()
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::default();
    for (name, g, expected) in [("C4", Graph::cycle(4), q(1, 2)), ("K4", Graph::complete(4), q(3, 4))] {
        let naive = (1u32..(1 << g.n()))
            .map(|s| remover_value(&g, &(0..g.n()).filter(|&v| s >> v & 1 == 1).collect::<Vec<_>>()))
            .min()
            .unwrap();
        let a = exact_game_connectivity(&g, 16).unwrap().value;
        let b = game_connectivity_by_leaves(&g, 16, 1 << 20).unwrap().value;
        out.check(naive == expected && a == expected && b == expected, || format!("{name}: {naive} / {a} / {b}"));
    }
    let fig5 = generate("fig5", 0).unwrap().graph;
    let dark = [0, 1, 2, 3, 4];
    let l = leaf_fraction(&fig5, &dark).unwrap();
    out.check(l == q(2, 5) && remover_value(&fig5, &dark) == q(2, 5), || format!("fig5: l(R) = {l}"));

    let levels = connected_graphs(7);
    let counts: Vec<usize> = levels[1..].iter().map(Vec::len).collect();
    out.check(counts == [1, 1, 2, 6, 21, 112, 853], || format!("class counts {counts:?}"));
    let mut disagree = Vec::new();
    for graphs in &levels[1..] {
        for adj in graphs {
            let g = to_graph(adj);
            let a = exact_game_connectivity(&g, 16).unwrap().value;
            let b = game_connectivity_by_leaves(&g, 16, 1 << 22).unwrap().value;
            out.checks += 1;
            if a != b {
                disagree.push((g, a, b));
            }
        }
    }
    let only_k2 = disagree.len() == 1 && disagree[0].0 == Graph::path(2);
    out.check(disagree.is_empty() || only_k2, || format!("{} graphs disagree", disagree.len()));
    for (g, a, b) in &disagree {
        out.literal.push(format!(
            "formulations disagree on the {}-vertex graph with edges {:?}: remove-set {a}, spanning-tree leaves {b}",
            g.n(),
            g.edges().collect::<Vec<_>>()
        ));
    }
    out.notes.push(format!("{} classes swept", counts.iter().sum::<usize>()));
    out
}

fn check_classification(out: &mut Outcome, label: &str, g: &Graph, l: &ListAssignment, prefs: &[(usize, Color)]) {
    let reports = classify_components(g, l, prefs).unwrap();
    let mut pref = vec![None; g.n()];
    for &(v, c) in prefs {
        pref[v] = Some(c);
    }
    let mut covered = vec![false; g.n()];
    for rep in &reports {
        let sub = g.induced(&rep.vertices);
        for (i, &v) in rep.vertices.iter().enumerate() {
            covered[v] = true;
            let pruned: Vec<Color> = l
                .get(v)
                .iter()
                .copied()
                .filter(|&c| !g.neighbors(v).iter().any(|&u| pref[u] == Some(c)))
                .collect();
            out.check(rep.lists[i] == pruned, || format!("{label}: pruned list of {v}"));
        }
        let brute = bruteforce_bad_component(&sub, &rep.lists).unwrap();
        out.check(rep.bad == brute, || format!("{label}: component {:?} bad={} brute={brute}", rep.vertices, rep.bad));
    }
    out.check((0..g.n()).all(|v| covered[v] == pref[v].is_none()), || format!("{label}: components do not cover g - S"));
}

fn criterion_10() -> Outcome {
    let mut out = Outcome::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut cases: Vec<(Instance, Vec<(Method, ColoringMode)>)> = Vec::new();
    let weights = ["unit", "unique", "general"];
    for i in 0..90u64 {
        let w = weights[i as usize % 3];
        let delta = 3 + i as usize % 2;
        let n = rng.gen_range(delta + 2..=10);
        let inst = generate(&format!("random-bounded-degree:delta={delta},n={n},density=0.7,weights={w}"), i).unwrap();
        let mut methods = vec![(Method::MaxDegWeighted, ColoringMode::Brooks)];
        if w == "unit" {
            methods.push((Method::MaxDeg, ColoringMode::Brooks));
            methods.push((Method::MaxDeg, ColoringMode::Greedy));
        }
        cases.push((inst, methods));
    }
    for i in 0..40u64 {
        let k = 1 + i as usize % 2;
        let n = rng.gen_range(k + 1..=10);
        let w = weights[i as usize % 3];
        cases.push((generate(&format!("random-ktree:k={k},n={n},weights={w}"), 100 + i).unwrap(), vec![(Method::TwoTree, ColoringMode::Brooks)]));
    }
    for (i, parts) in ["1+1", "2+1", "1+2", "1+1+1", "2+2", "3+1", "1+1+1+1"].iter().cycle().take(28).enumerate() {
        let k = parts.split('+').map(|p| p.parse::<usize>().unwrap()).sum::<usize>() - 1;
        let n = rng.gen_range(k + 1..=9);
        let spec = format!("random-ktree:k={k},n={n},parts={parts},weights={}", weights[i % 3]);
        cases.push((generate(&spec, 200 + i as u64).unwrap(), vec![(Method::Lambda, ColoringMode::Brooks)]));
    }
    for i in 0..60u64 {
        let k = 2 + i as usize % 2;
        let n = rng.gen_range(2..=10);
        let spec = format!("random-treedepth:k={k},n={n},weights={}", weights[i as usize % 3]);
        cases.push((generate(&spec, 300 + i).unwrap(), vec![(Method::Treedepth, ColoringMode::Brooks)]));
    }

    let mut solved = 0;
    let mut skipped = 0;
    for (inst, methods) in &cases {
        let opt = match optimal_satisfaction(&inst.graph, &inst.lists, &inst.request) {
            Ok(o) => o.optimum,
            Err(Error::BudgetExceeded(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => panic!("{}: oracle failed: {e}", inst.name),
        };
        for &(method, mode) in methods {
            let label = format!("{} seed {:?} {}", inst.name, inst.seed, method.name());
            let doc = match solve_instance(inst, &SolveOptions { mode, ..SolveOptions::new(method) }) {
                Ok(d) => d,
                Err(e) => {
                    out.check(false, || format!("{label}: {e}"));
                    continue;
                }
            };
            solved += 1;
            let sat = parse_rational(&doc.satisfied).unwrap();
            let cert = parse_rational(&doc.certified).unwrap();
            let coloring = doc.coloring.clone().unwrap_or_default();
            let got = independent_amount(&inst.graph, &inst.lists, &coloring, &inst.request);
            out.check(got == Some(sat), || format!("{label}: improper or miscounted"));
            out.check(sat <= opt, || format!("{label}: satisfied {sat} above optimum {opt}"));
            out.check(cert <= opt, || format!("{label}: certified {cert} above optimum {opt}"));
            out.check(verify_result(&doc, inst).is_ok(), || format!("{label}: result does not verify"));
        }

        if methods[0].0 == Method::MaxDegWeighted && inst.request.kind() != flexicolor::list::RequestKind::Weighted {
            let (g, l) = (&inst.graph, &inst.lists);
            let res = solve_unweighted(g, l, &inst.request, &MaxDegOptions::default()).unwrap();
            let with_color = |vs: &[usize]| -> Vec<(usize, Color)> {
                vs.iter().map(|&v| (v, inst.request.color_of(v).unwrap())).collect()
            };
            check_classification(&mut out, &format!("{} R'", inst.name), g, l, &with_color(&res.trace.r_prime));
            check_classification(&mut out, &format!("{} R''", inst.name), g, l, &with_color(&res.trace.r_double_prime));
            for j in 0..3 {
                let size = rng.gen_range(0..g.n());
                let prefs: Vec<_> =
                    random_subset(&mut rng, g.n(), size).into_iter().map(|v| (v, *l.get(v).choose(&mut rng).unwrap())).collect();
                check_classification(&mut out, &format!("{} random {j}", inst.name), g, l, &prefs);
            }
        }
    }
    // tight lists: every list has exactly deg(v) colors
    for i in 0..40u64 {
        let delta = 3 + i as usize % 2;
        let n = rng.gen_range(delta + 2..=10);
        let g = generate(&format!("random-bounded-degree:delta={delta},n={n},density=0"), 400 + i).unwrap().graph;
        let l = ListAssignment::new((0..n).map(|v| (1..=g.degree(v) as Color).collect()).collect()).unwrap();
        for j in 0..3 {
            let size = rng.gen_range(0..n);
            let prefs: Vec<_> = random_subset(&mut rng, n, size).into_iter().map(|v| (v, *l.get(v).choose(&mut rng).unwrap())).collect();
            check_classification(&mut out, &format!("tight {i}.{j}"), &g, &l, &prefs);
        }
    }
    out.check(solved >= 200, || format!("only {solved} solver runs"));
    out.notes.push(format!("{solved} solver runs on {} instances, {skipped} over the oracle budget", cases.len() - skipped));
    out
}

#[test]
fn acceptance() {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut results = Vec::new();
    for (i, f) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        println!("{}", out.line(i + 1, t.elapsed()));
        results.push(out);
    }
    for (i, out) in results.iter().enumerate() {
        assert!(out.violations.is_empty(), "criterion {}: {:?}", i + 1, out.violations);
        let expected_literal = matches!(i + 1, 5 | 9);
        assert_eq!(!out.literal.is_empty(), expected_literal, "criterion {}: {:?}", i + 1, out.literal);
    }
}
