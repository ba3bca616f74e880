use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{timed, CheckSpec, Outcome, TheoremId, Verdict, MAX_EXCHANGE_GENERATORS, MAX_GRAPH_VERTICES};
use crate::clutter::{
    complement_connected_clutter, connected_clutter, elim_block_graph, elim_complete, elim_cycle, eliminate_cone,
    find_elimination_order, reduced_form, verify_certificate, Clutter, EliminationCertificate, SearchOutcome, Strategy,
};
use crate::enumerate::{connected_graphs_up_to_iso, graphs_up_to_iso};
use crate::error::Result;
use crate::families::{
    assemble_co_chordal_cactus, complete, complete_multipartite, cycle, gamma_graph, generate_2k2c4_free, grid,
    is_2k2_c4_free, is_block_graph, partially_split, path, random_block_graph, random_cactus_decomposition,
    random_tree_max_degree, regularity_jump_graph, rng_for, validate_decomposition, SkeletonShape,
};
use crate::graph::{Graph, VertexSet};
use crate::ideal::{connected_ideal, Monomial, MonomialIdeal, QuotientOutcome};
use crate::io::{ClutterJson, GraphJson, IdealJson};
use crate::resolution::{betti, has_linear_resolution, regularity, Field};

pub(super) fn run(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    use TheoremId::*;
    match spec.theorem {
        L3_1 => complete_graphs(spec),
        T3_2 => block_graphs(spec),
        T3_3 => cycles(spec),
        L3_4 => inclusion(spec),
        R3_5 => cycle_complements(spec),
        L3_6 => joins(spec),
        L3_7 => complement_edges(spec),
        L3_9 | O3_10 => reduced_forms(spec),
        L3_11 => cones(spec),
        T4_7 | T4_8 | T4_9 => cactus_chordality(spec),
        T4_11 => free_graphs(spec),
        T4_13 => co_grids(spec),
        T5_1 => cactus_regularity(spec),
        T5_2 => co_grid_regularity(spec),
        C5_3 => linearity(spec),
        E5_6 => example(spec),
        L6_1 => five_divisors(spec),
        T6_2 => tree_complements(spec),
        T6_3 => special_powers(spec),
        T6_5 => partially_split_powers(spec),
    }
}

fn range(spec: &CheckSpec, lo: usize, hi: usize) -> std::ops::RangeInclusive<usize> {
    spec.min_n.unwrap_or(lo)..=spec.max_n.unwrap_or(hi)
}

fn fail(predicate: &str, graph: Option<&Graph>, extra: Value) -> Outcome {
    let mut w = json!({ "predicate": predicate });
    if let Some(g) = graph {
        w["graph"] = serde_json::to_value(GraphJson::from(g)).unwrap();
    }
    if let Value::Object(m) = extra {
        for (k, v) in m {
            w[k] = v;
        }
    }
    Outcome::Fail { witness: w }
}

fn clutter_json(c: &Clutter) -> Value {
    serde_json::to_value(ClutterJson { n: c.n(), d: c.d(), edges: c.edges().iter().map(|e| e.to_vec()).collect() }).unwrap()
}

fn ideal_json(i: &MonomialIdeal) -> Value {
    serde_json::to_value(IdealJson { n: i.n(), gens: i.gens().iter().map(|g| g.exps().to_vec()).collect() }).unwrap()
}

fn error_outcome(context: &str, e: crate::error::Error, graph: Option<&Graph>) -> Outcome {
    fail(context, graph, json!({ "error": e.to_string() }))
}

fn replay(c: &Clutter, cert: &EliminationCertificate, what: &str, g: &Graph) -> Option<Outcome> {
    verify_certificate(c, cert)
        .err()
        .map(|v| fail(what, Some(g), json!({ "clutter": clutter_json(c), "violation": v.to_string() })))
}

/// Backtracking search for a chordality certificate, replayed on success.
fn chordal(c: &Clutter, g: &Graph, budget: u64) -> Outcome {
    match find_elimination_order(c, Strategy::Backtracking, budget).0 {
        SearchOutcome::Found(cert) => replay(c, &cert, "search certificate replays", g).unwrap_or(Outcome::Pass),
        SearchOutcome::Refuted => fail("clutter is chordal", Some(g), json!({ "clutter": clutter_json(c), "search": "refuted" })),
        SearchOutcome::Exhausted | SearchOutcome::DeadEnd => {
            Outcome::Inconclusive { reason: "search budget exhausted".into(), budget: Some(budget) }
        }
    }
}

fn builder_and_search(g: &Graph, r: usize, cert: Result<EliminationCertificate>, budget: u64) -> Outcome {
    let c = match connected_clutter(g, r) {
        Ok(c) => c,
        Err(e) => return error_outcome("connected clutter", e, Some(g)),
    };
    let cert = match cert {
        Ok(c) => c,
        Err(e) => return error_outcome("builder produces a certificate", e, Some(g)),
    };
    if let Some(f) = replay(&c, &cert, "builder certificate replays", g) {
        return f;
    }
    chordal(&c, g, budget)
}

fn par_verdicts<T: Sync>(theorem: TheoremId, items: Vec<(String, T)>, f: impl Fn(&T) -> Outcome + Sync) -> Vec<Verdict> {
    items.par_iter().map(|(name, item)| timed(theorem, name.clone(), || f(item))).collect()
}

fn complete_graphs(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let max_r = spec.max_r.unwrap_or(usize::MAX);
    let items: Vec<(String, (usize, usize))> = range(spec, 2, 8)
        .flat_map(|n| (1..n.max(1)).filter(move |&r| r <= max_r).map(move |r| (format!("K_{n} r={r}"), (n, r))))
        .collect();
    Ok(par_verdicts(spec.theorem, items, |&(n, r)| {
        builder_and_search(&complete(n).unwrap(), r, elim_complete(n, r), spec.budget)
    }))
}

fn block_graphs(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let max_n = spec.max_n.unwrap_or(9);
    let mut items = Vec::new();
    for &seed in &spec.seeds {
        let g = random_block_graph(max_n, seed)?;
        for r in 2..=spec.max_r.unwrap_or(3) {
            items.push((format!("block graph seed={seed} n={} r={r}", g.n()), (g.clone(), r)));
        }
    }
    Ok(par_verdicts(spec.theorem, items, |(g, r)| {
        if !is_block_graph(g) {
            return fail("generator returns a block graph", Some(g), json!({}));
        }
        builder_and_search(g, *r, elim_block_graph(g, *r), spec.budget)
    }))
}

fn cycles(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let mut items = Vec::new();
    for n in range(spec, 3, 9) {
        for r in 2..=spec.max_r.unwrap_or(4) {
            items.push((format!("C_{n} r={r}"), (n, r)));
        }
    }
    Ok(par_verdicts(spec.theorem, items, |&(n, r)| builder_and_search(&cycle(n).unwrap(), r, elim_cycle(n, r), spec.budget)))
}

fn inclusion(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let max_r = spec.max_r.unwrap_or(3);
    let mut out = Vec::new();
    let mut strict_high = 0usize;
    for n in range(spec, 1, 6) {
        let graphs = connected_graphs_up_to_iso(n)?;
        for r in 1..=max_r {
            let mut strict = 0;
            let v = timed(spec.theorem, format!("connected graphs n={n} r={r} ({} graphs)", graphs.len()), || {
                for g in &graphs {
                    let lhs = complement_connected_clutter(g, r).unwrap();
                    let rhs = connected_clutter(&g.complement(), r).unwrap();
                    if let Some(e) = lhs.edges().iter().find(|e| !rhs.contains(**e)) {
                        return fail("complement clutter inside C_r(co-G)", Some(g), json!({ "r": r, "edge": e.to_vec() }));
                    }
                    if lhs.len() != rhs.len() {
                        strict += 1;
                        if r <= 2 {
                            return fail("equality for r <= 2", Some(g), json!({ "r": r, "clutter": clutter_json(&rhs) }));
                        }
                    }
                }
                Outcome::Pass
            });
            if r >= 3 {
                strict_high += strict;
            }
            out.push(Verdict { instance: format!("{} [{strict} strict]", v.instance), ..v });
        }
    }
    if max_r >= 3 {
        out.push(timed(spec.theorem, format!("strict inclusion witnessed for r >= 3 ({strict_high} graphs)"), || {
            if strict_high > 0 {
                Outcome::Pass
            } else {
                Outcome::Inconclusive { reason: "no strict inclusion in range".into(), budget: None }
            }
        }));
    }
    Ok(out)
}

fn cycle_complements(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let mut items = Vec::new();
    for n in range(spec, 4, 9) {
        for r in 1..=2 {
            items.push((format!("co-C_{n} r={r}"), (n, r)));
        }
    }
    Ok(par_verdicts(spec.theorem, items, |&(n, r)| {
        let g = cycle(n).unwrap().complement();
        let i = connected_ideal(&g, r).unwrap();
        match regularity(&i, spec.field) {
            Ok(Some(3)) => Outcome::Pass,
            Ok(reg) => fail(
                "regularity equals 3",
                Some(&g),
                json!({ "r": r, "regularity": reg, "ideal": ideal_json(&i), "note": if i.is_zero() { "zero ideal" } else { "" } }),
            ),
            Err(e) => error_outcome("regularity", e, Some(&g)),
        }
    }))
}

/// Some split of `s` into two nonempty sides with every cross pair adjacent.
fn brute_force_join(g: &Graph, s: VertexSet) -> bool {
    let Some(first) = s.min() else { return false };
    // Fix the side of the smallest vertex to count each split once.
    s.without(first).subsets().any(|other| {
        let a = s - other;
        !other.is_empty() && a.iter().all(|u| other.is_subset(g.neighbors(u)))
    })
}

fn joins(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for n in range(spec, 1, 6) {
        let graphs = connected_graphs_up_to_iso(n)?;
        out.push(timed(spec.theorem, format!("connected graphs n={n} ({} graphs)", graphs.len()), || {
            for g in &graphs {
                let is_join = brute_force_join(g, VertexSet::full(n));
                if is_join == g.complement().is_connected() {
                    return fail("nontrivial join iff disconnected complement", Some(g), json!({ "join": is_join }));
                }
                let parts = g.join_decomposition();
                for (i, a) in parts.iter().enumerate() {
                    for b in &parts[i + 1..] {
                        if a.iter().any(|u| !b.is_subset(g.neighbors(u))) {
                            return fail("join parts are fully adjacent", Some(g), json!({ "parts": parts.iter().map(|p| p.to_vec()).collect::<Vec<_>>() }));
                        }
                    }
                }
            }
            Outcome::Pass
        }));
    }
    Ok(out)
}

fn complement_edges(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for n in range(spec, 1, 6) {
        let graphs = graphs_up_to_iso(n)?;
        for r in 1..=spec.max_r.unwrap_or(3) {
            if r + 1 > n {
                continue;
            }
            out.push(timed(spec.theorem, format!("all graphs n={n} r={r} ({} graphs)", graphs.len()), || {
                for g in &graphs {
                    let comp = complement_connected_clutter(g, r).unwrap();
                    let gbar = g.complement();
                    for e in VertexSet::full(n).subsets_of_size(r + 1) {
                        let rhs = gbar.connected_unchecked(e) && brute_force_join(&gbar, e);
                        if comp.contains(e) != rhs {
                            return fail("edge iff connected nontrivial join in co-G", Some(g), json!({ "r": r, "set": e.to_vec() }));
                        }
                    }
                }
                Outcome::Pass
            }));
        }
    }
    Ok(out)
}

fn reduced_forms(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let observation = spec.theorem == TheoremId::O3_10;
    let mut out = Vec::new();
    for n in range(spec, 1, 6) {
        let graphs = connected_graphs_up_to_iso(n)?;
        for r in 1..=spec.max_r.unwrap_or(3) {
            if r + 1 > n {
                continue;
            }
            let mut cases = 0usize;
            let v = timed(spec.theorem, format!("connected graphs n={n} r={r}"), || {
                for g in &graphs {
                    let gbar = g.complement();
                    for &e in complement_connected_clutter(g, r).unwrap().edges() {
                        for x in e.iter().filter(|&x| gbar.is_simplicial_vertex(x).unwrap()) {
                            cases += 1;
                            let (b, d) = match reduced_form(&gbar, e, x) {
                                Ok(p) => p,
                                Err(err) => return error_outcome("reduced form exists", err, Some(g)),
                            };
                            let ctx = json!({ "r": r, "edge": e.to_vec(), "x": x, "b": b.to_vec(), "d": d.to_vec() });
                            let problem = if observation {
                                observation_problem(&gbar, e, x, b)
                            } else {
                                reduced_form_problem(&gbar, e, x, b, d)
                            };
                            if let Some(p) = problem {
                                return fail(p, Some(g), ctx);
                            }
                        }
                    }
                }
                Outcome::Pass
            });
            out.push(Verdict { instance: format!("{} ({cases} edge-vertex pairs)", v.instance), ..v });
        }
    }
    Ok(out)
}

fn reduced_form_problem(gbar: &Graph, e: VertexSet, x: usize, b: VertexSet, d: VertexSet) -> Option<&'static str> {
    if !b.contains(x) || (b | d) != e || b.intersects(d) {
        return Some("b and d partition e with x in b");
    }
    if !gbar.is_clique(d) {
        return Some("d is complete");
    }
    if b.iter().any(|u| !d.is_subset(gbar.neighbors(u))) {
        return Some("b is joined to d");
    }
    if b.without(x).iter().any(|v| e.without(v).is_subset(gbar.neighbors(v))) {
        return Some("no vertex of b can move to d");
    }
    None
}

fn observation_problem(gbar: &Graph, e: VertexSet, x: usize, b: VertexSet) -> Option<&'static str> {
    if e.iter().any(|z| gbar.distance(x, z).unwrap() == Some(2) && !b.contains(z)) {
        return Some("distance-2 vertices lie in b");
    }
    let nx = gbar.neighbors(x) & b;
    if nx.iter().any(|y| (b.without(y) - gbar.neighbors(y)).is_empty()) {
        return Some("each neighbor of x in b misses a vertex of b");
    }
    None
}

fn cones(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let mut items = Vec::new();
    for &seed in &spec.seeds {
        for r in 2..=spec.max_r.unwrap_or(3) {
            for t in 1..=r {
                let m = r + 1 + (seed % 3) as usize;
                let n = (m + 2).min(spec.max_n.unwrap_or(MAX_GRAPH_VERTICES));
                if m > n {
                    continue;
                }
                items.push((format!("cone m={m} n={n} r={r} |b|={t} seed={seed}"), (seed, n, m, r, t)));
            }
        }
    }
    Ok(par_verdicts(spec.theorem, items, |&(seed, n, m, r, t)| {
        let b: VertexSet = (0..t).collect();
        let cone = VertexSet::full(m);
        let mut rng = rng_for(seed);
        let edges: Vec<VertexSet> = VertexSet::full(n)
            .subsets_of_size(r + 1)
            .filter(|e| e.is_subset(cone) || (!b.is_subset(*e) && rng.gen_bool(0.3)))
            .collect();
        let c = Clutter::new(n, r + 1, edges).unwrap();
        let steps = match eliminate_cone(&c, b, cone - b) {
            Ok(s) => s,
            Err(err) => return fail("cone sweep exists", None, json!({ "clutter": clutter_json(&c), "error": err.to_string() })),
        };
        let mut cur = c.clone();
        for (k, &s) in steps.iter().enumerate() {
            let ok = s.len() == r && b.is_subset(s) && cur.is_simplicial_maximal(s).unwrap_or(false);
            if !ok {
                return fail("each step contains b and is simplicial", None, json!({ "clutter": clutter_json(&c), "step": k }));
            }
            cur = cur.delete_subedge(s).unwrap();
        }
        if cur.edges().iter().any(|e| b.is_subset(*e)) {
            return fail("no edge through b remains", None, json!({ "clutter": clutter_json(&c) }));
        }
        Outcome::Pass
    }))
}

/// Seeded co-chordal-cactus host graphs, validated against their decomposition.
fn cactus_instances(spec: &CheckSpec, shapes: &[SkeletonShape]) -> Result<Vec<(String, std::result::Result<Graph, Outcome>)>> {
    let max_n = spec.max_n.unwrap_or(11);
    let mut out = Vec::new();
    for &shape in shapes {
        for &seed in &spec.seeds {
            let d = random_cactus_decomposition(shape, max_n, seed)?;
            let (g, filled) = assemble_co_chordal_cactus(&d, seed)?;
            let checked = match validate_decomposition(&g.complement(), &filled) {
                Ok(()) => Ok(g.clone()),
                Err(v) => Err(fail("generated decomposition validates", Some(&g), json!({ "violation": v.to_string() }))),
            };
            out.push((format!("cactus[{}] seed={seed} n={}", shape.name(), g.n()), checked));
        }
    }
    Ok(out)
}

fn with_ranks<T: Clone>(items: Vec<(String, T)>, rs: std::ops::RangeInclusive<usize>) -> Vec<(String, (T, usize))> {
    items
        .into_iter()
        .flat_map(|(name, g)| rs.clone().map(move |r| (format!("{name} r={r}"), (g.clone(), r))))
        .collect()
}

fn cactus_chordality(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    use SkeletonShape::*;
    let shapes: &[SkeletonShape] = match spec.theorem {
        TheoremId::T4_7 => &[Edge, Path3, Path4],
        TheoremId::T4_8 => &[Cycle3, Cycle4, Cycle5],
        _ => &SkeletonShape::ALL,
    };
    let items = with_ranks(cactus_instances(spec, shapes)?, 2..=spec.max_r.unwrap_or(3));
    Ok(par_verdicts(spec.theorem, items, |(g, r)| match g {
        Ok(g) => chordal(&complement_connected_clutter(g, *r).unwrap(), g, spec.budget),
        Err(o) => o.clone(),
    }))
}

const FREE_CONFIGS: [(usize, usize, bool); 4] = [(3, 3, false), (4, 4, false), (2, 2, true), (3, 3, true)];

fn free_instances(spec: &CheckSpec) -> Result<Vec<(String, Graph)>> {
    let max_n = spec.max_n.unwrap_or(11);
    let mut out = Vec::new();
    for (n1, n2, c5) in FREE_CONFIGS {
        if n1 + n2 + 5 * c5 as usize > max_n {
            continue;
        }
        for &seed in &spec.seeds {
            let g = generate_2k2c4_free(n1, n2, c5, seed)?;
            out.push((format!("(2K2,C4)-free n1={n1} n2={n2} c5={c5} seed={seed}"), g));
        }
    }
    Ok(out)
}

fn free_graphs(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let items = with_ranks(free_instances(spec)?, 2..=spec.max_r.unwrap_or(3));
    Ok(par_verdicts(spec.theorem, items, |(g, r)| {
        if !is_2k2_c4_free(g) {
            return fail("generator returns a (2K2,C4)-free graph", Some(g), json!({}));
        }
        chordal(&complement_connected_clutter(g, *r).unwrap(), g, spec.budget)
    }))
}

fn grid_instances(spec: &CheckSpec) -> Result<Vec<(String, Graph)>> {
    let hi = spec.max_n.unwrap_or(5);
    let lo = spec.min_n.unwrap_or(2).max(2);
    let mut out = Vec::new();
    for n in lo..=hi {
        for m in n..=hi {
            if n * m <= MAX_GRAPH_VERTICES {
                out.push((format!("co-grid({n},{m})"), grid(n, m)?.complement()));
            }
        }
    }
    Ok(out)
}

fn co_grids(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let items = with_ranks(grid_instances(spec)?, 2..=spec.max_r.unwrap_or(4));
    Ok(par_verdicts(spec.theorem, items, |(g, r)| chordal(&complement_connected_clutter(g, *r).unwrap(), g, spec.budget)))
}

fn reg_at_most_three(g: &Graph, field: Field) -> Outcome {
    let i = connected_ideal(g, 1).unwrap();
    match regularity(&i, field) {
        Ok(reg) if reg.is_none_or(|x| x <= 3) => Outcome::Pass,
        Ok(reg) => fail("reg I_1(G) <= 3", Some(g), json!({ "regularity": reg })),
        Err(e) => error_outcome("regularity", e, Some(g)),
    }
}

fn cactus_regularity(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let items = cactus_instances(spec, &SkeletonShape::ALL)?;
    Ok(par_verdicts(spec.theorem, items, |g| match g {
        Ok(g) => reg_at_most_three(g, spec.field),
        Err(o) => o.clone(),
    }))
}

fn co_grid_regularity(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    Ok(par_verdicts(spec.theorem, grid_instances(spec)?, |g| reg_at_most_three(g, spec.field)))
}

/// The zero ideal counts as linear: its resolution has no terms at all.
fn linear(i: &MonomialIdeal, g: Option<&Graph>, field: Field) -> Outcome {
    if i.is_zero() {
        return Outcome::Pass;
    }
    match has_linear_resolution(i, field) {
        Ok(true) => Outcome::Pass,
        Ok(false) => fail("linear resolution", g, json!({ "ideal": ideal_json(i), "field": field.to_string() })),
        Err(e) => error_outcome("linear resolution", e, g),
    }
}

fn linearity(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let mut graphs: Vec<(String, std::result::Result<Graph, Outcome>)> = cactus_instances(spec, &SkeletonShape::ALL)?;
    graphs.extend(free_instances(spec)?.into_iter().map(|(s, g)| (s, Ok(g))));
    let grid_spec = CheckSpec { max_n: None, min_n: None, ..spec.clone() };
    graphs.extend(grid_instances(&grid_spec)?.into_iter().map(|(s, g)| (s, Ok(g))));
    let items = with_ranks(graphs, 2..=spec.max_r.unwrap_or(3));
    Ok(par_verdicts(spec.theorem, items, |(g, r)| match g {
        Ok(g) => linear(&connected_ideal(g, *r).unwrap(), Some(g), spec.field),
        Err(o) => o.clone(),
    }))
}

fn example(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let g = regularity_jump_graph();
    let i1 = connected_ideal(&g, 1)?;
    let i2 = connected_ideal(&g, 2)?;
    let t1 = betti(&i1, spec.field)?;
    let t2 = betti(&i2, spec.field)?;
    let (reg1, reg2) = (t1.regularity(), t2.regularity());
    let th = spec.theorem;
    Ok(vec![
        timed(th, format!("reg I_1 = 3 (computed {reg1:?})"), || {
            if reg1 == Some(3) {
                Outcome::Pass
            } else {
                fail("reg I_1 = 3", Some(&g), json!({ "regularity": reg1 }))
            }
        }),
        timed(th, format!("reg I_2 >= 5 (computed {reg2:?})"), || {
            if reg2.is_some_and(|r| r >= 5) {
                Outcome::Pass
            } else {
                fail("reg I_2 >= 5", Some(&g), json!({ "regularity": reg2 }))
            }
        }),
        timed(th, "I_2 has no linear resolution".into(), || {
            if t2.is_linear(3) {
                fail("I_2 not linear", Some(&g), json!({ "betti": t2.to_csv() }))
            } else {
                Outcome::Pass
            }
        }),
    ])
}

/// Degree-6 exponent vectors in `n` variables with at least five nonzero entries.
fn wide_sextics(n: usize) -> Vec<Monomial> {
    fn rec(n: usize, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == n {
            if left == 0 && cur.iter().filter(|&&e| e > 0).count() >= 5 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, k + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, 6, &mut Vec::new(), &mut out);
    out
}

fn five_divisors(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for n in range(spec, 6, 7) {
        let g = path(n)?.complement();
        let sq = connected_ideal(&g, 2)?.power(2)?;
        let mons = wide_sextics(n);
        out.push(timed(spec.theorem, format!("co-P_{n}: {} monomials", mons.len()), || {
            match mons.iter().find(|m| !sq.is_minimal_generator(m).unwrap()) {
                None => Outcome::Pass,
                Some(m) => fail("minimal generator of the square", Some(&g), json!({ "monomial": m.exps() })),
            }
        }));
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum Exchange<'a> {
    Strong,
    Weak(&'a [usize]),
}

/// Exchange property (when small enough), linear quotients, and exact
/// linearity of `I^q` for each `q`; one verdict per power.
fn power_verdicts(spec: &CheckSpec, name: &str, g: &Graph, r: usize, exchange: Exchange<'_>) -> Vec<Verdict> {
    let base = connected_ideal(g, r).unwrap();
    let max_q = spec.max_q.unwrap_or(2);
    (1..=max_q)
        .into_par_iter()
        .map(|q| {
            let mut label = format!("{name} r={r} q={q}");
            let mut notes = Vec::new();
            let v = timed(spec.theorem, String::new(), || {
                if base.is_zero() {
                    notes.push("zero ideal".to_string());
                    return Outcome::Pass;
                }
                let i = base.power(q).unwrap();
                if i.gens().len() <= MAX_EXCHANGE_GENERATORS {
                    let bad = match exchange {
                        Exchange::Strong => i.is_polymatroidal().unwrap().err().map(|w| json!({ "u": w.u.exps(), "v": w.v.exps(), "i": w.i })),
                        Exchange::Weak(order) => {
                            i.is_weakly_polymatroidal(order).unwrap().err().map(|w| json!({ "f": w.f.exps(), "g": w.g.exps(), "t": w.t }))
                        }
                    };
                    if let Some(w) = bad {
                        let p = if matches!(exchange, Exchange::Strong) { "polymatroidal" } else { "weakly polymatroidal" };
                        return fail(p, Some(g), json!({ "r": r, "q": q, "ideal": ideal_json(&i), "exchange": w }));
                    }
                } else {
                    notes.push(format!("exchange scan skipped at {} generators", i.gens().len()));
                }
                let lq = i.has_linear_quotients(spec.budget).unwrap();
                if lq == QuotientOutcome::Refuted {
                    return fail("linear quotients", Some(g), json!({ "r": r, "q": q, "ideal": ideal_json(&i) }));
                }
                if g.n() > MAX_GRAPH_VERTICES {
                    return Outcome::Inconclusive { reason: "too many variables for Betti numbers".into(), budget: None };
                }
                let res = linear(&i, Some(g), spec.field);
                if res != Outcome::Pass || lq == QuotientOutcome::Exhausted {
                    if lq == QuotientOutcome::Exhausted && res == Outcome::Pass {
                        notes.push("linear quotients search exhausted".into());
                    }
                    return res;
                }
                Outcome::Pass
            });
            if !notes.is_empty() {
                label = format!("{label} ({})", notes.join("; "));
            }
            Verdict { instance: label, ..v }
        })
        .collect()
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn tree_complements(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let mut jobs: Vec<(String, Graph, usize, bool)> = Vec::new();
    for n in range(spec, 4, 7) {
        jobs.push((format!("co-P_{n}"), path(n)?.complement(), 2, false));
    }
    let tree_n = spec.max_n.unwrap_or(7);
    for &seed in &spec.seeds {
        for r in 3..=spec.max_r.unwrap_or(4) {
            let t = random_tree_max_degree(tree_n, r, seed)?;
            jobs.push((format!("co-T seed={seed} n={tree_n} maxdeg={}", t.max_degree()), t.complement(), r, true));
        }
    }
    Ok(jobs
        .par_iter()
        .flat_map(|(name, g, r, strong)| {
            let order = identity(g.n());
            let ex = if *strong { Exchange::Strong } else { Exchange::Weak(&order) };
            power_verdicts(spec, name, g, *r, ex)
        })
        .collect())
}

fn special_powers(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let max_r = spec.max_r.unwrap_or(3);
    let mut jobs: Vec<(String, Graph, usize)> = Vec::new();
    for parts in [&[2, 2][..], &[1, 2, 2], &[2, 2, 2]] {
        for r in 1..=max_r {
            jobs.push((format!("K{parts:?}"), complete_multipartite(parts)?, r));
        }
    }
    for n in range(spec, 5, 7) {
        for r in 3..=max_r.max(3) {
            if r < n {
                jobs.push((format!("co-C_{n}"), cycle(n)?.complement(), r));
            }
        }
    }
    for (p, ms) in [(1, &[2, 2][..]), (2, &[1, 2]), (1, &[1, 2, 2])] {
        let lo = ms.iter().copied().max().unwrap().max(1);
        for r in lo..=max_r.max(lo) {
            jobs.push((format!("Gamma({p},{ms:?})"), gamma_graph(p, ms)?, r));
        }
    }
    Ok(jobs.par_iter().flat_map(|(name, g, r)| power_verdicts(spec, name, g, *r, Exchange::Strong)).collect())
}

fn partially_split_powers(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    let mut jobs: Vec<(String, Graph, usize)> = Vec::new();
    for (k, s, kp) in [(3, 2, 1), (3, 2, 2), (2, 3, 1), (4, 2, 2)] {
        for r in 2..=spec.max_r.unwrap_or(3) {
            jobs.push((format!("partially_split({k},{s},{kp})"), partially_split(k, s, kp)?, r));
        }
    }
    Ok(jobs
        .par_iter()
        .flat_map(|(name, g, r)| {
            let order = identity(g.n());
            power_verdicts(spec, name, g, *r, Exchange::Weak(&order))
        })
        .collect())
}
