//! Explicit elimination orders for complete graphs, cycles, and block graphs,
//! plus the cone sweep and the reduced join form used by the structural
//! arguments.

use super::{connected_clutter, Clutter, EliminationCertificate};
use crate::error::{Error, Result};
use crate::families::is_block_graph;
use crate::graph::{Graph, Vertex, VertexSet};

/// Replays proposed steps against a running clutter.
///
/// A proposed step that is no longer a maximal subedge deletes nothing and
/// is dropped. A step that is maximal but not simplicial is a bug in the
/// construction and is reported as an error.
struct Tracker {
    cur: Clutter,
    steps: Vec<VertexSet>,
}

impl Tracker {
    fn new(c: Clutter) -> Self {
        Tracker { cur: c, steps: Vec::new() }
    }

    fn push(&mut self, sigma: VertexSet) -> Result<()> {
        let nb = self.cur.closed_neighborhood(sigma)?;
        if nb == sigma {
            return Ok(());
        }
        if !self.cur.is_clique(nb) {
            return Err(Error::Precondition(format!(
                "construction step {sigma} is not simplicial (neighborhood {nb})"
            )));
        }
        self.cur = self.cur.delete_unchecked(sigma);
        self.steps.push(sigma);
        Ok(())
    }

    /// The lexicographic sweep of a clique: for each `first` in order, every
    /// `r`-subset of the not-yet-peeled vertices containing `first` and
    /// avoiding `last`.
    fn peel(&mut self, order: &[Vertex], last: Vertex, r: usize) -> Result<()> {
        let rest: Vec<Vertex> = order.iter().copied().filter(|&v| v != last).collect();
        if rest.is_empty() || r == 0 {
            return Ok(());
        }
        let first = rest[0];
        for combo in index_combinations(rest.len() - 1, r - 1) {
            let sigma: VertexSet = std::iter::once(first).chain(combo.iter().map(|&i| rest[i + 1])).collect();
            self.push(sigma)?;
        }
        Ok(())
    }
}

/// All `k`-subsets of `0..n` as increasing index lists, lexicographically.
fn index_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Certificate for the connected clutter of `K_n` (vertices `0..n`):
/// peel the subedges through vertex 0 that avoid the last vertex in
/// lexicographic order, then recurse on the remaining vertices.
pub fn elim_complete(n: usize, r: usize) -> Result<EliminationCertificate> {
    if r == 0 || r + 1 > n {
        return Err(Error::InvalidParameter(format!("need 1 <= r and r+1 <= n, got n={n}, r={r}")));
    }
    let g = crate::families::complete(n)?;
    let c = connected_clutter(&g, r)?;
    let mut t = Tracker::new(c.clone());
    for lo in 0..=n - r - 1 {
        let order: Vec<Vertex> = (lo..n).collect();
        t.peel(&order, n - 1, r)?;
    }
    Ok(EliminationCertificate::for_clutter(&c, t.steps))
}

/// Runs the leaf-block induction on `g[alive]`, appending to `t`.
fn block_sweep(g: &Graph, mut alive: VertexSet, r: usize, t: &mut Tracker) -> Result<()> {
    loop {
        for comp in g.components_within(alive) {
            if comp.len() < r + 1 {
                alive = alive - comp;
            }
        }
        let Some(start) = alive.min() else {
            return Ok(());
        };
        let comp = g.reach_within(start, alive);
        let h = g.induced_subgraph(comp)?;
        let back = comp.to_vec();
        let lift = |s: VertexSet| -> VertexSet { s.iter().map(|i| back[i]).collect() };
        let cuts: VertexSet = (0..h.n()).filter(|&v| h.is_cut_vertex(v).unwrap_or(false)).map(|v| back[v]).collect();
        let blocks: Vec<VertexSet> = h.blocks().into_iter().map(lift).collect();
        let b1 = *blocks
            .iter()
            .find(|b| (**b & cuts).len() <= 1)
            .expect("a block tree has a leaf block");
        let x1 = (b1 & cuts).min();
        let x0 = (b1 - cuts).min().expect("a leaf block has a non-cut vertex");

        if let Some(x1) = x1 {
            let far: Vec<VertexSet> = t
                .cur
                .edges()
                .iter()
                .copied()
                .filter(|e| e.contains(x0) && !e.is_subset(b1))
                .collect();
            for e in far {
                t.push(e.without(x1))?;
            }
        }
        let last = x1.unwrap_or_else(|| b1.max().unwrap());
        let order: Vec<Vertex> = std::iter::once(x0).chain((b1.without(x0)).iter()).collect();
        t.peel(&order, last, r)?;
        alive.remove(x0);
    }
}

/// Certificate for the connected clutter of a block graph: repeatedly take a
/// leaf block `B_1` with cut vertex `x_1`, pick `x_0` in `B_1 - x_1`, delete
/// `g - x_1` for every edge `g` through `x_0` that leaves `B_1`, sweep `B_1`
/// from `x_0`, and continue without `x_0`.
pub fn elim_block_graph(g: &Graph, r: usize) -> Result<EliminationCertificate> {
    if !is_block_graph(g) {
        return Err(Error::Precondition("graph is not a block graph".into()));
    }
    if r < 1 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let c = connected_clutter(g, r)?;
    let mut t = Tracker::new(c.clone());
    block_sweep(g, g.vertices(), r, &mut t)?;
    Ok(EliminationCertificate::for_clutter(&c, t.steps))
}

/// Certificate for the connected clutter of `C_n` (vertices `0..n` in cyclic
/// order): remove vertex 0 from every edge through `n-1, 0, 1`, delete
/// `{0..r-1}` and `{0, n-r+1..n-1}`, then finish on the path `1..n-1`.
pub fn elim_cycle(n: usize, r: usize) -> Result<EliminationCertificate> {
    if n < 3 || r < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 3 and r >= 2, got n={n}, r={r}")));
    }
    let g = crate::families::cycle(n)?;
    let c = connected_clutter(&g, r)?;
    let mut t = Tracker::new(c.clone());
    if n == r + 1 {
        t.push(VertexSet::full(r))?;
    } else if n > r + 1 {
        let hub = VertexSet::from([0, 1, n - 1]);
        let through: Vec<VertexSet> = c.edges().iter().copied().filter(|e| hub.is_subset(*e)).collect();
        for e in through {
            t.push(e.without(0))?;
        }
        t.push(VertexSet::full(r))?;
        t.push(((n - r + 1)..n).chain(std::iter::once(0)).collect())?;
        block_sweep(&g, g.vertices().without(0), r, &mut t)?;
    }
    Ok(EliminationCertificate::for_clutter(&c, t.steps))
}

/// Deletes, in the sweep order over `apex`, `(d-1)`-subsets containing `b`
/// until no edge of `c` contains `b`.
///
/// Hypotheses, checked up front: every `d`-subset of `apex + b` is an edge,
/// and every edge containing `b` lies inside `apex + b`. Returns the steps;
/// each is verified simplicial in the clutter left by its predecessors.
pub fn eliminate_cone(c: &Clutter, b: VertexSet, apex: VertexSet) -> Result<Vec<VertexSet>> {
    let d = c.d();
    if b.len() + 1 > d {
        return Err(Error::Precondition(format!("|b| = {} exceeds d-1 = {}", b.len(), d - 1)));
    }
    if b.intersects(apex) {
        return Err(Error::Precondition("b and apex must be disjoint".into()));
    }
    if !c.edges().iter().any(|e| b.is_subset(*e)) {
        return Ok(Vec::new());
    }
    let cone = b | apex;
    if let Some(missing) = cone.subsets_of_size(d).find(|s| !c.contains(*s)) {
        return Err(Error::Precondition(format!("{missing} is a subset of the cone but not an edge")));
    }
    if let Some(out) = c.edges().iter().find(|e| b.is_subset(**e) && !e.is_subset(cone)) {
        return Err(Error::Precondition(format!("edge {out} contains b but leaves the cone")));
    }
    let r = d - 1;
    let mut t = Tracker::new(c.clone());
    if b.len() == r {
        t.push(b)?;
        return Ok(t.steps);
    }
    let xs = apex.to_vec();
    let last = *xs.last().expect("cone hypotheses force a nonempty apex");
    for (k, &xk) in xs.iter().enumerate() {
        if !t.cur.edges().iter().any(|e| b.is_subset(*e)) {
            break;
        }
        let pool: Vec<Vertex> = xs[k + 1..].iter().copied().filter(|&v| v != last).collect();
        let need = r - b.len() - 1;
        for combo in index_combinations(pool.len(), need) {
            let sigma = combo.iter().fold(b.with(xk), |acc, &i| acc.with(pool[i]));
            t.push(sigma)?;
        }
    }
    if t.cur.edges().iter().any(|e| b.is_subset(*e)) {
        return Err(Error::Precondition("sweep left an edge containing b".into()));
    }
    Ok(t.steps)
}

/// Splits `e` as `b + d` with `gbar[e]` the join of `gbar[b]` and the
/// complete graph `gbar[d]`, `x` in `b`, and `d` as large as possible: `d`
/// is every vertex other than `x` adjacent to all of `e`.
pub fn reduced_form(gbar: &Graph, e: VertexSet, x: Vertex) -> Result<(VertexSet, VertexSet)> {
    gbar.check_set(e)?;
    if !e.contains(x) {
        return Err(Error::Precondition(format!("{x} is not in {e}")));
    }
    if !gbar.is_simplicial_vertex(x)? {
        return Err(Error::Precondition(format!("{x} is not simplicial")));
    }
    if !gbar.connected_unchecked(e) || gbar.join_parts_within(e).len() < 2 {
        return Err(Error::Precondition(format!("the complement graph on {e} is not a connected nontrivial join")));
    }
    let d: VertexSet = e
        .without(x)
        .iter()
        .filter(|&v| e.without(v).is_subset(gbar.neighbors(v)))
        .collect();
    Ok((e - d, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutter::{complement_connected_clutter, verify_certificate};
    use crate::families::{block_graph, complete, cycle, path};

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn complete_certificates() {
        let base = elim_complete(3, 2).unwrap();
        assert_eq!(base.steps, vec![vs(&[0, 1])]);
        for n in 2..=8 {
            for r in 1..n {
                let c = connected_clutter(&complete(n).unwrap(), r).unwrap();
                assert_eq!(verify_certificate(&c, &elim_complete(n, r).unwrap()), Ok(()), "n={n} r={r}");
            }
        }
        assert!(elim_complete(3, 3).is_err());
    }

    #[test]
    fn cycle_certificates() {
        assert_eq!(elim_cycle(4, 3).unwrap().steps, vec![vs(&[0, 1, 2])]);
        for n in 3..=9 {
            for r in 2..=4 {
                let c = connected_clutter(&cycle(n).unwrap(), r).unwrap();
                let cert = elim_cycle(n, r).unwrap_or_else(|e| panic!("n={n} r={r}: {e}"));
                assert_eq!(verify_certificate(&c, &cert), Ok(()), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn block_graph_certificates() {
        let bowtie = block_graph(5, &[vs(&[0, 1, 2]), vs(&[2, 3, 4])]).unwrap();
        let graphs = [complete(5).unwrap(), path(6).unwrap(), bowtie];
        for g in &graphs {
            for r in 1..=3 {
                let c = connected_clutter(g, r).unwrap();
                assert_eq!(verify_certificate(&c, &elim_block_graph(g, r).unwrap()), Ok(()));
            }
        }
        assert!(elim_block_graph(&cycle(4).unwrap(), 2).is_err());
    }

    #[test]
    fn cone_sweeps() {
        let c = Clutter::full(4, 3).unwrap();
        let steps = eliminate_cone(&c, vs(&[0]), vs(&[1, 2, 3])).unwrap();
        assert_eq!(steps, vec![vs(&[0, 1]), vs(&[0, 2])]);
        let rest = steps.iter().fold(c.clone(), |acc, s| acc.delete_subedge(*s).unwrap());
        assert!(rest.edges().iter().all(|e| !e.contains(0)));

        assert_eq!(eliminate_cone(&c, vs(&[0, 1]), vs(&[2, 3])).unwrap(), vec![vs(&[0, 1])]);
        let sparse = Clutter::new(5, 3, [vs(&[1, 2, 3])]).unwrap();
        assert!(eliminate_cone(&sparse, vs(&[0]), vs(&[1, 2])).unwrap().is_empty());
        // An edge through b that leaves the cone breaks the hypotheses.
        let leaky = Clutter::new(5, 3, VertexSet::full(4).subsets_of_size(3).chain([vs(&[0, 1, 4])])).unwrap();
        assert!(eliminate_cone(&leaky, vs(&[0]), vs(&[1, 2, 3])).is_err());

        let big = Clutter::full(7, 4).unwrap();
        let steps = eliminate_cone(&big, vs(&[0]), vs(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert!(steps.iter().all(|s| s.contains(0)));
    }

    #[test]
    fn reduced_forms() {
        // K_4: everything but x is universal.
        let k4 = complete(4).unwrap();
        assert_eq!(reduced_form(&k4, VertexSet::full(4), 2).unwrap(), (vs(&[2]), vs(&[0, 1, 3])));
        // Star centered at 1 with leaves 0 and 2.
        let star = path(3).unwrap();
        assert_eq!(reduced_form(&star, VertexSet::full(3), 0).unwrap(), (vs(&[0, 2]), vs(&[1])));
        // Apex 0 over the matching 1-2, 3-4.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]).unwrap();
        assert_eq!(reduced_form(&g, VertexSet::full(5), 1).unwrap(), (vs(&[1, 2, 3, 4]), vs(&[0])));
        assert!(reduced_form(&cycle(5).unwrap(), vs(&[0, 1, 2]), 1).is_err());
        assert!(reduced_form(&star, VertexSet::full(3), 1).is_err());
    }

    #[test]
    fn reduced_form_properties() {
        // Every complement-clutter edge through a simplicial vertex of a
        // small chordal complement graph.
        let gbar = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap();
        let g = gbar.complement();
        for r in 1..=4 {
            for e in complement_connected_clutter(&g, r).unwrap().edges() {
                for x in e.iter().filter(|&x| gbar.is_simplicial_vertex(x).unwrap()) {
                    let (b, d) = reduced_form(&gbar, *e, x).unwrap();
                    assert!(gbar.is_clique(d) && b.contains(x));
                    for z in e.iter() {
                        if gbar.distance(x, z).unwrap() == Some(2) {
                            assert!(b.contains(z));
                        }
                    }
                    for y in (gbar.neighbors(x) & b).iter() {
                        assert!(!(b.without(y) - gbar.neighbors(y)).is_empty());
                    }
                }
            }
        }
    }
}
