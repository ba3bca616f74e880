//! Small graphs up to isomorphism.
//!
//! Canonical forms refine vertex colors by neighbor-color multisets, then
//! try every ordering inside each color class and keep the largest
//! adjacency encoding. Exponential in the class sizes; meant for n ≤ 8.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest vertex count accepted by the enumerators.
pub const MAX_ENUMERATION_VERTICES: usize = 8;

fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|u| color[u]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let distinct: Vec<_> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(&s).unwrap()).collect();
        let before = color.iter().collect::<BTreeSet<_>>().len();
        color = next;
        if distinct.len() == before {
            return color;
        }
    }
}

/// Adjacency rows of `g` under `order` (new vertex `k` is old `order[k]`),
/// packed as one bit per pair above the diagonal.
fn encode(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut out = vec![0u64; (n * n).div_ceil(64)];
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(order[a], order[b]) {
                out[bit / 64] |= 1 << (63 - bit % 64);
            }
            bit += 1;
        }
    }
    out
}

fn permutations_within(cells: &[Vec<usize>], k: usize, prefix: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if k == cells.len() {
        visit(prefix);
        return;
    }
    let mut cell = cells[k].clone();
    let len = cell.len();
    heap_permute(&mut cell, len, &mut |p| {
        let len = prefix.len();
        prefix.extend_from_slice(p);
        permutations_within(cells, k + 1, prefix, visit);
        prefix.truncate(len);
    });
}

fn heap_permute(a: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(a);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(a, k - 1, visit);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permute(a, k - 1, visit);
}

/// A relabeling of `g` that is equal for isomorphic inputs. Labels are dropped.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let n = g.n();
    if n > MAX_ENUMERATION_VERTICES + 2 {
        return Err(Error::TooManyVertices { n, max: MAX_ENUMERATION_VERTICES + 2 });
    }
    let color = refine(g);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); color.iter().max().map_or(0, |c| c + 1)];
    for v in 0..n {
        cells[color[v]].push(v);
    }
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    permutations_within(&cells, 0, &mut Vec::with_capacity(n), &mut |order| {
        let code = encode(g, order);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            best = Some((code, order.to_vec()));
        }
    });
    let order = best.map(|(_, o)| o).unwrap_or_default();
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    let plain = Graph::from_adjacency((0..n).map(|v| g.neighbors(v)).collect())?;
    plain.permuted(&perm)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    Ok(a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a)? == canonical_form(b)?)
}

/// One representative per isomorphism class of graphs on `n` vertices, in
/// canonical form, sorted by edge count then adjacency.
pub fn graphs_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_ENUMERATION_VERTICES });
    }
    let mut level: Vec<Graph> = vec![Graph::empty(0)?];
    for k in 1..=n {
        let mut seen: BTreeSet<(usize, Vec<u64>)> = BTreeSet::new();
        let mut next = Vec::new();
        for h in &level {
            for nb in VertexSet::full(k - 1).subsets() {
                let mut adj: Vec<VertexSet> = (0..k - 1).map(|v| h.neighbors(v)).collect();
                for v in nb.iter() {
                    adj[v].insert(k - 1);
                }
                adj.push(nb);
                let c = canonical_form(&Graph::from_adjacency(adj)?)?;
                let key = (c.edge_count(), encode(&c, &(0..k).collect::<Vec<_>>()));
                if seen.insert(key) {
                    next.push(c);
                }
            }
        }
        next.sort_by_cached_key(|c| (c.edge_count(), encode(c, &(0..k).collect::<Vec<_>>())));
        level = next;
    }
    Ok(level)
}

pub fn connected_graphs_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    Ok(graphs_up_to_iso(n)?.into_iter().filter(Graph::is_connected).collect())
}
