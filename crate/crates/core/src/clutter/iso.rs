//! Brute-force clutter isomorphism for small ground sets.

use super::Clutter;
use crate::graph::{Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// `perm[v]` is the image of vertex `v` of the first clutter.
    Isomorphic(Vec<Vertex>),
    NotIsomorphic,
    Exhausted,
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> Option<bool> {
        match self {
            IsoOutcome::Isomorphic(_) => Some(true),
            IsoOutcome::NotIsomorphic => Some(false),
            IsoOutcome::Exhausted => None,
        }
    }
}

struct Matcher<'a> {
    a: &'a Clutter,
    b: &'a Clutter,
    deg_a: Vec<usize>,
    deg_b: Vec<usize>,
    perm: Vec<Option<Vertex>>,
    used: VertexSet,
    domain: VertexSet,
    nodes: u64,
    budget: u64,
}

impl Matcher<'_> {
    fn image(&self, e: VertexSet) -> VertexSet {
        e.iter().map(|v| self.perm[v].unwrap()).collect()
    }

    /// Edges inside the assigned part must correspond in both directions.
    fn consistent(&self, v: Vertex) -> bool {
        let ok_a = self
            .a
            .edges()
            .iter()
            .filter(|e| e.contains(v) && e.is_subset(self.domain))
            .all(|&e| self.b.contains(self.image(e)));
        if !ok_a {
            return false;
        }
        let w = self.perm[v].unwrap();
        let inverse: Vec<Option<Vertex>> = {
            let mut inv = vec![None; self.b.n()];
            for (x, p) in self.perm.iter().enumerate() {
                if let Some(y) = p {
                    inv[*y] = Some(x);
                }
            }
            inv
        };
        self.b
            .edges()
            .iter()
            .filter(|e| e.contains(w) && e.is_subset(self.used))
            .all(|&e| self.a.contains(e.iter().map(|y| inverse[y].unwrap()).collect()))
    }

    fn go(&mut self, v: Vertex) -> Option<bool> {
        if v == self.a.n() {
            return Some(true);
        }
        for w in 0..self.b.n() {
            if self.used.contains(w) || self.deg_a[v] != self.deg_b[w] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.perm[v] = Some(w);
            self.used.insert(w);
            self.domain.insert(v);
            if self.consistent(v) {
                match self.go(v + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.perm[v] = None;
            self.used.remove(w);
            self.domain.remove(v);
        }
        Some(false)
    }
}

/// Searches for a vertex bijection mapping the edges of `c1` onto those of
/// `c2`, pruning by vertex degree. `budget` caps the number of tentative
/// vertex assignments.
pub fn clutters_equal_up_to_relabeling(c1: &Clutter, c2: &Clutter, budget: u64) -> IsoOutcome {
    if c1.n() != c2.n() || c1.d() != c2.d() || c1.len() != c2.len() {
        return IsoOutcome::NotIsomorphic;
    }
    let (mut da, mut db) = (c1.degrees(), c2.degrees());
    let (deg_a, deg_b) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return IsoOutcome::NotIsomorphic;
    }
    let mut m = Matcher {
        a: c1,
        b: c2,
        deg_a,
        deg_b,
        perm: vec![None; c1.n()],
        used: VertexSet::EMPTY,
        domain: VertexSet::EMPTY,
        nodes: 0,
        budget,
    };
    match m.go(0) {
        Some(true) => IsoOutcome::Isomorphic(m.perm.into_iter().map(|p| p.unwrap()).collect()),
        Some(false) => IsoOutcome::NotIsomorphic,
        None => IsoOutcome::Exhausted,
    }
}
