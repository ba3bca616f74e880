//! Uniform clutters, the connected clutter of a graph, and the deletion
//! calculus behind clutter chordality.

use std::cmp::Ordering;
use std::collections::HashMap;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};

pub mod builders;
pub mod iso;
pub mod search;

pub use builders::{elim_block_graph, elim_complete, elim_cycle, eliminate_cone, reduced_form};
pub use iso::{clutters_equal_up_to_relabeling, IsoOutcome};
pub use search::{find_elimination_order, verify_certificate, SearchOutcome, SearchStats, Strategy, Violation, ViolationReason};

/// A `d`-uniform clutter on `0..n`. Edges are kept in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clutter {
    n: usize,
    d: usize,
    edges: Vec<VertexSet>,
}

impl std::fmt::Debug for Clutter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Clutter(n={}, d={}, edges=[", self.n, self.d)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

pub(crate) fn sort_lex(edges: &mut [VertexSet]) {
    edges.sort_unstable_by(|a, b| a.lex_cmp(*b));
}

impl Clutter {
    /// Builds a clutter, checking sizes and range. Repeated edges collapse.
    pub fn new(n: usize, d: usize, edges: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        if d == 0 {
            return Err(Error::InvalidParameter("uniformity must be at least 1".into()));
        }
        let full = VertexSet::full(n);
        let mut out = Vec::new();
        for e in edges {
            if e.len() != d {
                return Err(Error::WrongSubsetSize { expected: d, got: e.len() });
            }
            if let Some(v) = (e - full).min() {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            out.push(e);
        }
        sort_lex(&mut out);
        out.dedup();
        Ok(Clutter { n, d, edges: out })
    }

    /// Internal constructor for edge lists already known to be valid.
    pub(crate) fn from_sorted(n: usize, d: usize, edges: Vec<VertexSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0].lex_cmp(w[1]) == Ordering::Less));
        Clutter { n, d, edges }
    }

    pub fn empty(n: usize, d: usize) -> Result<Self> {
        Clutter::new(n, d, [])
    }

    /// Every `d`-subset of `0..n`.
    pub fn full(n: usize, d: usize) -> Result<Self> {
        Clutter::new(n, d, VertexSet::full(n).subsets_of_size(d))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: VertexSet) -> bool {
        self.edges.binary_search_by(|x| x.lex_cmp(e)).is_ok()
    }

    fn check_subedge(&self, sigma: VertexSet) -> Result<()> {
        if sigma.len() + 1 != self.d {
            return Err(Error::WrongSubsetSize {
                expected: self.d - 1,
                got: sigma.len(),
            });
        }
        if let Some(v) = (sigma - VertexSet::full(self.n)).min() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// `sigma` together with every `v` for which `sigma + v` is an edge.
    pub fn closed_neighborhood(&self, sigma: VertexSet) -> Result<VertexSet> {
        self.check_subedge(sigma)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| sigma.is_subset(**e))
            .fold(sigma, |acc, &e| acc | e))
    }

    /// Whether every `d`-subset of `w` is an edge. Sets smaller than `d` are
    /// cliques by convention.
    pub fn is_clique(&self, w: VertexSet) -> bool {
        w.len() < self.d || w.subsets_of_size(self.d).all(|s| self.contains(s))
    }

    /// Whether `sigma` is a maximal subedge whose closed neighborhood is a clique.
    pub fn is_simplicial_maximal(&self, sigma: VertexSet) -> Result<bool> {
        let nb = self.closed_neighborhood(sigma)?;
        Ok(nb != sigma && self.is_clique(nb))
    }

    /// Map from each `(d-1)`-subset of an edge to its closed neighborhood.
    pub(crate) fn neighborhood_table(&self) -> HashMap<VertexSet, VertexSet> {
        let mut table: HashMap<VertexSet, VertexSet> = HashMap::new();
        for &e in &self.edges {
            for v in e.iter() {
                let sigma = e.without(v);
                *table.entry(sigma).or_insert(sigma) |= e;
            }
        }
        table
    }

    /// All simplicial maximal subedges, in lexicographic order.
    pub fn simplicial_maximal_subedges(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = self
            .neighborhood_table()
            .into_iter()
            .filter(|&(_, nb)| self.is_clique(nb))
            .map(|(s, _)| s)
            .collect();
        sort_lex(&mut out);
        out
    }

    /// The clutter of edges not containing `sigma`.
    pub fn delete_subedge(&self, sigma: VertexSet) -> Result<Clutter> {
        self.check_subedge(sigma)?;
        Ok(self.delete_unchecked(sigma))
    }

    pub(crate) fn delete_unchecked(&self, sigma: VertexSet) -> Clutter {
        Clutter {
            n: self.n,
            d: self.d,
            edges: self.edges.iter().copied().filter(|e| !sigma.is_subset(*e)).collect(),
        }
    }

    /// The `d`-subsets of the ground set that are not edges.
    pub fn complement(&self) -> Clutter {
        let edges = VertexSet::full(self.n)
            .subsets_of_size(self.d)
            .filter(|s| !self.contains(*s))
            .collect();
        Clutter::from_sorted(self.n, self.d, edges)
    }

    /// Number of edges containing each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for v in e.iter() {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Compact JSON with lexicographically sorted edges; the input to
    /// [`Clutter::source_hash`].
    pub fn canonical_string(&self) -> String {
        let mut s = format!("{{\"n\":{},\"d\":{},\"edges\":[", self.n, self.d);
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push('[');
            for (j, v) in e.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                s.push_str(&v.to_string());
            }
            s.push(']');
        }
        s.push_str("]}");
        s
    }

    /// Hex SHA-256 of [`Clutter::canonical_string`].
    pub fn source_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_string().as_bytes()))
    }
}

/// The `(r+1)`-uniform clutter of vertex sets inducing connected subgraphs.
pub fn connected_clutter(g: &Graph, r: usize) -> Result<Clutter> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let edges = g
        .vertices()
        .subsets_of_size(r + 1)
        .filter(|&s| g.connected_unchecked(s))
        .collect();
    Ok(Clutter::from_sorted(g.n(), r + 1, edges))
}

/// The complement of [`connected_clutter`]: `(r+1)`-sets inducing a
/// disconnected subgraph.
pub fn complement_connected_clutter(g: &Graph, r: usize) -> Result<Clutter> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let edges = g
        .vertices()
        .subsets_of_size(r + 1)
        .filter(|&s| !g.connected_unchecked(s))
        .collect();
    Ok(Clutter::from_sorted(g.n(), r + 1, edges))
}

/// A sequence of `(d-1)`-subsets claimed to delete a clutter down to nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationCertificate {
    pub source_hash: String,
    pub steps: Vec<VertexSet>,
}

impl EliminationCertificate {
    pub fn for_clutter(c: &Clutter, steps: Vec<VertexSet>) -> Self {
        EliminationCertificate {
            source_hash: c.source_hash(),
            steps,
        }
    }
}
