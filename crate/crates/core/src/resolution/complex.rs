//! Finite simplicial complexes on vertex sets of at most 64 vertices.

use std::collections::{HashMap, HashSet};

use super::field::{Field, SignedMatrix};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A complex given by its facets. The void complex has no facets; the
/// complex `{∅}` has the single facet `∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Keeps only the inclusion-maximal sets.
    pub fn from_facets(n: usize, sets: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        let mut sets: Vec<VertexSet> = sets.into_iter().collect();
        for s in &sets {
            if s.span() > n {
                return Err(Error::VertexOutOfRange { vertex: VertexSet::max(*s).unwrap(), n });
            }
        }
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.lex_cmp(*b)));
        sets.dedup();
        let mut facets: Vec<VertexSet> = Vec::new();
        for s in sets {
            if !facets.iter().any(|f| s.is_subset(*f)) {
                facets.push(s);
            }
        }
        facets.sort_by(|a, b| a.lex_cmp(*b));
        Ok(SimplicialComplex { n, facets })
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![VertexSet::full(n)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// Dimension of the largest facet; `None` for the void complex.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    /// Every face, each exactly once.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut seen = HashSet::new();
        for f in &self.facets {
            for s in f.subsets() {
                seen.insert(s);
            }
        }
        let mut out: Vec<VertexSet> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));
        out
    }

    /// The subcomplex of faces inside `w`.
    pub fn induced(&self, w: VertexSet) -> SimplicialComplex {
        let sets: Vec<VertexSet> = self.facets.iter().map(|f| *f & w).collect();
        SimplicialComplex::from_facets(self.n, sets).expect("subsets of valid facets")
    }

    pub fn reduced_homology(&self, field: Field) -> ReducedHomology {
        reduced_homology_of_faces(&self.faces(), field)
    }

    /// Minimal non-faces: the generators of the Stanley–Reisner ideal.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        for s in VertexSet::full(self.n).subsets() {
            if !self.contains(s) && s.iter().all(|v| self.contains(s.without(v))) {
                out.push(s);
            }
        }
        out.sort_by(|a, b| a.lex_cmp(*b));
        out
    }

    /// The complex whose faces avoid every set in `nonfaces` as a subset.
    pub fn from_nonfaces(n: usize, nonfaces: &[VertexSet]) -> Result<Self> {
        if n > 24 {
            return Err(Error::Blowup(format!("face enumeration over {n} vertices")));
        }
        let faces = VertexSet::full(n).subsets().filter(|s| !nonfaces.iter().any(|g| g.is_subset(*s)));
        SimplicialComplex::from_facets(n, faces)
    }
}

/// Ranks of reduced homology indexed from dimension -1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ReducedHomology(pub Vec<usize>);

impl ReducedHomology {
    /// Rank in dimension `d >= -1`, zero outside the computed range.
    pub fn get(&self, d: isize) -> usize {
        if d < -1 {
            return 0;
        }
        self.0.get((d + 1) as usize).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }

    /// `(dimension, rank)` for every nonzero rank.
    pub fn nonzero(&self) -> impl Iterator<Item = (isize, usize)> + '_ {
        self.0.iter().enumerate().filter(|(_, &r)| r > 0).map(|(i, &r)| (i as isize - 1, r))
    }
}

/// Reduced homology of the downward-closed family `faces`. An empty list is
/// the void complex and has no homology.
pub(crate) fn reduced_homology_of_faces(faces: &[VertexSet], field: Field) -> ReducedHomology {
    if faces.is_empty() {
        return ReducedHomology(Vec::new());
    }
    let top = faces.iter().map(|f| f.len()).max().unwrap();
    let mut by_size: Vec<Vec<VertexSet>> = vec![Vec::new(); top + 1];
    for &f in faces {
        by_size[f.len()].push(f);
    }
    // rank of the boundary from size-k faces to size-(k-1) faces.
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let index: HashMap<VertexSet, usize> = by_size[k - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let rows = by_size[k]
            .iter()
            .map(|&f| {
                f.iter()
                    .enumerate()
                    .map(|(pos, v)| (index[&f.without(v)], if pos % 2 == 0 { 1i8 } else { -1 }))
                    .collect()
            })
            .collect();
        ranks[k] = SignedMatrix { cols: by_size[k - 1].len(), rows }.rank(field);
    }
    let h = (0..=top).map(|k| by_size[k].len() - ranks[k] - ranks[k + 1]).collect();
    ReducedHomology(h)
}

/// Subsets `A` on which every component of `g[A]` has at most `r` vertices.
pub fn r_independence_complex(g: &Graph, r: usize) -> Result<SimplicialComplex> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    if g.n() > 24 {
        return Err(Error::Blowup(format!("face enumeration over {} vertices", g.n())));
    }
    let faces = VertexSet::full(g.n())
        .subsets()
        .filter(|&a| g.components_within(a).iter().all(|c| c.len() <= r));
    SimplicialComplex::from_facets(g.n(), faces)
}
