//! Graded Betti numbers of monomial ideals.
//!
//! Squarefree ideals go through Hochster's formula on the Stanley–Reisner
//! complex. Arbitrary monomial ideals go through the upper Koszul complexes
//! `K^b = {F squarefree : x^(b-F) in I}` at the degrees of the lcm lattice.

mod complex;
mod field;

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;

pub use complex::{r_independence_complex, ReducedHomology, SimplicialComplex};
pub use field::Field;

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::ideal::{Monomial, MonomialIdeal};
use complex::reduced_homology_of_faces;

/// Largest variable count accepted by the Hochster sum over all subsets.
pub const HOCHSTER_MAX_VARS: usize = 18;
/// Default cap on the number of lcm-lattice degrees visited.
pub const DEFAULT_LATTICE_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
    field: Field,
}

impl BettiTable {
    pub fn new(field: Field) -> Self {
        BettiTable { entries: BTreeMap::new(), field }
    }

    pub fn from_entries(field: Field, entries: impl IntoIterator<Item = ((usize, usize), u64)>) -> Self {
        let mut t = BettiTable::new(field);
        for ((i, j), r) in entries {
            t.add(i, j, r);
        }
        t
    }

    fn add(&mut self, i: usize, j: usize, rank: u64) {
        if rank > 0 {
            *self.entries.entry((i, j)).or_insert(0) += rank;
        }
    }

    fn merge(mut self, other: BettiTable) -> BettiTable {
        for ((i, j), r) in other.entries {
            self.add(i, j, r);
        }
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `β_{i,j}`; zero when absent.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &r)| (i, j, r))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total rank of the `i`-th free module.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, 0)..(i + 1, 0)).map(|(_, &r)| r).sum()
    }

    /// `max(j - i)`; `None` for the zero ideal.
    pub fn regularity(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, j)| j - i).max()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Every entry sits on the diagonal `j = i + d`.
    pub fn is_linear(&self, d: usize) -> bool {
        !self.entries.is_empty() && self.entries.keys().all(|&(i, j)| j == i + d)
    }

    /// `i,j,rank` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,j,rank\n");
        for (i, j, r) in self.entries() {
            writeln!(s, "{i},{j},{r}").unwrap();
        }
        s
    }

    /// `reg=<r> linear=<bool> field=<spec>`, with `reg=none` for the zero ideal.
    pub fn summary(&self, degree: Option<u32>) -> String {
        let reg = self.regularity().map_or("none".to_string(), |r| r.to_string());
        let linear = degree.is_some_and(|d| self.is_linear(d as usize));
        format!("reg={reg} linear={linear} field={}", self.field)
    }
}

/// Betti numbers of a squarefree ideal from
/// `β_{i,j} = Σ_{|W|=j} dim H̃_{j-i-2}(Δ[W])`, where `Δ` is the complex of
/// sets containing no generator.
pub fn betti_squarefree(ideal: &MonomialIdeal, field: Field) -> Result<BettiTable> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let n = ideal.n();
    if n > HOCHSTER_MAX_VARS {
        return Err(Error::Blowup(format!("Hochster sum over 2^{n} subsets (limit {HOCHSTER_MAX_VARS} variables)")));
    }
    let gens: Vec<VertexSet> = ideal.gens().iter().map(Monomial::support).collect();
    let table = (1u64..1 << n)
        .into_par_iter()
        .map(|bits| {
            let w = VertexSet::from_bits(bits);
            let mut t = BettiTable::new(field);
            // Without a generator inside W the restriction is a full simplex.
            if !gens.iter().any(|g| g.is_subset(w)) {
                return t;
            }
            let faces: Vec<VertexSet> = w.subsets().filter(|s| !gens.iter().any(|g| g.is_subset(*s))).collect();
            let j = w.len();
            for (d, rank) in reduced_homology_of_faces(&faces, field).nonzero() {
                // d = j - i - 2
                let i = j as isize - d - 2;
                if i >= 0 {
                    t.add(i as usize, j, rank as u64);
                }
            }
            t
        })
        .reduce(|| BettiTable::new(field), BettiTable::merge);
    Ok(table)
}

/// All least common multiples of nonempty generator subsets.
pub fn lcm_lattice(ideal: &MonomialIdeal, cap: usize) -> Result<Vec<Monomial>> {
    let gens = ideal.gens();
    let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in gens {
                let l = m.lcm(g);
                if !seen.contains(&l) {
                    seen.insert(l.clone());
                    next.push(l);
                    if seen.len() > cap {
                        return Err(Error::Blowup(format!("lcm lattice exceeds {cap} elements")));
                    }
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Betti numbers of an arbitrary monomial ideal from
/// `β_{i,b} = dim H̃_{i-1}(K^b)` summed over the lcm lattice by total degree.
pub fn betti_general(ideal: &MonomialIdeal, field: Field, cap: Option<usize>) -> Result<BettiTable> {
    let lattice = lcm_lattice(ideal, cap.unwrap_or(DEFAULT_LATTICE_CAP))?;
    let gens: Vec<&[u32]> = ideal.gens().iter().map(Monomial::exps).collect();
    let table = lattice
        .par_iter()
        .map(|b| {
            let mut t = BettiTable::new(field);
            let supp = b.support();
            let mut shifted = b.exps().to_vec();
            let faces: Vec<VertexSet> = supp
                .subsets()
                .filter(|f| {
                    for (k, e) in b.exps().iter().enumerate() {
                        shifted[k] = e - f.contains(k) as u32;
                    }
                    gens.iter().any(|g| g.iter().zip(&shifted).all(|(a, c)| a <= c))
                })
                .collect();
            for (d, rank) in reduced_homology_of_faces(&faces, field).nonzero() {
                t.add((d + 1) as usize, b.degree() as usize, rank as u64);
            }
            t
        })
        .reduce(|| BettiTable::new(field), BettiTable::merge);
    Ok(table)
}

/// Hochster for squarefree ideals, the lcm lattice otherwise.
pub fn betti(ideal: &MonomialIdeal, field: Field) -> Result<BettiTable> {
    if ideal.is_squarefree() {
        betti_squarefree(ideal, field)
    } else {
        betti_general(ideal, field, None)
    }
}

/// `reg(I)`; `None` for the zero ideal, whose regularity is `-∞`.
pub fn regularity(ideal: &MonomialIdeal, field: Field) -> Result<Option<usize>> {
    Ok(betti(ideal, field)?.regularity())
}

pub fn has_linear_resolution(ideal: &MonomialIdeal, field: Field) -> Result<bool> {
    if ideal.is_zero() {
        return Err(Error::Precondition("the zero ideal has no generating degree".into()));
    }
    let d = ideal.degree_pure().ok_or(Error::NotPure)?;
    Ok(betti(ideal, field)?.is_linear(d as usize))
}
