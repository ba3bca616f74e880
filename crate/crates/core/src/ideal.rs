//! Monomial ideals as sets of exponent vectors.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::clutter::{connected_clutter, Clutter};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    /// The squarefree monomial with support `s` in `n` variables.
    pub fn squarefree(n: usize, s: VertexSet) -> Self {
        let mut exps = vec![0; n];
        for v in s.iter() {
            exps[v] = 1;
        }
        Monomial { exps, degree: s.len() as u32 }
    }

    pub fn one(n: usize) -> Self {
        Monomial::new(vec![0; n])
    }

    pub fn variable(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn support(&self) -> VertexSet {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        }
    }

    /// `x_up * self / x_down`, or `None` when `x_down` does not divide.
    pub fn exchange(&self, up: usize, down: usize) -> Option<Monomial> {
        if self.exps[down] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[down] -= 1;
        exps[up] += 1;
        Some(Monomial { exps, degree: self.degree })
    }

    /// The variable index when this monomial is a single variable.
    pub fn as_variable(&self) -> Option<usize> {
        if self.degree != 1 {
            return None;
        }
        self.exps.iter().position(|&e| e == 1)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Minimal generators, sorted, with no generator dividing another.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
    degree_pure: Option<u32>,
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(n={}, gens={:?})", self.n, self.gens)
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_unstable_by(|a, b| a.degree.cmp(&b.degree).then_with(|| b.exps.cmp(&a.exps)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        // Only strictly lower degrees can divide a different monomial.
        if !out.iter().any(|h| h.degree < g.degree && h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

impl MonomialIdeal {
    /// Builds an ideal and reduces the generators to a minimal set. The order
    /// is by degree, then lexicographically descending (`x0 > x1 > ...`).
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            if g.n() != n {
                return Err(Error::DimensionMismatch { expected: n, got: g.n() });
            }
        }
        let gens = minimalize(gens);
        let degree_pure = match gens.first() {
            Some(g0) if gens.iter().all(|g| g.degree == g0.degree) => Some(g0.degree),
            _ => None,
        };
        Ok(MonomialIdeal { n, gens, degree_pure })
    }

    /// The ideal generated by the squarefree monomials of the clutter edges.
    pub fn from_clutter(c: &Clutter) -> Self {
        let gens = c.edges().iter().map(|&e| Monomial::squarefree(c.n(), e)).collect();
        MonomialIdeal::new(c.n(), gens).expect("clutter edges fit the ground set")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    #[inline]
    pub fn degree_pure(&self) -> Option<u32> {
        self.degree_pure
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    fn check(&self, m: &Monomial) -> Result<()> {
        if m.n() != self.n {
            Err(Error::DimensionMismatch { expected: self.n, got: m.n() })
        } else {
            Ok(())
        }
    }

    pub fn is_member(&self, m: &Monomial) -> Result<bool> {
        self.check(m)?;
        Ok(self.contains(m))
    }

    #[inline]
    pub(crate) fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_minimal_generator(&self, m: &Monomial) -> Result<bool> {
        self.check(m)?;
        Ok(self.gens.binary_search_by(|g| g.degree.cmp(&m.degree).then_with(|| m.exps.cmp(&g.exps))).is_ok())
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        let set: HashSet<Monomial> = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul(b)))
            .collect();
        MonomialIdeal::new(self.n, set.into_iter().collect())
    }

    /// `I^q` by repeated multiplication, `q >= 1`.
    pub fn power(&self, q: u32) -> Result<MonomialIdeal> {
        if q == 0 {
            return Err(Error::InvalidParameter("power must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..q {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Least common multiple of all generators.
    pub fn lcm_all(&self) -> Monomial {
        self.gens.iter().fold(Monomial::one(self.n), |acc, g| acc.lcm(g))
    }

    /// Checks the exchange axiom: for generators `u, v` and `i` with
    /// `deg_i(u) > deg_i(v)`, some `j` with `deg_j(u) < deg_j(v)` has
    /// `x_j * u / x_i` a minimal generator.
    pub fn is_polymatroidal(&self) -> Result<std::result::Result<(), ExchangeWitness>> {
        if self.degree_pure.is_none() && !self.is_zero() {
            return Err(Error::NotPure);
        }
        let index: HashSet<&Monomial> = self.gens.iter().collect();
        let n = self.n;
        let failure = (0..self.gens.len()).into_par_iter().find_map_first(|a| {
            let u = &self.gens[a];
            for v in &self.gens {
                for i in 0..n {
                    if u.exp(i) <= v.exp(i) {
                        continue;
                    }
                    let ok = (0..n)
                        .filter(|&j| u.exp(j) < v.exp(j))
                        .any(|j| u.exchange(j, i).is_some_and(|w| index.contains(&w)));
                    if !ok {
                        return Some(ExchangeWitness { u: u.clone(), v: v.clone(), i });
                    }
                }
            }
            None
        });
        Ok(failure.map_or(Ok(()), Err))
    }

    /// Checks the ordered exchange condition under `var_order` (position `k`
    /// is variable `var_order[k]`): whenever `f` and `g` first differ at
    /// position `t` with `f` larger there, some later position `l` has
    /// `x_t * g / x_l` in the ideal.
    pub fn is_weakly_polymatroidal(&self, var_order: &[usize]) -> Result<std::result::Result<(), WeakWitness>> {
        if self.degree_pure.is_none() && !self.is_zero() {
            return Err(Error::NotPure);
        }
        let mut seen = vec![false; self.n];
        if var_order.len() != self.n || var_order.iter().any(|&v| v >= self.n || std::mem::replace(&mut seen[v], true)) {
            return Err(Error::InvalidParameter("variable order must be a permutation".into()));
        }
        // Exchanges keep the degree, so membership is generator lookup.
        let index: HashSet<&Monomial> = self.gens.iter().collect();
        let failure = (0..self.gens.len()).into_par_iter().find_map_first(|a| {
            let f = &self.gens[a];
            for g in &self.gens {
                let Some(t) = (0..self.n).find(|&k| f.exp(var_order[k]) != g.exp(var_order[k])) else {
                    continue;
                };
                let xt = var_order[t];
                if f.exp(xt) < g.exp(xt) {
                    continue;
                }
                let ok = (t + 1..self.n).any(|l| g.exchange(xt, var_order[l]).is_some_and(|w| index.contains(&w)));
                if !ok {
                    return Some(WeakWitness { f: f.clone(), g: g.clone(), t: xt });
                }
            }
            None
        });
        Ok(failure.map_or(Ok(()), Err))
    }

    /// Searches for an order of the minimal generators with linear quotients.
    /// Candidates are tried in the stored order first; failed sets of placed
    /// generators are memoized. `budget` caps the number of expanded sets.
    pub fn has_linear_quotients(&self, budget: u64) -> Result<QuotientOutcome> {
        if self.degree_pure.is_none() && !self.is_zero() {
            return Err(Error::NotPure);
        }
        let t = self.gens.len();
        if t <= 1 {
            return Ok(QuotientOutcome::Found((0..t).collect()));
        }
        // colon[k][i]: support of f_i / gcd(f_i, f_k), and whether it is a
        // single variable.
        let quot: Vec<Vec<(VertexSet, Option<usize>)>> = (0..t)
            .map(|k| {
                (0..t)
                    .map(|i| {
                        let q = self.gens[i].div(&self.gens[i].gcd(&self.gens[k]));
                        (q.support(), q.as_variable())
                    })
                    .collect()
            })
            .collect();
        let mut search = QuotientSearch {
            quot,
            t,
            budget,
            nodes: 0,
            failed: HashSet::new(),
            order: Vec::with_capacity(t),
            placed: vec![0u64; t.div_ceil(64)],
            out_of_budget: false,
        };
        if search.dfs() {
            Ok(QuotientOutcome::Found(search.order))
        } else if search.out_of_budget {
            Ok(QuotientOutcome::Exhausted)
        } else {
            Ok(QuotientOutcome::Refuted)
        }
    }
}

/// A failed exchange: `u`, `v`, and the variable `i` that cannot be traded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub u: Monomial,
    pub v: Monomial,
    pub i: usize,
}

/// A failed ordered exchange for the pair `(f, g)` at variable `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakWitness {
    pub f: Monomial,
    pub g: Monomial,
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientOutcome {
    /// Indices into [`MonomialIdeal::gens`] in a linear-quotient order.
    Found(Vec<usize>),
    Refuted,
    Exhausted,
}

struct QuotientSearch {
    quot: Vec<Vec<(VertexSet, Option<usize>)>>,
    t: usize,
    budget: u64,
    nodes: u64,
    failed: HashSet<Vec<u64>>,
    order: Vec<usize>,
    placed: Vec<u64>,
    out_of_budget: bool,
}

impl QuotientSearch {
    fn is_placed(&self, i: usize) -> bool {
        self.placed[i / 64] >> (i % 64) & 1 == 1
    }

    fn fits(&self, k: usize) -> bool {
        if self.order.is_empty() {
            return true;
        }
        let row = &self.quot[k];
        let linear: VertexSet = self.order.iter().filter_map(|&j| row[j].1).collect();
        self.order.iter().all(|&i| row[i].0.intersects(linear))
    }

    fn dfs(&mut self) -> bool {
        if self.order.len() == self.t {
            return true;
        }
        if self.failed.contains(&self.placed) {
            return false;
        }
        if self.nodes >= self.budget {
            self.out_of_budget = true;
            return false;
        }
        self.nodes += 1;
        for k in 0..self.t {
            if self.is_placed(k) || !self.fits(k) {
                continue;
            }
            self.order.push(k);
            self.placed[k / 64] |= 1 << (k % 64);
            if self.dfs() {
                return true;
            }
            self.placed[k / 64] &= !(1 << (k % 64));
            self.order.pop();
            if self.out_of_budget {
                return false;
            }
        }
        self.failed.insert(self.placed.clone());
        false
    }
}

/// `I_r(G)`: one squarefree generator per connected `(r+1)`-subset.
pub fn connected_ideal(g: &Graph, r: usize) -> Result<MonomialIdeal> {
    Ok(MonomialIdeal::from_clutter(&connected_clutter(g, r)?))
}

/// One factorization `u * v` for each product of two generators, keyed by
/// the product.
pub fn square_factorizations(i: &MonomialIdeal) -> HashMap<Monomial, (Monomial, Monomial)> {
    let mut out = HashMap::new();
    for (a, u) in i.gens.iter().enumerate() {
        for v in &i.gens[a..] {
            out.entry(u.mul(v)).or_insert_with(|| (u.clone(), v.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_multipartite, cycle, path};

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn minimal_generators() {
        let i = MonomialIdeal::new(2, vec![mono(&[1, 0]), mono(&[1, 1]), mono(&[2, 0]), mono(&[0, 3])]).unwrap();
        assert_eq!(i.gens(), &[mono(&[1, 0]), mono(&[0, 3])]);
        assert_eq!(i.degree_pure(), None);
        assert!(i.is_member(&mono(&[1, 5])).unwrap());
        assert!(!i.is_member(&mono(&[0, 2])).unwrap());
        assert!(i.is_minimal_generator(&mono(&[0, 3])).unwrap());
        assert!(!i.is_minimal_generator(&mono(&[1, 1])).unwrap());
        assert!(i.is_member(&mono(&[1])).is_err());
    }

    #[test]
    fn connected_ideals() {
        let m = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let i = connected_ideal(&m, 1).unwrap();
        assert_eq!(i.gens(), &[mono(&[1, 1, 0, 0]), mono(&[0, 0, 1, 1])]);
        assert_eq!(connected_ideal(&cycle(5).unwrap(), 2).unwrap().gens().len(), 5);
        assert_eq!(connected_ideal(&cycle(5).unwrap(), 2).unwrap().degree_pure(), Some(3));
    }

    #[test]
    fn powers() {
        let i = connected_ideal(&path(3).unwrap(), 1).unwrap();
        assert_eq!(i.power(1).unwrap(), i);
        let sq = i.power(2).unwrap();
        let mut expected = [mono(&[2, 2, 0]), mono(&[1, 2, 1]), mono(&[0, 2, 2])];
        expected.sort_by(|a, b| b.exps.cmp(&a.exps));
        assert_eq!(sq.gens(), &expected[..]);
        assert_eq!(sq.degree_pure(), Some(4));
        // Products of generators of I^1 and I^2 lie in I^3.
        let cube = i.power(3).unwrap();
        for a in i.gens() {
            for b in sq.gens() {
                assert!(cube.is_member(&a.mul(b)).unwrap());
            }
        }
    }

    #[test]
    fn exchange_properties() {
        // All quadrics in three variables.
        let all: Vec<Monomial> = (0..3)
            .flat_map(|a| (a..3).map(move |b| Monomial::variable(3, a).mul(&Monomial::variable(3, b))))
            .collect();
        let ver = MonomialIdeal::new(3, all).unwrap();
        assert_eq!(ver.is_polymatroidal().unwrap(), Ok(()));
        assert_eq!(ver.is_weakly_polymatroidal(&[2, 0, 1]).unwrap(), Ok(()));

        let k = connected_ideal(&complete_multipartite(&[2, 2]).unwrap(), 2).unwrap();
        assert_eq!(k.is_polymatroidal().unwrap(), Ok(()));

        // (x0x1, x2x3): exchanging between coprime generators fails.
        let two = connected_ideal(&Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(), 1).unwrap();
        assert!(two.is_polymatroidal().unwrap().is_err());
        assert!(two.is_weakly_polymatroidal(&[0, 1, 2, 3]).unwrap().is_err());
        assert!(two.is_weakly_polymatroidal(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn linear_quotients() {
        let principal = MonomialIdeal::new(3, vec![mono(&[1, 1, 1])]).unwrap();
        assert_eq!(principal.has_linear_quotients(10).unwrap(), QuotientOutcome::Found(vec![0]));
        let two = connected_ideal(&Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(), 1).unwrap();
        assert_eq!(two.has_linear_quotients(100).unwrap(), QuotientOutcome::Refuted);
        let p4 = connected_ideal(&path(4).unwrap().complement(), 1).unwrap();
        assert!(matches!(p4.has_linear_quotients(1000).unwrap(), QuotientOutcome::Found(_)));
        // The colon condition holds along the returned order.
        let c = connected_ideal(&cycle(6).unwrap().complement(), 3).unwrap();
        if let QuotientOutcome::Found(order) = c.has_linear_quotients(100_000).unwrap() {
            let g = c.gens();
            for k in 1..order.len() {
                let fk = &g[order[k]];
                for &i in &order[..k] {
                    let qi = g[i].div(&g[i].gcd(fk));
                    assert!(order[..k].iter().any(|&j| {
                        let qj = g[j].div(&g[j].gcd(fk));
                        qj.as_variable().is_some_and(|l| qi.exp(l) > 0)
                    }));
                }
            }
        } else {
            panic!("expected linear quotients");
        }
    }
}
