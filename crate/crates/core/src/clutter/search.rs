//! Elimination-order search and certificate replay.
//!
//! The search runs on bare `u64` edge masks kept in increasing numeric order
//! so membership is a binary search. Failed states are remembered by a
//! 128-bit Zobrist digest of their edge set, updated incrementally on each
//! deletion.

use std::collections::{HashMap, HashSet};

use super::{sort_lex, Clutter, EliminationCertificate};
use crate::graph::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Always delete the lexicographically least simplicial subedge.
    Greedy,
    /// Depth-first over all simplicial choices with a memo of failed states.
    Backtracking,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(EliminationCertificate),
    /// The whole search tree was explored without reaching the empty clutter.
    Refuted,
    /// The node budget ran out first. Says nothing about chordality.
    Exhausted,
    /// Greedy reached a clutter with edges but no simplicial subedge. Another
    /// order might still succeed.
    DeadEnd,
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&EliminationCertificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::Refuted => "refuted",
            SearchOutcome::Exhausted => "exhausted",
            SearchOutcome::DeadEnd => "dead-end",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// States whose simplicial subedges were computed.
    pub nodes: u64,
    /// States skipped because they were already known to fail.
    pub memo_hits: u64,
}

#[inline]
fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

#[inline]
fn zobrist(e: u64) -> u128 {
    ((splitmix(e) as u128) << 64) | splitmix(e ^ 0xD6E8_FEB8_6659_FD93) as u128
}

struct State {
    edges: Vec<u64>,
    digest: u128,
}

impl State {
    fn new(mut edges: Vec<u64>) -> Self {
        edges.sort_unstable();
        let digest = edges.iter().fold(0u128, |acc, &e| acc ^ zobrist(e));
        State { edges, digest }
    }

    #[inline]
    fn contains(&self, e: u64) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    fn is_clique(&self, w: VertexSet, d: usize) -> bool {
        w.len() < d || w.subsets_of_size(d).all(|s| self.contains(s.bits()))
    }

    /// Simplicial maximal subedges in lexicographic order.
    fn simplicial(&self, d: usize) -> Vec<VertexSet> {
        let mut table: HashMap<u64, u64> = HashMap::with_capacity(self.edges.len() * d);
        for &e in &self.edges {
            let mut rest = e;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                *table.entry(e ^ bit).or_insert(0) |= e;
            }
        }
        let mut out: Vec<VertexSet> = table
            .into_iter()
            .filter(|&(_, nb)| self.is_clique(VertexSet::from_bits(nb), d))
            .map(|(s, _)| VertexSet::from_bits(s))
            .collect();
        sort_lex(&mut out);
        out
    }

    fn delete(&self, sigma: VertexSet) -> State {
        let s = sigma.bits();
        let mut digest = self.digest;
        let mut edges = Vec::with_capacity(self.edges.len());
        for &e in &self.edges {
            if e & s == s {
                digest ^= zobrist(e);
            } else {
                edges.push(e);
            }
        }
        State { edges, digest }
    }
}

struct Backtracker {
    d: usize,
    budget: u64,
    stats: SearchStats,
    failed: HashSet<u128>,
    path: Vec<VertexSet>,
    out_of_budget: bool,
}

impl Backtracker {
    /// True when `state` can be emptied; the successful choices are left in
    /// `self.path`.
    fn dfs(&mut self, state: &State) -> bool {
        if state.edges.is_empty() {
            return true;
        }
        if self.failed.contains(&state.digest) {
            self.stats.memo_hits += 1;
            return false;
        }
        if self.stats.nodes >= self.budget {
            self.out_of_budget = true;
            return false;
        }
        self.stats.nodes += 1;
        for sigma in state.simplicial(self.d) {
            let child = state.delete(sigma);
            self.path.push(sigma);
            if self.dfs(&child) {
                return true;
            }
            self.path.pop();
            if self.out_of_budget {
                return false;
            }
        }
        self.failed.insert(state.digest);
        false
    }
}

/// Searches for a sequence of simplicial maximal subedges whose deletion
/// empties `c`. `budget` caps the number of expanded states.
pub fn find_elimination_order(c: &Clutter, strategy: Strategy, budget: u64) -> (SearchOutcome, SearchStats) {
    let start = State::new(c.edges().iter().map(|e| e.bits()).collect());
    let d = c.d();
    match strategy {
        Strategy::Greedy => {
            let mut stats = SearchStats::default();
            let mut state = start;
            let mut steps = Vec::new();
            while !state.edges.is_empty() {
                if stats.nodes >= budget {
                    return (SearchOutcome::Exhausted, stats);
                }
                stats.nodes += 1;
                match state.simplicial(d).first() {
                    None => return (SearchOutcome::DeadEnd, stats),
                    Some(&sigma) => {
                        state = state.delete(sigma);
                        steps.push(sigma);
                    }
                }
            }
            (SearchOutcome::Found(EliminationCertificate::for_clutter(c, steps)), stats)
        }
        Strategy::Backtracking => {
            let mut bt = Backtracker {
                d,
                budget,
                stats: SearchStats::default(),
                failed: HashSet::new(),
                path: Vec::new(),
                out_of_budget: false,
            };
            let outcome = if bt.dfs(&start) {
                SearchOutcome::Found(EliminationCertificate::for_clutter(c, std::mem::take(&mut bt.path)))
            } else if bt.out_of_budget {
                SearchOutcome::Exhausted
            } else {
                SearchOutcome::Refuted
            };
            (outcome, bt.stats)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationReason {
    HashMismatch,
    WrongSize,
    NotMaximal,
    NotSimplicial,
    NotEmpty,
}

impl ViolationReason {
    pub fn name(self) -> &'static str {
        match self {
            ViolationReason::HashMismatch => "hash-mismatch",
            ViolationReason::WrongSize => "wrong-size",
            ViolationReason::NotMaximal => "not-maximal",
            ViolationReason::NotSimplicial => "not-simplicial",
            ViolationReason::NotEmpty => "not-empty",
        }
    }
}

/// The first problem found while replaying a certificate. `step` is `None`
/// for problems not tied to a step (hash mismatch, leftover edges).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub step: Option<usize>,
    pub reason: ViolationReason,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.step {
            Some(k) => write!(f, "step {k}: {}", self.reason.name()),
            None => write!(f, "{}", self.reason.name()),
        }
    }
}

/// Replays `cert` against `c` and reports the first violation.
pub fn verify_certificate(c: &Clutter, cert: &EliminationCertificate) -> Result<(), Violation> {
    if cert.source_hash != c.source_hash() {
        return Err(Violation {
            step: None,
            reason: ViolationReason::HashMismatch,
        });
    }
    let mut cur = c.clone();
    for (k, &sigma) in cert.steps.iter().enumerate() {
        let fail = |reason| Err(Violation { step: Some(k), reason });
        let nb = match cur.closed_neighborhood(sigma) {
            Ok(nb) => nb,
            Err(_) => return fail(ViolationReason::WrongSize),
        };
        if nb == sigma {
            return fail(ViolationReason::NotMaximal);
        }
        if !cur.is_clique(nb) {
            return fail(ViolationReason::NotSimplicial);
        }
        cur = cur.delete_unchecked(sigma);
    }
    if cur.is_empty() {
        Ok(())
    } else {
        Err(Violation {
            step: None,
            reason: ViolationReason::NotEmpty,
        })
    }
}
