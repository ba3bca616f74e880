//! Named, parameterized checks of the structural and algebraic theorems,
//! each producing a list of verdicts.

mod checks;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::resolution::Field;

macro_rules! theorem_ids {
    ($($variant:ident => $code:literal, $what:literal;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TheoremId { $($variant,)* }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant,)*];

            pub fn code(self) -> &'static str {
                match self { $(TheoremId::$variant => $code,)* }
            }

            /// One-line description of what the check establishes.
            pub fn description(self) -> &'static str {
                match self { $(TheoremId::$variant => $what,)* }
            }
        }
    };
}

theorem_ids! {
    L3_1 => "L3.1", "C_r(K_n) is chordal: the lex builder replays and search agrees";
    T3_2 => "T3.2", "C_r(G) is chordal for block graphs G, r >= 2: builder replays";
    T3_3 => "T3.3", "C_r(C_n) is chordal for r >= 2: builder replays";
    L3_4 => "L3.4", "complement of C_r(G) lies inside C_r(co-G), with equality for r = 1, 2";
    R3_5 => "R3.5", "reg I_1(co-C_n) = reg I_2(co-C_n) = 3 for n >= 4";
    L3_6 => "L3.6", "a connected graph is a nontrivial join iff its complement is disconnected";
    L3_7 => "L3.7", "complement-clutter edges are the sets inducing a connected nontrivial join in co-G";
    L3_9 => "L3.9", "edges through a simplicial vertex x of co-G split as B join complete D, reduced";
    O3_10 => "O3.10", "reduced forms: distance-2 vertices lie in B; each neighbor of x in B misses some vertex of B";
    L3_11 => "L3.11", "a complete cone over B is swept by simplicial subedges containing B";
    T4_7 => "T4.7", "co-chordal-cactus graphs on path skeletons give co-chordal C_r, r >= 2";
    T4_8 => "T4.8", "co-chordal-cactus graphs on cycle skeletons give co-chordal C_r, r >= 2";
    T4_9 => "T4.9", "co-chordal-cactus graphs give co-chordal C_r, r >= 2";
    T4_11 => "T4.11", "(2K2,C4)-free graphs give co-chordal C_r, r >= 2";
    T4_13 => "T4.13", "complements of grids give co-chordal C_r, r >= 2";
    T5_1 => "T5.1", "reg I_1(G) <= 3 for co-chordal-cactus G";
    T5_2 => "T5.2", "reg I_1(G) <= 3 for complements of grids";
    C5_3 => "C5.3", "I_r(G) has a linear resolution for r >= 2 on the three co-chordal families";
    E5_6 => "E5.6", "the 7-vertex example: reg I_1 = 3, reg I_2 >= 5, I_2 not linear";
    L6_1 => "L6.1", "degree-6 monomials with support >= 5 are minimal generators of I_2(co-P_n)^2";
    T6_2 => "T6.2", "powers of I_r(co-T) are linear for trees with max degree <= r";
    T6_3 => "T6.3", "powers of I_r are linear for complete multipartite, co-C_n (r >= 3), and Gamma graphs";
    T6_5 => "T6.5", "powers of I_r(G) are linear for partially split G, r >= 2";
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremId> {
        let t = s.trim();
        TheoremId::ALL
            .iter()
            .copied()
            .find(|id| id.code().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown theorem id `{s}`")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Desk-scale limits enforced by [`CheckSpec::validate`].
pub const MAX_GRAPH_VERTICES: usize = 12;
pub const MAX_POWER: u32 = 3;
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Exchange scans are skipped above this many generators.
pub const MAX_EXCHANGE_GENERATORS: usize = 1000;

/// Parameters of one check. Unset ranges fall back to per-theorem defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSpec {
    pub theorem: TheoremId,
    pub min_n: Option<usize>,
    pub max_n: Option<usize>,
    pub max_r: Option<usize>,
    pub max_q: Option<u32>,
    pub seeds: Vec<u64>,
    pub budget: u64,
    pub field: Field,
}

impl CheckSpec {
    pub fn new(theorem: TheoremId) -> Self {
        CheckSpec {
            theorem,
            min_n: None,
            max_n: None,
            max_r: None,
            max_q: None,
            seeds: (0..5).collect(),
            budget: DEFAULT_BUDGET,
            field: Field::Gf2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let (Some(lo), Some(hi)) = (self.min_n, self.max_n) {
            if lo > hi {
                return Err(Error::InvalidParameter(format!("min-n {lo} exceeds max-n {hi}")));
            }
        }
        let vertex_cap = match self.theorem {
            TheoremId::L3_4 | TheoremId::L3_6 | TheoremId::L3_7 | TheoremId::L3_9 | TheoremId::O3_10 => 7,
            TheoremId::L3_1 => 10,
            _ => MAX_GRAPH_VERTICES,
        };
        if let Some(n) = self.max_n {
            if n > vertex_cap {
                return Err(Error::InvalidParameter(format!("{} is limited to {vertex_cap} vertices", self.theorem)));
            }
        }
        if self.max_r == Some(0) {
            return Err(Error::InvalidParameter("max-r must be at least 1".into()));
        }
        if let Some(q) = self.max_q {
            if q == 0 || q > MAX_POWER {
                return Err(Error::InvalidParameter(format!("max-q must lie in 1..={MAX_POWER}")));
            }
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidParameter("at least one seed is required".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail { witness: Value },
    Inconclusive { reason: String, #[serde(default, skip_serializing_if = "Option::is_none")] budget: Option<u64> },
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail { .. } => "fail",
            Outcome::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: TheoremId,
    pub instance: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    /// Wall-clock time; informational only.
    pub runtime_ms: f64,
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self.outcome, Outcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self.outcome, Outcome::Fail { .. })
    }

    /// `theorem,instance,outcome,runtime_ms` with the instance quoted.
    pub fn csv_row(&self) -> String {
        format!("{},\"{}\",{},{:.3}", self.theorem, self.instance.replace('"', "'"), self.outcome.name(), self.runtime_ms)
    }
}

pub(crate) fn timed(theorem: TheoremId, instance: String, f: impl FnOnce() -> Outcome) -> Verdict {
    let t0 = Instant::now();
    let outcome = f();
    Verdict { theorem, instance, outcome, runtime_ms: t0.elapsed().as_secs_f64() * 1e3 }
}

/// Instantiates the family for `spec` and runs its predicate on every
/// instance. Instances run in parallel; the returned order is fixed.
pub fn run_check(spec: &CheckSpec) -> Result<Vec<Verdict>> {
    spec.validate()?;
    checks::run(spec)
}

/// Runs every theorem with default parameters.
pub fn run_all(budget: u64, field: Field) -> Result<Vec<Verdict>> {
    let lists = TheoremId::ALL
        .par_iter()
        .map(|&id| {
            let mut spec = CheckSpec::new(id);
            spec.budget = budget;
            spec.field = field;
            run_check(&spec)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(lists.into_iter().flatten().collect())
}

/// Per-theorem tallies over a verdict list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub passed: Vec<TheoremId>,
    pub failed: Vec<TheoremId>,
    pub inconclusive: Vec<TheoremId>,
    /// Theorems without a single passing verdict.
    pub missing: Vec<TheoremId>,
}

impl Coverage {
    pub fn of(verdicts: &[Verdict]) -> Coverage {
        let mut c = Coverage::default();
        for &id in TheoremId::ALL {
            let mine: Vec<&Verdict> = verdicts.iter().filter(|v| v.theorem == id).collect();
            if mine.iter().any(|v| v.is_pass()) {
                c.passed.push(id);
            } else {
                c.missing.push(id);
            }
            if mine.iter().any(|v| v.is_fail()) {
                c.failed.push(id);
            }
            if mine.iter().any(|v| matches!(v.outcome, Outcome::Inconclusive { .. })) {
                c.inconclusive.push(id);
            }
        }
        c
    }

    /// Every theorem passed somewhere and nothing failed.
    pub fn suite_green(&self) -> bool {
        self.missing.is_empty() && self.failed.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        assert_eq!(TheoremId::ALL.len(), 23);
        for &id in TheoremId::ALL {
            assert_eq!(id.code().parse::<TheoremId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(serde_json::from_str::<TheoremId>(&json).unwrap(), id);
        }
        assert_eq!("t4.13".parse::<TheoremId>().unwrap(), TheoremId::T4_13);
        assert!("T9.9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn spec_validation() {
        let mut s = CheckSpec::new(TheoremId::T4_13);
        assert!(s.validate().is_ok());
        s.max_q = Some(4);
        assert!(s.validate().is_err());
        s.max_q = None;
        s.max_n = Some(13);
        assert!(s.validate().is_err());
        s.max_n = Some(3);
        s.min_n = Some(4);
        assert!(s.validate().is_err());
        let mut s = CheckSpec::new(TheoremId::L3_7);
        s.max_n = Some(8);
        assert!(s.validate().is_err());
        s.max_n = Some(5);
        s.seeds.clear();
        assert!(s.validate().is_err());
    }

    #[test]
    fn verdict_json() {
        let v = Verdict {
            theorem: TheoremId::E5_6,
            instance: "x".into(),
            outcome: Outcome::Inconclusive { reason: "budget".into(), budget: Some(3) },
            runtime_ms: 1.5,
        };
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"theorem":"E5.6","instance":"x","outcome":"inconclusive","reason":"budget","budget":3,"runtime_ms":1.5}"#);
        assert_eq!(serde_json::from_str::<Verdict>(&s).unwrap(), v);
        let p = Verdict { outcome: Outcome::Pass, ..v };
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"theorem":"E5.6","instance":"x","outcome":"pass","runtime_ms":1.5}"#);
    }

    #[test]
    fn coverage_requires_a_pass_everywhere() {
        let v = vec![Verdict { theorem: TheoremId::L3_1, instance: String::new(), outcome: Outcome::Pass, runtime_ms: 0.0 }];
        let c = Coverage::of(&v);
        assert_eq!(c.passed, vec![TheoremId::L3_1]);
        assert_eq!(c.missing.len(), 22);
        assert!(!c.suite_green());
    }
}
