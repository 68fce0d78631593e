//! Lower bounds by exhaustive assignment of witness points to copies.
//!
//! If `K ⊆ ⋃ᵢ₌₁..m (μK + uᵢ)`, sending each witness point to a copy containing it
//! splits the points into at most `m` groups, each of smallest enclosing
//! homothet ratio at most `μ`. So when no split into `m` groups has every ratio
//! strictly below `λ`, no covering with `μ < λ` exists and `γ_m ≥ λ`.
//!
//! The search is a branch-and-bound over unlabeled groups: each point joins an
//! existing group or opens the next one. Points whose pair ratio with every
//! other point is already at least the target are placed alone up front. The
//! first remaining point is split by symmetry: either it stays alone, or it is
//! grouped with one representative of each orbit of its stabilizer.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::body::GaugeBody;
use crate::error::{Error, Result};
use crate::radius::min_ratio;
use crate::rational::Rational;
use crate::witness::{Generator, WitnessSet};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Points to split, the gauge body, and index permutations preserving ratios.
#[derive(Clone, Debug)]
pub struct PartitionProblem {
    pub body: GaugeBody,
    pub points: Vec<Vec<Rational>>,
    /// Each entry maps point `i` to point `perm[i]`; may be just the identity.
    pub symmetries: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// No split into the allowed number of groups has all ratios below the target.
    Infeasible,
    /// Groups of point indices, all ratios below the target.
    Found(Vec<Vec<usize>>),
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: u64,
    pub branches: usize,
}

struct Ratios<'a> {
    problem: &'a PartitionProblem,
    memo: HashMap<u64, Rational>,
}

impl Ratios<'_> {
    fn get(&mut self, mask: u64) -> Rational {
        if let Some(r) = self.memo.get(&mask) {
            return r.clone();
        }
        let pts: Vec<&Vec<Rational>> =
            (0..64).filter(|i| mask >> i & 1 == 1).map(|i| &self.problem.points[i]).collect();
        let r = min_ratio(&self.problem.body, &pts).ratio;
        self.memo.insert(mask, r.clone());
        r
    }
}

fn below(r: &Rational, target: Option<&Rational>) -> bool {
    target.is_none_or(|t| r < t)
}

struct Dfs<'a, 'b> {
    order: &'b [usize],
    compat: &'b [u64],
    ratios: Ratios<'a>,
    target: Option<&'b Rational>,
    avail: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    groups: Vec<u64>,
    first_closed: bool,
}

impl Dfs<'_, '_> {
    fn go(&mut self, idx: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return false;
        }
        let Some(&i) = self.order.get(idx) else { return true };
        let bit = 1u64 << i;
        for g in 0..self.groups.len() {
            if g == 0 && self.first_closed {
                continue;
            }
            let m = self.groups[g];
            if m & !self.compat[i] != 0 {
                continue;
            }
            let joined = m | bit;
            if joined.count_ones() >= 3 && !below(&self.ratios.get(joined), self.target) {
                continue;
            }
            self.groups[g] = joined;
            if self.go(idx + 1) {
                return true;
            }
            self.groups[g] = m;
            if self.exhausted {
                return false;
            }
        }
        if self.groups.len() < self.avail {
            self.groups.push(bit);
            if self.go(idx + 1) {
                return true;
            }
            self.groups.pop();
        }
        false
    }
}

enum Start {
    Alone,
    With(usize),
}

impl PartitionProblem {
    pub fn new(body: GaugeBody, points: Vec<Vec<Rational>>) -> Self {
        let n = points.len();
        PartitionProblem { body, points, symmetries: vec![(0..n).collect()] }
    }

    pub fn from_witness_set(w: &WitnessSet) -> Self {
        PartitionProblem {
            body: GaugeBody::cross_polytope(),
            points: w.points.iter().map(|p| p.point.to_vec()).collect(),
            symmetries: w.symmetry_permutations(),
        }
    }

    /// Splits the points into at most `groups` groups with every ratio below
    /// `target` (no bound when `None`), or refutes that any such split exists.
    ///
    /// `budget` caps search nodes per first-level branch.
    pub fn search(&self, groups: usize, target: Option<&Rational>, budget: u64) -> SearchReport {
        let n = self.points.len();
        assert!(n <= 64, "at most 64 witness points");
        let mut ratios = Ratios { problem: self, memo: HashMap::new() };
        let mut compat = vec![0u64; n];
        for i in 0..n {
            for j in i + 1..n {
                if below(&ratios.get(1 << i | 1 << j), target) {
                    compat[i] |= 1 << j;
                    compat[j] |= 1 << i;
                }
            }
        }
        let isolated: Vec<usize> = (0..n).filter(|&i| compat[i] == 0).collect();
        if isolated.len() > groups {
            return SearchReport { outcome: SearchOutcome::Infeasible, nodes: 0, branches: 0 };
        }
        let avail = groups - isolated.len();
        let mut rest: Vec<usize> = (0..n).filter(|&i| compat[i] != 0).collect();
        rest.sort_by_key(|&i| (std::cmp::Reverse(n - 1 - compat[i].count_ones() as usize), i));
        let singletons = |mut found: Vec<Vec<usize>>| {
            found.extend(isolated.iter().map(|&i| vec![i]));
            found
        };
        if rest.is_empty() {
            return SearchReport { outcome: SearchOutcome::Found(singletons(Vec::new())), nodes: 0, branches: 0 };
        }
        if avail == 0 {
            return SearchReport { outcome: SearchOutcome::Infeasible, nodes: 0, branches: 0 };
        }
        let lead = rest[0];
        let stabilizer: Vec<&Vec<usize>> = self.symmetries.iter().filter(|g| g[lead] == lead).collect();
        let mut starts = vec![Start::Alone];
        let mut covered = 0u64;
        for &q in &rest[1..] {
            if compat[lead] >> q & 1 == 0 || covered >> q & 1 == 1 {
                continue;
            }
            for g in &stabilizer {
                covered |= 1 << g[q];
            }
            starts.push(Start::With(q));
        }
        let base_memo = ratios.memo;
        let run = |start: &Start| -> (Option<Vec<u64>>, u64, bool) {
            let (first, first_closed, skip) = match *start {
                Start::Alone => (1u64 << lead, true, None),
                Start::With(q) => (1u64 << lead | 1 << q, false, Some(q)),
            };
            let order: Vec<usize> = rest[1..].iter().copied().filter(|&i| Some(i) != skip).collect();
            let mut dfs = Dfs {
                order: &order,
                compat: &compat,
                ratios: Ratios { problem: self, memo: base_memo.clone() },
                target,
                avail,
                budget,
                nodes: 0,
                exhausted: false,
                groups: vec![first],
                first_closed,
            };
            let found = dfs.go(0);
            (found.then(|| dfs.groups.clone()), dfs.nodes, dfs.exhausted)
        };
        let results: Vec<(Option<Vec<u64>>, u64, bool)> = starts.par_iter().map(run).collect();
        let mut nodes = 0;
        let mut exhausted = false;
        for (found, k, ex) in results {
            nodes += k;
            exhausted |= ex;
            if let Some(masks) = found {
                let groups: Vec<Vec<usize>> = masks
                    .into_iter()
                    .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
                    .collect();
                return SearchReport { outcome: SearchOutcome::Found(singletons(groups)), nodes, branches: starts.len() };
            }
        }
        let outcome = if exhausted { SearchOutcome::Exhausted } else { SearchOutcome::Infeasible };
        SearchReport { outcome, nodes, branches: starts.len() }
    }

    pub fn group_ratio(&self, group: &[usize]) -> Rational {
        let pts: Vec<&Vec<Rational>> = group.iter().map(|&i| &self.points[i]).collect();
        min_ratio(&self.body, &pts).ratio
    }

    /// `min` over splits into at most `groups` groups of the largest group ratio.
    ///
    /// Descends from any split: each round asks for a split strictly below the
    /// current maximum; the final refutation certifies the value. `None` when
    /// the budget runs out.
    pub fn min_max(&self, groups: usize, budget: u64) -> Option<MinMax> {
        let mut nodes = 0;
        let SearchReport { outcome: SearchOutcome::Found(mut best), nodes: k, .. } = self.search(groups, None, budget)
        else {
            return None;
        };
        nodes += k;
        loop {
            let value = best.iter().map(|g| self.group_ratio(g)).max().expect("at least one group");
            let report = self.search(groups, Some(&value), budget);
            nodes += report.nodes;
            match report.outcome {
                SearchOutcome::Infeasible => return Some(MinMax { value, groups: best, nodes }),
                SearchOutcome::Found(better) => best = better,
                SearchOutcome::Exhausted => return None,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinMax {
    pub value: Rational,
    pub groups: Vec<Vec<usize>>,
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundStatus {
    #[serde(rename = "certified")]
    BoundCertified,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSummary {
    pub generators: Vec<Generator>,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterGroup {
    pub labels: Vec<String>,
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundVerdict {
    pub status: LowerBoundStatus,
    pub m: usize,
    pub lambda: Rational,
    pub witness_set: WitnessSummary,
    pub nodes_explored: u64,
    /// First-level branches left after symmetry reduction.
    pub branches: usize,
    pub budget_exhausted: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Vec<CounterGroup>>,
}

impl LowerBoundVerdict {
    pub fn is_certified(&self) -> bool {
        self.status == LowerBoundStatus::BoundCertified
    }
}

fn counter_groups(problem: &PartitionProblem, w: &WitnessSet, groups: &[Vec<usize>], target: &Rational) -> Vec<CounterGroup> {
    groups
        .iter()
        .map(|g| {
            let ratio = problem.group_ratio(g);
            assert!(ratio < *target, "counterexample group failed re-verification");
            CounterGroup { labels: g.iter().map(|&i| w.points[i].label.clone()).collect(), ratio }
        })
        .collect()
}

/// Decides whether every split of `w` into `m` groups has a group of ratio at
/// least `target`; if so, `γ_m ≥ target`.
pub fn certify_lower_bound(m: usize, target: &Rational, w: &WitnessSet, budget: u64) -> Result<LowerBoundVerdict> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let problem = PartitionProblem::from_witness_set(w);
    let report = problem.search(m, Some(target), budget);
    let (status, counterexample, exhausted) = match report.outcome {
        SearchOutcome::Infeasible => (LowerBoundStatus::BoundCertified, None, false),
        SearchOutcome::Found(groups) => {
            (LowerBoundStatus::Inconclusive, Some(counter_groups(&problem, w, &groups, target)), false)
        }
        SearchOutcome::Exhausted => (LowerBoundStatus::Inconclusive, None, true),
    };
    Ok(LowerBoundVerdict {
        status,
        m,
        lambda: target.clone(),
        witness_set: WitnessSummary { generators: w.generators.clone(), size: w.len() },
        nodes_explored: report.nodes,
        branches: report.branches,
        budget_exhausted: exhausted,
        counterexample,
    })
}

/// Largest bound `w` certifies for `m` copies, with the certifying verdict.
pub fn best_lower_bound(m: usize, w: &WitnessSet, budget: u64) -> Result<Option<(Rational, LowerBoundVerdict)>> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let problem = PartitionProblem::from_witness_set(w);
    let Some(mm) = problem.min_max(m, budget) else { return Ok(None) };
    let verdict = certify_lower_bound(m, &mm.value, w, budget)?;
    assert!(verdict.is_certified(), "min-max value must certify");
    Ok(Some((mm.value, verdict)))
}
