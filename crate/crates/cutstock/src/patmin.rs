//! Pattern-count minimisation among waste-optimal solutions, the pattern
//! lower bound, order-splitting analysis, and conjecture instrumentation.
//!
//! Stage 1 establishes the optimal waste with the exact solver; stage 2
//! searches for a waste-optimal solution using at most k distinct patterns,
//! growing k from the lower bound until the first feasible value, which is
//! then the minimum.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, Objective, SolveStatus};
use crate::instance::Instance;
use crate::pattern::Pattern;
use crate::patterns::{self, EnumerationMode};
use crate::solution::Solution;

/// `ceil(sum_j w_j / W)`: every order must appear somewhere, and one master
/// can host at most W worth of distinct sizes. Independent of q and Q.
pub fn pattern_lower_bound(instance: &Instance) -> u64 {
    instance
        .total_size_width()
        .div_ceil(instance.master_width())
}

#[derive(Debug, Clone, Serialize)]
pub enum PatminStatus {
    ProvedOptimal {
        min_pattern_count: u64,
        witness: Solution,
    },
    LowerBoundOnly {
        /// All counts up to and including this bound are proven impossible...
        /// i.e. the optimum is at least `proven_lower_bound`.
        proven_lower_bound: u64,
        best_known: Option<(u64, Solution)>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct PatminReport {
    pub optimal_waste: u64,
    pub status: PatminStatus,
}

impl PatminReport {
    pub fn min_pattern_count(&self) -> Option<u64> {
        match &self.status {
            PatminStatus::ProvedOptimal {
                min_pattern_count, ..
            } => Some(*min_pattern_count),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Solution> {
        match &self.status {
            PatminStatus::ProvedOptimal { witness, .. } => Some(witness),
            PatminStatus::LowerBoundOnly {
                best_known: Some((_, w)),
                ..
            } => Some(w),
            _ => None,
        }
    }
}

/// Minimum number of distinct patterns over all waste-optimal solutions.
pub fn min_patterns(instance: &Instance, time_limit: Option<Duration>) -> Result<PatminReport> {
    let deadline = time_limit.map(|d| Instant::now() + d);
    let stage1 = exact::solve_exact(instance, Objective::MinWaste, time_limit)?;
    let (optimal_waste, stage1_solution) = match stage1.status {
        SolveStatus::ProvedOptimal {
            objective_value,
            solution,
            ..
        } => (objective_value, solution),
        SolveStatus::Infeasible => return Err(Error::Infeasible),
        SolveStatus::TimeLimit { .. } => {
            return Ok(PatminReport {
                optimal_waste: 0,
                status: PatminStatus::LowerBoundOnly {
                    proven_lower_bound: pattern_lower_bound(instance),
                    best_known: None,
                },
            })
        }
    };
    min_patterns_with_waste(instance, optimal_waste, Some(stage1_solution), deadline)
}

/// Stage 2 with a known optimal waste (and optionally a known waste-optimal
/// solution serving as the initial upper bound).
pub fn min_patterns_with_waste(
    instance: &Instance,
    optimal_waste: u64,
    known: Option<Solution>,
    deadline: Option<Instant>,
) -> Result<PatminReport> {
    let known = known.map(|s| s.canonicalize());
    let upper = known.as_ref().map(|s| s.pattern_count() as u64);
    let lower = pattern_lower_bound(instance);
    let mut search = SetSearch::new(instance, optimal_waste, deadline)?;
    let mut k = lower;
    loop {
        if let Some(u) = upper {
            if k >= u {
                return Ok(PatminReport {
                    optimal_waste,
                    status: PatminStatus::ProvedOptimal {
                        min_pattern_count: u,
                        witness: known.unwrap(),
                    },
                });
            }
        }
        match search.find_with_slots(k as usize) {
            SearchOutcome::Found(solution) => {
                let solution = solution.canonicalize();
                let count = solution.pattern_count() as u64;
                debug_assert!(count <= k);
                return Ok(PatminReport {
                    optimal_waste,
                    status: PatminStatus::ProvedOptimal {
                        min_pattern_count: count.max(lower).min(k),
                        witness: solution,
                    },
                });
            }
            SearchOutcome::Exhausted => {
                k += 1;
                // No upper bound known: cap the search at the number of
                // candidate patterns to guarantee termination.
                if upper.is_none() && k > search.candidate_count() as u64 {
                    return Err(Error::Infeasible);
                }
            }
            SearchOutcome::TimedOut => {
                return Ok(PatminReport {
                    optimal_waste,
                    status: PatminStatus::LowerBoundOnly {
                        proven_lower_bound: k,
                        best_known: upper.map(|u| (u, known.clone().unwrap())),
                    },
                })
            }
        }
    }
}

/// Outcome of a bounded existence search.
#[derive(Debug, Clone, Serialize)]
pub enum BudgetSearchOutcome {
    Found(Solution),
    /// No solution with the given waste uses at most the given number of
    /// distinct patterns (proof by exhaustion).
    Exhausted,
    TimedOut,
}

/// Searches for a solution with exactly `waste` total waste that uses at most
/// `max_patterns` distinct patterns. `Exhausted` is a proof that none exists.
pub fn search_with_pattern_budget(
    instance: &Instance,
    waste: u64,
    max_patterns: u64,
    time_limit: Option<Duration>,
) -> Result<BudgetSearchOutcome> {
    let deadline = time_limit.map(|d| Instant::now() + d);
    let mut search = SetSearch::new(instance, waste, deadline)?;
    Ok(match search.find_with_slots(max_patterns as usize) {
        SearchOutcome::Found(solution) => BudgetSearchOutcome::Found(solution.canonicalize()),
        SearchOutcome::Exhausted => BudgetSearchOutcome::Exhausted,
        SearchOutcome::TimedOut => BudgetSearchOutcome::TimedOut,
    })
}

#[derive(Debug, Clone, Serialize)]
pub enum SplitStatus {
    Proved {
        min_appearances: u64,
        witness: Solution,
    },
    BestKnown {
        proven_lower_bound: u64,
        upper_bound: u64,
        witness: Solution,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitReport {
    pub order_index: usize,
    pub status: SplitStatus,
}

impl SplitReport {
    pub fn min_appearances(&self) -> Option<u64> {
        match &self.status {
            SplitStatus::Proved {
                min_appearances, ..
            } => Some(*min_appearances),
            _ => None,
        }
    }

    pub fn witness(&self) -> &Solution {
        match &self.status {
            SplitStatus::Proved { witness, .. } => witness,
            SplitStatus::BestKnown { witness, .. } => witness,
        }
    }
}

/// Minimum, over all waste-optimal solutions, of the number of distinct
/// patterns containing order `j`. Iterative deepening on the split budget.
pub fn min_split_for_order(
    instance: &Instance,
    order_index: usize,
    time_limit: Option<Duration>,
) -> Result<SplitReport> {
    if order_index >= instance.order_count() {
        return Err(Error::OrderIndexOutOfRange {
            index: order_index,
            count: instance.order_count(),
        });
    }
    let deadline = time_limit.map(|d| Instant::now() + d);
    let stage1 = exact::solve_exact(instance, Objective::MinWaste, time_limit)?;
    let (optimal_waste, stage1_solution) = match stage1.status {
        SolveStatus::ProvedOptimal {
            objective_value,
            solution,
            ..
        } => (objective_value, solution.canonicalize()),
        SolveStatus::Infeasible => return Err(Error::Infeasible),
        SolveStatus::TimeLimit { .. } => {
            return Err(Error::LimitsExceeded(
                "time limit reached before the optimal waste was established".into(),
            ))
        }
    };
    let upper = stage1_solution
        .entries()
        .iter()
        .filter(|(p, _)| p.contains_order(order_index))
        .count() as u64;
    let mut search = SetSearch::new(instance, optimal_waste, deadline)?;
    let start = if instance.orders()[order_index].min_qty() > 0 {
        1
    } else {
        0
    };
    for budget in start..upper {
        match search.find_with_split_budget(order_index, budget) {
            SearchOutcome::Found(solution) => {
                let solution = solution.canonicalize();
                let appearances = solution
                    .entries()
                    .iter()
                    .filter(|(p, _)| p.contains_order(order_index))
                    .count() as u64;
                return Ok(SplitReport {
                    order_index,
                    status: SplitStatus::Proved {
                        min_appearances: appearances.max(start).min(budget.max(start)),
                        witness: solution,
                    },
                });
            }
            SearchOutcome::Exhausted => continue,
            SearchOutcome::TimedOut => {
                return Ok(SplitReport {
                    order_index,
                    status: SplitStatus::BestKnown {
                        proven_lower_bound: budget,
                        upper_bound: upper,
                        witness: stage1_solution,
                    },
                })
            }
        }
    }
    Ok(SplitReport {
        order_index,
        status: SplitStatus::Proved {
            min_appearances: upper,
            witness: stage1_solution,
        },
    })
}

enum SearchOutcome {
    Found(Solution),
    Exhausted,
    TimedOut,
}

/// Depth-first search over sets of distinct patterns with positive integer
/// multiplicities, constrained to hit the waste budget exactly and the
/// quantity windows. Candidates are ordered by ascending waste (descending
/// fill efficiency), then lexicographically descending.
struct SetSearch<'a> {
    instance: &'a Instance,
    candidates: Vec<Pattern>,
    budget: u64,
    deadline: Option<Instant>,
    tick: u64,
    timed_out: bool,
}

struct Node {
    produced: Vec<u64>,
    waste_left: u64,
    chosen: Vec<(usize, u64)>,
    forbidden: Vec<bool>,
}

impl<'a> SetSearch<'a> {
    fn new(instance: &'a Instance, budget: u64, deadline: Option<Instant>) -> Result<Self> {
        let mut candidates =
            patterns::enumerate_patterns(instance, EnumerationMode::all_feasible().capped())?;
        candidates.retain(|p| p.waste() <= budget);
        candidates.sort_by(|a, b| a.waste().cmp(&b.waste()).then(b.counts().cmp(a.counts())));
        Ok(SetSearch {
            instance,
            candidates,
            budget,
            deadline,
            tick: 0,
            timed_out: false,
        })
    }

    fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    fn find_with_slots(&mut self, slots: usize) -> SearchOutcome {
        self.run(slots, None)
    }

    fn find_with_split_budget(&mut self, order: usize, budget: u64) -> SearchOutcome {
        self.run(usize::MAX, Some((order, budget)))
    }

    fn run(&mut self, slots: usize, split: Option<(usize, u64)>) -> SearchOutcome {
        self.timed_out = false;
        self.tick = 0;
        let mut node = Node {
            produced: vec![0; self.instance.order_count()],
            waste_left: self.budget,
            chosen: Vec::new(),
            forbidden: vec![false; self.candidates.len()],
        };
        let split_left = split.map(|(j, b)| (j, b));
        match self.dfs(&mut node, slots, split_left) {
            Some(solution) => SearchOutcome::Found(solution),
            None if self.timed_out => SearchOutcome::TimedOut,
            None => SearchOutcome::Exhausted,
        }
    }

    fn out_of_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        self.tick += 1;
        if self.tick % 256 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    /// Room left for order j given current production (None = unbounded).
    fn room(&self, produced: &[u64], j: usize) -> Option<u64> {
        self.instance.orders()[j]
            .max_qty()
            .bound()
            .map(|q| q - produced[j])
    }

    fn unmet(&self, produced: &[u64], j: usize) -> u64 {
        self.instance.orders()[j]
            .min_qty()
            .saturating_sub(produced[j])
    }

    /// Largest multiplicity with which candidate `idx` can be used now, or 0.
    fn max_mult(&self, node: &Node, idx: usize) -> u64 {
        let p = &self.candidates[idx];
        let mut hard = u64::MAX;
        let mut progress = 0u64;
        for j in 0..self.instance.order_count() {
            let a = p.count(j);
            if a == 0 {
                continue;
            }
            if let Some(room) = self.room(&node.produced, j) {
                hard = hard.min(room / a);
            }
            progress = progress.max(self.unmet(&node.produced, j).div_ceil(a));
        }
        if p.waste() > 0 {
            hard = hard.min(node.waste_left / p.waste());
        } else {
            // zero-waste patterns only help while they make demand progress
            hard = hard.min(progress);
        }
        hard
    }

    fn usable(&self, node: &Node, idx: usize) -> bool {
        !node.forbidden[idx]
            && self.candidates[idx].waste() <= node.waste_left
            && self.max_mult(node, idx) >= 1
    }

    fn feasible_width(&self, node: &Node, slots_left: usize) -> bool {
        let w = self.instance.master_width();
        let mut r_min: u64 = 0;
        let mut r_max: Option<u64> = Some(0);
        let mut unmet_width: u64 = 0;
        for j in 0..self.instance.order_count() {
            let size = self.instance.orders()[j].size();
            let unmet = self.unmet(&node.produced, j);
            r_min += unmet * size;
            if unmet > 0 {
                unmet_width += size;
            }
            match (r_max, self.room(&node.produced, j)) {
                (Some(acc), Some(room)) => r_max = Some(acc + room * size),
                _ => r_max = None,
            }
        }
        // every unmet order needs a slot's worth of width
        if slots_left != usize::MAX && unmet_width > slots_left as u64 * w {
            return false;
        }
        // future masters M satisfy M*W = future width + waste_left
        let m0 = (r_min + node.waste_left).div_ceil(w);
        if let Some(r_max) = r_max {
            if m0 * w > r_max + node.waste_left {
                return false;
            }
        }
        true
    }

    fn dfs(
        &mut self,
        node: &mut Node,
        slots_left: usize,
        split: Option<(usize, u64)>,
    ) -> Option<Solution> {
        if self.out_of_time() {
            return None;
        }
        let m = self.instance.order_count();
        let all_met = (0..m).all(|j| self.unmet(&node.produced, j) == 0);
        if all_met && node.waste_left == 0 {
            let entries = node
                .chosen
                .iter()
                .map(|&(idx, x)| (self.candidates[idx].clone(), x))
                .collect();
            return Some(Solution::new(entries).expect("chosen multiplicities are positive"));
        }
        if slots_left == 0 {
            return None;
        }
        if !self.feasible_width(node, slots_left) {
            return None;
        }
        // split budget exhausted but the split order still unmet
        if let Some((j, left)) = split {
            if left == 0 && self.unmet(&node.produced, j) > 0 {
                return None;
            }
        }

        // Pick the unmet order with the fewest usable candidates; with all
        // demands met, any remaining waste must still be burned.
        let mut target: Option<(usize, usize)> = None;
        for j in 0..m {
            if self.unmet(&node.produced, j) == 0 {
                continue;
            }
            let mut count = 0usize;
            for idx in 0..self.candidates.len() {
                if self.candidates[idx].contains_order(j) && self.usable(node, idx) {
                    if let Some((_, split_budget)) = split {
                        let (sj, left) = (split.unwrap().0, split_budget);
                        if sj == j && left == 0 && self.candidates[idx].contains_order(sj) {
                            continue;
                        }
                    }
                    count += 1;
                }
            }
            if count == 0 {
                return None;
            }
            if target.map(|(_, c)| count < c).unwrap_or(true) {
                target = Some((j, count));
            }
        }

        let candidate_ids: Vec<usize> = match target {
            Some((j, _)) => (0..self.candidates.len())
                .filter(|&idx| self.candidates[idx].contains_order(j) && self.usable(node, idx))
                .collect(),
            None => (0..self.candidates.len())
                .filter(|&idx| self.candidates[idx].waste() > 0 && self.usable(node, idx))
                .collect(),
        };

        let mut newly_forbidden = Vec::new();
        let mut found = None;
        'outer: for idx in candidate_ids {
            if self.out_of_time() {
                break;
            }
            let p = self.candidates[idx].clone();
            // Each pattern is used at most once per solution (its multiplicity
            // is branched on here); excluding it from the whole subtree also
            // removes mirror solutions that split the same multiplicity.
            node.forbidden[idx] = true;
            newly_forbidden.push(idx);
            let uses_split = match split {
                Some((j, left)) => {
                    if p.contains_order(j) {
                        if left == 0 {
                            // cannot afford another split pattern
                            continue;
                        }
                        true
                    } else {
                        false
                    }
                }
                None => false,
            };
            let child_split = match (split, uses_split) {
                (Some((j, left)), true) => Some((j, left - 1)),
                (s, _) => s,
            };
            let xmax = self.max_mult(node, idx);
            // If no remaining candidate can serve the target order, this
            // pattern must cover it entirely.
            let xmin = match target {
                Some((j, _)) => {
                    let others = (0..self.candidates.len())
                        .any(|k| self.candidates[k].contains_order(j) && self.usable(node, k));
                    if others {
                        1
                    } else {
                        self.unmet(&node.produced, j).div_ceil(p.count(j))
                    }
                }
                None => 1,
            };
            if xmin > xmax {
                continue;
            }
            for x in (xmin..=xmax).rev() {
                for j in 0..m {
                    node.produced[j] += p.count(j) * x;
                }
                node.waste_left -= p.waste() * x;
                node.chosen.push((idx, x));
                // usize::MAX means "no slot cap" and must stay that way
                let child_slots = if slots_left == usize::MAX {
                    usize::MAX
                } else {
                    slots_left - 1
                };
                let hit = self.dfs(node, child_slots, child_split);
                node.chosen.pop();
                node.waste_left += p.waste() * x;
                for j in 0..m {
                    node.produced[j] -= p.count(j) * x;
                }
                if hit.is_some() {
                    found = hit;
                    break 'outer;
                }
                if self.timed_out {
                    break 'outer;
                }
            }
        }
        for idx in newly_forbidden {
            node.forbidden[idx] = false;
        }
        found
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PatternClass {
    /// k <= m
    AtMostM,
    /// k = m + 1
    MPlusOne,
    /// k = m + 2
    MPlusTwo,
    /// k > m + 2: a counterexample to the (m+2)-pattern conjecture
    BeyondConjecture,
}

pub fn classify_pattern_count(order_count: usize, k: u64) -> PatternClass {
    let m = order_count as u64;
    if k <= m {
        PatternClass::AtMostM
    } else if k == m + 1 {
        PatternClass::MPlusOne
    } else if k == m + 2 {
        PatternClass::MPlusTwo
    } else {
        PatternClass::BeyondConjecture
    }
}

#[derive(Debug, Clone, Serialize)]
pub enum ScanResult {
    Classified {
        optimal_waste: u64,
        min_pattern_count: u64,
        class: PatternClass,
    },
    Timeout,
    Error(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub index: usize,
    pub order_count: usize,
    pub result: ScanResult,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn counterexamples(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| {
                matches!(
                    r.result,
                    ScanResult::Classified {
                        class: PatternClass::BeyondConjecture,
                        ..
                    }
                )
            })
            .map(|r| r.index)
            .collect()
    }
}

/// Runs `min_patterns` on each instance and classifies the pattern count
/// against the order count. Per-instance timeouts are recorded and the scan
/// continues.
pub fn conjecture_scan(instances: &[Instance], per_instance: Option<Duration>) -> ScanReport {
    let rows = instances
        .iter()
        .enumerate()
        .map(|(index, inst)| {
            let result = match min_patterns(inst, per_instance) {
                Ok(report) => match report.status {
                    PatminStatus::ProvedOptimal {
                        min_pattern_count, ..
                    } => ScanResult::Classified {
                        optimal_waste: report.optimal_waste,
                        min_pattern_count,
                        class: classify_pattern_count(inst.order_count(), min_pattern_count),
                    },
                    PatminStatus::LowerBoundOnly { .. } => ScanResult::Timeout,
                },
                Err(e) => ScanResult::Error(e.to_string()),
            };
            ScanRow {
                index,
                order_count: inst.order_count(),
                result,
            }
        })
        .collect();
    ScanReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_bound_examples() {
        let five = Instance::equality(
            1000,
            &[(300, 100), (250, 100), (200, 100), (150, 100), (90, 100)],
        )
        .unwrap();
        assert_eq!(pattern_lower_bound(&five), 1);

        let nine = Instance::equality(
            560,
            &[
                (109, 46),
                (114, 39),
                (115, 39),
                (125, 36),
                (132, 22),
                (140, 23),
                (142, 32),
                (148, 22),
                (200, 42),
            ],
        )
        .unwrap();
        assert_eq!(pattern_lower_bound(&nine), 3);

        let two = Instance::equality(1000, &[(300, 7), (250, 100)]).unwrap();
        assert_eq!(pattern_lower_bound(&two), 1);
    }

    #[test]
    fn single_order_needs_two_patterns() {
        let inst = Instance::equality(10, &[(3, 7)]).unwrap();
        let report = min_patterns(&inst, None).unwrap();
        assert_eq!(report.min_pattern_count(), Some(2));
        let witness = report.witness().unwrap();
        assert!(witness.validate(&inst).unwrap().feasible);
        assert_eq!(witness.total_waste(), report.optimal_waste);
    }

    #[test]
    fn m_plus_one_instance_needs_three_patterns() {
        let inst = Instance::equality(1000, &[(300, 7), (250, 100)]).unwrap();
        let report = min_patterns(&inst, None).unwrap();
        assert_eq!(report.optimal_waste, 900);
        assert_eq!(report.min_pattern_count(), Some(3));
        let witness = report.witness().unwrap();
        assert!(witness.validate(&inst).unwrap().feasible);
        assert_eq!(witness.total_waste(), 900);
    }

    #[test]
    fn five_order_zero_waste_minimum() {
        // The zero-waste optimum (99 masters) needs four distinct patterns;
        // the one-of-each pattern is not optimal here because full-width
        // combinations of the sizes exist.
        let inst = Instance::equality(
            1000,
            &[(300, 100), (250, 100), (200, 100), (150, 100), (90, 100)],
        )
        .unwrap();
        let report = min_patterns(&inst, None).unwrap();
        assert_eq!(report.optimal_waste, 0);
        assert_eq!(report.min_pattern_count(), Some(4));
        let witness = report.witness().unwrap();
        assert!(witness.validate(&inst).unwrap().feasible);
        assert_eq!(witness.total_waste(), 0);
    }

    #[test]
    fn split_of_single_order() {
        let inst = Instance::equality(10, &[(3, 7)]).unwrap();
        let report = min_split_for_order(&inst, 0, None).unwrap();
        assert_eq!(report.min_appearances(), Some(2));
    }

    #[test]
    fn five_order_min_splits() {
        // Among zero-waste solutions every order except the 250 can be
        // confined to a single pattern; the 250 must split in two.
        let inst = Instance::equality(
            1000,
            &[(300, 100), (250, 100), (200, 100), (150, 100), (90, 100)],
        )
        .unwrap();
        let expected = [1u64, 2, 1, 1, 1];
        for (j, want) in expected.iter().enumerate() {
            let report = min_split_for_order(&inst, j, None).unwrap();
            assert_eq!(report.min_appearances(), Some(*want), "order {j}");
        }
    }

    #[test]
    fn order_index_checked() {
        let inst = Instance::equality(10, &[(3, 7)]).unwrap();
        assert!(matches!(
            min_split_for_order(&inst, 5, None),
            Err(Error::OrderIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn classification_rules() {
        assert_eq!(classify_pattern_count(5, 1), PatternClass::AtMostM);
        assert_eq!(classify_pattern_count(2, 3), PatternClass::MPlusOne);
        assert_eq!(classify_pattern_count(9, 11), PatternClass::MPlusTwo);
        assert_eq!(classify_pattern_count(2, 5), PatternClass::BeyondConjecture);
    }
}
