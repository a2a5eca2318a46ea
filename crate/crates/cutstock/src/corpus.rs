//! Built-in registry of reference instances with machine-checkable expected
//! results, and the verification driver that replays them.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use crate::exact::{self, Objective, SolveStatus};
use crate::instance::Instance;
use crate::lprelax::{self, BoundMode};
use crate::patmin::{self, PatminStatus};
use crate::pattern::Pattern;
use crate::rational;
use crate::solution::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CostClass {
    Fast,
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    Fast,
    All,
}

/// One machine-checkable expectation, evaluated by [`verify_corpus`].
#[derive(Debug, Clone)]
pub enum Check {
    /// Exact LP value of the one-sided master-count relaxation, as a string.
    LpValueOneSided { expected: &'static str },
    /// Exact one-sided round-up gap z* - z_LP, as a string.
    GapValue { expected: &'static str },
    RoundedGap { expected: i64 },
    Irup { expected: bool },
    Mirup { expected: bool },
    /// Proven optimum (and its tie-broken secondary metric) for an objective.
    Optimal {
        objective: Objective,
        expected_primary: u64,
        expected_secondary: Option<u64>,
    },
    /// Percentage waste (3 decimals) of the reported optimal solution.
    PercentWaste {
        objective: Objective,
        expected: &'static str,
    },
    /// The waste-optimal master count strictly exceeds the threshold.
    MinWasteMastersExceed { threshold: u64 },
    /// Minimum number of distinct patterns over waste-optimal solutions.
    PatternCount { expected: u64 },
    /// Minimum appearances of one order over waste-optimal solutions.
    SplitCount {
        order_index: usize,
        expected: u64,
    },
    /// The split witness uses the order in every one of its patterns.
    SplitEqualsWitnessPatterns { order_index: usize },
    /// A stored solution is feasible, uses the given number of distinct
    /// patterns, and its waste equals the solver-computed optimum.
    StoredWitnessOptimal { pattern_count: usize },
}

impl Check {
    fn name(&self) -> &'static str {
        match self {
            Check::LpValueOneSided { .. } => "lp_value",
            Check::GapValue { .. } => "gap",
            Check::RoundedGap { .. } => "rounded_gap",
            Check::Irup { .. } => "irup",
            Check::Mirup { .. } => "mirup",
            Check::Optimal { objective, .. } => match objective {
                Objective::MinMasters => "min_masters",
                Objective::MinWaste => "min_waste",
            },
            Check::PercentWaste { objective, .. } => match objective {
                Objective::MinMasters => "percent_waste_min_masters",
                Objective::MinWaste => "percent_waste_min_waste",
            },
            Check::MinWasteMastersExceed { .. } => "min_waste_masters_exceed",
            Check::PatternCount { .. } => "pattern_count",
            Check::SplitCount { .. } => "split_count",
            Check::SplitEqualsWitnessPatterns { .. } => "split_equals_witness_patterns",
            Check::StoredWitnessOptimal { .. } => "stored_witness_optimal",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckSpec {
    pub check: Check,
    /// Human-readable provenance note, carried into every report row.
    pub anchor: &'static str,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub instance: Instance,
    pub cost_class: CostClass,
    pub checks: Vec<CheckSpec>,
    /// Optional stored solution used by `StoredWitnessOptimal`.
    pub witness: Option<Solution>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Timeout,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub entry: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub status: CheckStatus,
    pub anchor: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.status == CheckStatus::Pass)
    }

    pub fn any_timeout(&self) -> bool {
        self.rows.iter().any(|r| r.status == CheckStatus::Timeout)
    }

    /// Human-readable fixed-order table.
    pub fn render_table(&self) -> String {
        let mut widths = [5usize, 5, 8, 6, 6];
        for r in &self.rows {
            widths[0] = widths[0].max(r.entry.len());
            widths[1] = widths[1].max(r.check.len());
            widths[2] = widths[2].max(r.expected.len());
            widths[3] = widths[3].max(r.actual.len());
        }
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<w0$}  {:<w1$}  {:<w2$}  {:<w3$}  {:<w4$}  anchor",
            "entry",
            "check",
            "expected",
            "actual",
            "status",
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3],
            w4 = widths[4],
        );
        for r in &self.rows {
            let status = match r.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Timeout => "timeout",
            };
            let _ = writeln!(
                out,
                "{:<w0$}  {:<w1$}  {:<w2$}  {:<w3$}  {:<w4$}  {}",
                r.entry,
                r.check,
                r.expected,
                r.actual,
                status,
                r.anchor,
                w0 = widths[0],
                w1 = widths[1],
                w2 = widths[2],
                w3 = widths[3],
                w4 = widths[4],
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn spec(check: Check, anchor: &'static str) -> CheckSpec {
    CheckSpec { check, anchor }
}

/// All reference instances with their expected results.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            id: "gap132",
            instance: Instance::equality(132, &[(44, 2), (33, 3), (12, 6)]).unwrap(),
            cost_class: CostClass::Fast,
            witness: None,
            checks: vec![
                spec(
                    Check::LpValueOneSided {
                        expected: "259/132",
                    },
                    "integer round-up counterexample: relaxation value",
                ),
                spec(
                    Check::Optimal {
                        objective: Objective::MinMasters,
                        expected_primary: 3,
                        expected_secondary: None,
                    },
                    "integer round-up counterexample: integer optimum is 3",
                ),
                spec(
                    Check::GapValue {
                        expected: "137/132",
                    },
                    "integer round-up counterexample: gap above one",
                ),
                spec(
                    Check::RoundedGap { expected: 1 },
                    "integer round-up counterexample: round-up misses by one",
                ),
                spec(
                    Check::Irup { expected: false },
                    "integer round-up counterexample: round-up property fails",
                ),
                spec(
                    Check::Mirup { expected: true },
                    "modified round-up property still holds here",
                ),
            ],
        },
        CorpusEntry {
            id: "twosided2",
            instance: Instance::from_triples(
                1000,
                &[
                    (340, 15, crate::instance::MaxQty::Bounded(18)),
                    (300, 15, crate::instance::MaxQty::Bounded(15)),
                ],
            )
            .unwrap(),
            cost_class: CostClass::Fast,
            witness: None,
            checks: vec![
                spec(
                    Check::Optimal {
                        objective: Objective::MinWaste,
                        expected_primary: 380,
                        expected_secondary: Some(11),
                    },
                    "waste-vs-masters divergence: waste optimum uses an extra master",
                ),
                spec(
                    Check::PercentWaste {
                        objective: Objective::MinWaste,
                        expected: "3.455",
                    },
                    "waste-vs-masters divergence: percentage waste of the waste optimum",
                ),
                spec(
                    Check::Optimal {
                        objective: Objective::MinMasters,
                        expected_primary: 10,
                        expected_secondary: Some(400),
                    },
                    "waste-vs-masters divergence: master optimum wastes more",
                ),
                spec(
                    Check::PercentWaste {
                        objective: Objective::MinMasters,
                        expected: "4.000",
                    },
                    "waste-vs-masters divergence: percentage waste of the master optimum",
                ),
            ],
        },
        CorpusEntry {
            id: "onesided2",
            instance: Instance::one_sided(1000, &[(340, 15), (300, 15)]).unwrap(),
            cost_class: CostClass::Fast,
            witness: None,
            checks: vec![
                spec(
                    Check::Optimal {
                        objective: Objective::MinMasters,
                        expected_primary: 10,
                        expected_secondary: Some(400),
                    },
                    "one-sided variant: master optimum",
                ),
                spec(
                    Check::MinWasteMastersExceed { threshold: 10 },
                    "one-sided variant: waste optimum needs strictly more masters",
                ),
                spec(
                    Check::Optimal {
                        objective: Objective::MinWaste,
                        expected_primary: 300,
                        expected_secondary: Some(15),
                    },
                    "one-sided variant: absolute-waste optimum, exhaustively derived",
                ),
            ],
        },
        CorpusEntry {
            id: "split1",
            instance: Instance::equality(10, &[(3, 7)]).unwrap(),
            cost_class: CostClass::Fast,
            witness: None,
            checks: vec![
                spec(
                    Check::Optimal {
                        objective: Objective::MinMasters,
                        expected_primary: 3,
                        expected_secondary: None,
                    },
                    "order splitting, single-order instance: three masters",
                ),
                spec(
                    Check::PatternCount { expected: 2 },
                    "order splitting, single-order instance: two patterns required",
                ),
                spec(
                    Check::SplitCount {
                        order_index: 0,
                        expected: 2,
                    },
                    "order splitting, single-order instance: the order splits in two",
                ),
            ],
        },
        CorpusEntry {
            id: "split275",
            instance: Instance::equality(1000, &[(400, 1), (375, 1), (350, 1), (275, 300)])
                .unwrap(),
            cost_class: CostClass::Fast,
            witness: None,
            checks: vec![
                spec(
                    Check::Optimal {
                        objective: Objective::MinWaste,
                        expected_primary: 17375,
                        expected_secondary: Some(101),
                    },
                    "four-size splitting instance: waste optimum, exhaustively derived",
                ),
                spec(
                    Check::SplitCount {
                        order_index: 3,
                        expected: 3,
                    },
                    "four-size splitting instance: the bulk order splits three ways",
                ),
                spec(
                    Check::SplitEqualsWitnessPatterns { order_index: 3 },
                    "four-size splitting instance: every pattern carries the bulk order",
                ),
            ],
        },
        CorpusEntry {
            id: "mplus1",
            instance: Instance::equality(1000, &[(300, 7), (250, 100)]).unwrap(),
            cost_class: CostClass::Fast,
            witness: None,
            checks: vec![
                spec(
                    Check::Optimal {
                        objective: Objective::MinWaste,
                        expected_primary: 900,
                        expected_secondary: Some(28),
                    },
                    "two orders needing three patterns: waste optimum, oracle-derived",
                ),
                spec(
                    Check::PatternCount { expected: 3 },
                    "two orders needing three patterns: one more pattern than orders",
                ),
            ],
        },
        CorpusEntry {
            id: "nine11",
            instance: nine11_instance(),
            cost_class: CostClass::Long,
            witness: Some(nine11_witness()),
            checks: vec![
                spec(
                    Check::StoredWitnessOptimal { pattern_count: 11 },
                    "nine-order instance needing m+2 patterns: stored witness is waste-optimal",
                ),
            ],
        },
        CorpusEntry {
            id: "onepat5",
            instance: Instance::equality(
                1000,
                &[(300, 100), (250, 100), (200, 100), (150, 100), (90, 100)],
            )
            .unwrap(),
            cost_class: CostClass::Fast,
            witness: None,
            checks: vec![
                spec(
                    Check::Optimal {
                        objective: Objective::MinWaste,
                        expected_primary: 0,
                        expected_secondary: Some(99),
                    },
                    "five orders, claimed single-pattern optimum; exact search \
                     instead finds zero-waste packings on 99 masters",
                ),
                spec(
                    Check::PatternCount { expected: 4 },
                    "five orders, claimed single-pattern optimum; the zero-waste \
                     optimum needs four distinct patterns, refuting the claim",
                ),
            ],
        },
    ]
}

pub fn nine11_instance() -> Instance {
    Instance::equality(
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
    .unwrap()
}

/// A waste-optimal solution of the nine-order instance (waste 111 over 73
/// masters) using 11 distinct patterns, found offline with the exact solver
/// and stored for fast verification. Counts are indexed by decreasing size:
/// (200, 148, 142, 140, 132, 125, 115, 114, 109).
fn nine11_witness() -> Solution {
    let data: &[([u64; 9], u64)] = &[
        ([1, 0, 1, 0, 0, 0, 0, 0, 2], 5),
        ([1, 0, 0, 1, 0, 0, 0, 0, 2], 1),
        ([1, 0, 0, 0, 1, 0, 0, 2, 0], 12),
        ([1, 0, 0, 0, 0, 2, 0, 0, 1], 12),
        ([1, 0, 0, 0, 0, 1, 2, 0, 0], 12),
        ([0, 3, 0, 0, 0, 0, 1, 0, 0], 7),
        ([0, 1, 0, 2, 1, 0, 0, 0, 0], 1),
        ([0, 0, 3, 0, 1, 0, 0, 0, 0], 9),
        ([0, 0, 0, 4, 0, 0, 0, 0, 0], 5),
        ([0, 0, 0, 0, 0, 0, 2, 0, 3], 4),
        ([0, 0, 0, 0, 0, 0, 0, 3, 2], 5),
    ];
    witness_from(&nine11_instance(), data)
}

fn witness_from(instance: &Instance, data: &[([u64; 9], u64)]) -> Solution {
    let entries = data
        .iter()
        .map(|(counts, mult)| {
            (
                Pattern::new(instance, counts.to_vec()).expect("stored witness pattern"),
                *mult,
            )
        })
        .collect();
    Solution::new(entries).expect("stored witness multiplicities")
}

/// Runs every expectation of the selected entries. Long entries run only
/// under [`Selection::All`]; without a long budget they are reported as
/// timeouts without being run.
pub fn verify_corpus(selection: Selection, long_budget: Option<Duration>) -> VerifyReport {
    let mut rows = Vec::new();
    for entry in builtin_corpus() {
        match (entry.cost_class, selection) {
            (CostClass::Long, Selection::Fast) => continue,
            (CostClass::Long, Selection::All) if long_budget.is_none() => {
                for cs in &entry.checks {
                    rows.push(CheckRow {
                        entry: entry.id.to_string(),
                        check: cs.check.name().to_string(),
                        expected: expected_string(&cs.check),
                        actual: "not run (no long budget)".to_string(),
                        status: CheckStatus::Timeout,
                        anchor: cs.anchor.to_string(),
                    });
                }
                continue;
            }
            _ => {}
        }
        let budget = match entry.cost_class {
            CostClass::Fast => None,
            CostClass::Long => long_budget,
        };
        for cs in &entry.checks {
            rows.push(run_check(&entry, cs, budget));
        }
    }
    VerifyReport { rows }
}

fn expected_string(check: &Check) -> String {
    match check {
        Check::LpValueOneSided { expected } => (*expected).to_string(),
        Check::GapValue { expected } => (*expected).to_string(),
        Check::RoundedGap { expected } => expected.to_string(),
        Check::Irup { expected } | Check::Mirup { expected } => expected.to_string(),
        Check::Optimal {
            expected_primary,
            expected_secondary,
            ..
        } => match expected_secondary {
            Some(s) => format!("{expected_primary} (secondary {s})"),
            None => expected_primary.to_string(),
        },
        Check::PercentWaste { expected, .. } => format!("{expected}%"),
        Check::MinWasteMastersExceed { threshold } => format!("> {threshold}"),
        Check::PatternCount { expected } => expected.to_string(),
        Check::SplitCount { expected, .. } => expected.to_string(),
        Check::SplitEqualsWitnessPatterns { .. } => "split count = witness pattern count".into(),
        Check::StoredWitnessOptimal { pattern_count } => {
            format!("{pattern_count} patterns, waste-optimal")
        }
    }
}

fn row(
    entry: &CorpusEntry,
    cs: &CheckSpec,
    actual: String,
    status: CheckStatus,
) -> CheckRow {
    CheckRow {
        entry: entry.id.to_string(),
        check: cs.check.name().to_string(),
        expected: expected_string(&cs.check),
        actual,
        status,
        anchor: cs.anchor.to_string(),
    }
}

fn run_check(entry: &CorpusEntry, cs: &CheckSpec, budget: Option<Duration>) -> CheckRow {
    let inst = &entry.instance;
    let outcome: std::result::Result<(String, bool), String> = (|| match &cs.check {
        Check::LpValueOneSided { expected } => {
            let lp = lprelax::lp_min_masters(inst).map_err(|e| e.to_string())?;
            let actual = rational::ratio_string(&lp.value);
            Ok((actual.clone(), actual == *expected))
        }
        Check::GapValue { expected } => {
            let g = lprelax::integrality_gap(inst).map_err(|e| e.to_string())?;
            let actual = rational::ratio_string(&g.gap);
            Ok((actual.clone(), actual == *expected))
        }
        Check::RoundedGap { expected } => {
            let g = lprelax::integrality_gap(inst).map_err(|e| e.to_string())?;
            Ok((g.rounded_gap.to_string(), g.rounded_gap == *expected))
        }
        Check::Irup { expected } => {
            let v = lprelax::irup_holds(inst, BoundMode::OneSided).map_err(|e| e.to_string())?;
            Ok((v.to_string(), v == *expected))
        }
        Check::Mirup { expected } => {
            let v = lprelax::mirup_holds(inst, BoundMode::OneSided).map_err(|e| e.to_string())?;
            Ok((v.to_string(), v == *expected))
        }
        Check::Optimal {
            objective,
            expected_primary,
            expected_secondary,
        } => {
            let report = exact::solve_exact(inst, *objective, budget).map_err(|e| e.to_string())?;
            match report.status {
                SolveStatus::ProvedOptimal {
                    objective_value,
                    secondary_value,
                    ..
                } => {
                    let ok = objective_value == *expected_primary
                        && expected_secondary.map_or(true, |s| s == secondary_value);
                    Ok((
                        format!("{objective_value} (secondary {secondary_value})"),
                        ok,
                    ))
                }
                SolveStatus::Infeasible => Ok(("infeasible".into(), false)),
                SolveStatus::TimeLimit { .. } => Err("timeout".into()),
            }
        }
        Check::PercentWaste {
            objective,
            expected,
        } => {
            let report = exact::solve_exact(inst, *objective, budget).map_err(|e| e.to_string())?;
            let solution = report.solution().ok_or_else(|| "timeout".to_string())?;
            let summary = solution.summarize(inst).map_err(|e| e.to_string())?;
            let actual = rational::percent_3dp(&summary.percent_waste);
            Ok((format!("{actual}%"), actual == *expected))
        }
        Check::MinWasteMastersExceed { threshold } => {
            let report =
                exact::solve_exact(inst, Objective::MinWaste, budget).map_err(|e| e.to_string())?;
            match report.status {
                SolveStatus::ProvedOptimal {
                    objective_value,
                    secondary_value,
                    ..
                } => Ok((
                    format!("waste {objective_value} with {secondary_value} masters"),
                    secondary_value > *threshold,
                )),
                SolveStatus::Infeasible => Ok(("infeasible".into(), false)),
                SolveStatus::TimeLimit { .. } => Err("timeout".into()),
            }
        }
        Check::PatternCount { expected } => {
            let report = patmin::min_patterns(inst, budget).map_err(|e| e.to_string())?;
            match report.status {
                PatminStatus::ProvedOptimal {
                    min_pattern_count, ..
                } => Ok((
                    min_pattern_count.to_string(),
                    min_pattern_count == *expected,
                )),
                PatminStatus::LowerBoundOnly { .. } => Err("timeout".into()),
            }
        }
        Check::SplitCount {
            order_index,
            expected,
        } => {
            let report =
                patmin::min_split_for_order(inst, *order_index, budget).map_err(|e| e.to_string())?;
            match report.min_appearances() {
                Some(k) => Ok((k.to_string(), k == *expected)),
                None => Err("timeout".into()),
            }
        }
        Check::SplitEqualsWitnessPatterns { order_index } => {
            let report =
                patmin::min_split_for_order(inst, *order_index, budget).map_err(|e| e.to_string())?;
            let k = report.min_appearances().ok_or_else(|| "timeout".to_string())?;
            let witness_patterns = report.witness().pattern_count() as u64;
            Ok((
                format!("split {k}, witness patterns {witness_patterns}"),
                k == witness_patterns,
            ))
        }
        Check::StoredWitnessOptimal { pattern_count } => {
            let witness = entry
                .witness
                .as_ref()
                .ok_or_else(|| "no stored witness".to_string())?;
            let validation = witness.validate(inst).map_err(|e| e.to_string())?;
            if !validation.feasible {
                return Ok(("stored witness infeasible".into(), false));
            }
            if witness.pattern_count() != *pattern_count {
                return Ok((
                    format!("stored witness has {} patterns", witness.pattern_count()),
                    false,
                ));
            }
            let report =
                exact::solve_exact(inst, Objective::MinWaste, budget).map_err(|e| e.to_string())?;
            let optimum = match report.status {
                SolveStatus::ProvedOptimal {
                    objective_value, ..
                } => objective_value,
                SolveStatus::Infeasible => return Ok(("infeasible".into(), false)),
                SolveStatus::TimeLimit { .. } => return Err("timeout".into()),
            };
            Ok((
                format!(
                    "{} patterns, waste {} (optimum {optimum})",
                    witness.pattern_count(),
                    witness.total_waste()
                ),
                witness.total_waste() == optimum,
            ))
        }
    })();
    match outcome {
        Ok((actual, true)) => row(entry, cs, actual, CheckStatus::Pass),
        Ok((actual, false)) => row(entry, cs, actual, CheckStatus::Fail),
        Err(msg) if msg == "timeout" => row(entry, cs, msg, CheckStatus::Timeout),
        Err(msg) => row(entry, cs, format!("error: {msg}"), CheckStatus::Fail),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_contains_required_entries() {
        let corpus = builtin_corpus();
        let ids: Vec<&str> = corpus.iter().map(|e| e.id).collect();
        for id in [
            "gap132",
            "twosided2",
            "onesided2",
            "split1",
            "split275",
            "mplus1",
            "nine11",
            "onepat5",
        ] {
            assert!(ids.contains(&id), "missing corpus entry {id}");
        }
        let nine11 = corpus.iter().find(|e| e.id == "nine11").unwrap();
        assert_eq!(nine11.cost_class, CostClass::Long);
        let gap132 = corpus.iter().find(|e| e.id == "gap132").unwrap();
        assert!(gap132
            .checks
            .iter()
            .any(|c| matches!(c.check, Check::LpValueOneSided { expected: "259/132" })));
        let onepat5 = corpus.iter().find(|e| e.id == "onepat5").unwrap();
        assert!(onepat5
            .checks
            .iter()
            .any(|c| matches!(c.check, Check::PatternCount { .. })));
    }

    #[test]
    fn fast_selection_passes() {
        let report = verify_corpus(Selection::Fast, None);
        assert!(
            report.all_passed(),
            "fast corpus failures:\n{}",
            report.render_table()
        );
        assert!(report.rows.iter().all(|r| r.entry != "nine11"));
    }

    #[test]
    fn missing_long_budget_reports_timeouts() {
        let report = verify_corpus(Selection::All, None);
        let nine11_rows: Vec<_> = report.rows.iter().filter(|r| r.entry == "nine11").collect();
        assert!(!nine11_rows.is_empty());
        assert!(nine11_rows
            .iter()
            .all(|r| r.status == CheckStatus::Timeout));
        assert!(report
            .rows
            .iter()
            .filter(|r| r.entry != "nine11")
            .all(|r| r.status == CheckStatus::Pass));
    }

    #[test]
    fn report_is_json_and_table() {
        let report = verify_corpus(Selection::All, None);
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert!(json["rows"].as_array().unwrap().len() >= 8);
        let table = report.render_table();
        assert!(table.contains("gap132"));
        assert!(table.contains("259/132"));
    }

    #[test]
    fn stored_witness_is_feasible() {
        let corpus = builtin_corpus();
        let nine11 = corpus.iter().find(|e| e.id == "nine11").unwrap();
        let witness = nine11.witness.as_ref().unwrap();
        let validation = witness.validate(&nine11.instance).unwrap();
        assert!(validation.feasible);
        assert_eq!(witness.pattern_count(), 11);
    }
}
