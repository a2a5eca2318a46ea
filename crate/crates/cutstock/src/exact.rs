//! Proven-optimal integer solutions for the general formulation, plus an
//! independent exhaustive oracle that never touches the LP machinery.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::pattern::Pattern;
use crate::patterns::{self, EnumerationMode};
use crate::simplex::{solve_lp, Constraint, LpOutcome, Relation};
use crate::solution::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Objective {
    /// Minimise the number of master items (unit pattern cost).
    MinMasters,
    /// Minimise total trim waste (pattern cost = pattern waste).
    MinWaste,
}

impl Objective {
    pub fn other(self) -> Objective {
        match self {
            Objective::MinMasters => Objective::MinWaste,
            Objective::MinWaste => Objective::MinMasters,
        }
    }
}

/// Extra headroom on the master-count cap used for waste minimisation with
/// open-ended upper bounds.
pub const MASTERS_CAP_SLACK: u64 = 10;

#[derive(Debug, Clone, Serialize)]
pub enum SolveStatus {
    ProvedOptimal {
        objective_value: u64,
        /// Value of the other metric on the reported solution.
        secondary_value: u64,
        solution: Solution,
    },
    Infeasible,
    TimeLimit {
        best_bound: u64,
        incumbent: Option<(u64, Solution)>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub objective: Objective,
    pub status: SolveStatus,
    /// Master-count cap applied during waste minimisation, when any.
    pub masters_cap: Option<u64>,
}

impl SolveReport {
    pub fn optimal_value(&self) -> Option<u64> {
        match &self.status {
            SolveStatus::ProvedOptimal {
                objective_value, ..
            } => Some(*objective_value),
            _ => None,
        }
    }

    pub fn solution(&self) -> Option<&Solution> {
        match &self.status {
            SolveStatus::ProvedOptimal { solution, .. } => Some(solution),
            SolveStatus::TimeLimit {
                incumbent: Some((_, s)),
                ..
            } => Some(s),
            _ => None,
        }
    }

    pub fn secondary_value(&self) -> Option<u64> {
        match &self.status {
            SolveStatus::ProvedOptimal {
                secondary_value, ..
            } => Some(*secondary_value),
            _ => None,
        }
    }
}

fn pattern_cost(p: &Pattern, objective: Objective) -> u64 {
    match objective {
        Objective::MinMasters => 1,
        Objective::MinWaste => p.waste(),
    }
}

fn masters_cap_for(instance: &Instance) -> u64 {
    let w = instance.master_width();
    let demand_width = instance.total_min_width();
    demand_width.div_ceil(w) + instance.order_count() as u64 + MASTERS_CAP_SLACK
}

/// Branch-and-bound over the enumerated pattern pool with the exact LP
/// relaxation as bound. Ties among optima are broken by the secondary metric,
/// then by canonical solution order.
pub fn solve_exact(
    instance: &Instance,
    objective: Objective,
    time_limit: Option<Duration>,
) -> Result<SolveReport> {
    let deadline = time_limit.map(|d| Instant::now() + d);

    // Equality-constrained waste minimisation is master-count minimisation:
    // production is fixed, so waste = masters * W - sum q_j w_j.
    if objective == Objective::MinWaste && instance.is_equality_constrained() {
        let inner = solve_exact(instance, Objective::MinMasters, time_limit)?;
        let w = instance.master_width();
        let fixed = instance.total_min_width();
        let status = match inner.status {
            SolveStatus::ProvedOptimal {
                objective_value,
                solution,
                ..
            } => SolveStatus::ProvedOptimal {
                objective_value: objective_value * w - fixed,
                secondary_value: objective_value,
                solution,
            },
            SolveStatus::Infeasible => SolveStatus::Infeasible,
            SolveStatus::TimeLimit {
                best_bound,
                incumbent,
            } => SolveStatus::TimeLimit {
                best_bound: (best_bound * w).saturating_sub(fixed),
                incumbent: incumbent.map(|(m, s)| (m * w - fixed, s)),
            },
        };
        return Ok(SolveReport {
            objective,
            status,
            masters_cap: None,
        });
    }

    let pool = patterns::enumerate_patterns(instance, EnumerationMode::all_feasible().capped())?;
    let costs1: Vec<u64> = pool.iter().map(|p| pattern_cost(p, objective)).collect();
    let costs2: Vec<u64> = pool
        .iter()
        .map(|p| pattern_cost(p, objective.other()))
        .collect();

    let mut base_rows = demand_rows(instance, &pool);
    let masters_cap = if objective == Objective::MinWaste {
        let cap = masters_cap_for(instance);
        base_rows.push(Constraint::new(
            vec![BigRational::from_integer(1.into()); pool.len()],
            Relation::Le,
            BigRational::from_integer(cap.into()),
        ));
        Some(cap)
    } else {
        None
    };

    let mut search = Bnb::new(instance, &pool, &costs1, base_rows.clone(), deadline);
    search.run();

    let Some((z1, x1)) = search.incumbent.clone() else {
        if search.timed_out {
            return Ok(SolveReport {
                objective,
                status: SolveStatus::TimeLimit {
                    best_bound: search.root_bound.unwrap_or(0),
                    incumbent: None,
                },
                masters_cap,
            });
        }
        return Ok(SolveReport {
            objective,
            status: SolveStatus::Infeasible,
            masters_cap,
        });
    };

    if search.timed_out {
        let solution = build_solution(&pool, &x1).canonicalize();
        return Ok(SolveReport {
            objective,
            status: SolveStatus::TimeLimit {
                best_bound: search.root_bound.unwrap_or(0).min(z1),
                incumbent: Some((z1, solution)),
            },
            masters_cap,
        });
    }

    // Second pass: among solutions attaining z1, minimise the secondary
    // metric. Skipped when equality constraints pin the secondary anyway.
    let x_final = if instance.is_equality_constrained() {
        x1.clone()
    } else {
        let mut rows = base_rows;
        rows.push(Constraint::new(
            costs1
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
            Relation::Eq,
            BigRational::from_integer(z1.into()),
        ));
        let mut second = Bnb::new(instance, &pool, &costs2, rows, deadline);
        second.incumbent = Some((value_of(&costs2, &x1), x1.clone()));
        second.run();
        second.incumbent.map(|(_, x)| x).unwrap_or(x1)
    };

    let secondary_value = value_of(&costs2, &x_final);
    let solution = build_solution(&pool, &x_final).canonicalize();
    debug_assert!(solution.validate(instance)?.feasible);
    Ok(SolveReport {
        objective,
        status: SolveStatus::ProvedOptimal {
            objective_value: z1,
            secondary_value,
            solution,
        },
        masters_cap,
    })
}

fn demand_rows(instance: &Instance, pool: &[Pattern]) -> Vec<Constraint> {
    let mut rows = Vec::new();
    for (j, order) in instance.orders().iter().enumerate() {
        let coeffs: Vec<BigRational> = pool
            .iter()
            .map(|p| BigRational::from_integer(p.count(j).into()))
            .collect();
        match order.max_qty().bound() {
            Some(q_max) if q_max == order.min_qty() => {
                rows.push(Constraint::new(
                    coeffs,
                    Relation::Eq,
                    BigRational::from_integer(order.min_qty().into()),
                ));
            }
            Some(q_max) => {
                rows.push(Constraint::new(
                    coeffs.clone(),
                    Relation::Ge,
                    BigRational::from_integer(order.min_qty().into()),
                ));
                rows.push(Constraint::new(
                    coeffs,
                    Relation::Le,
                    BigRational::from_integer(q_max.into()),
                ));
            }
            None => {
                rows.push(Constraint::new(
                    coeffs,
                    Relation::Ge,
                    BigRational::from_integer(order.min_qty().into()),
                ));
            }
        }
    }
    rows
}

fn value_of(costs: &[u64], x: &[u64]) -> u64 {
    costs.iter().zip(x).map(|(&c, &v)| c * v).sum()
}

fn build_solution(pool: &[Pattern], x: &[u64]) -> Solution {
    let entries = pool
        .iter()
        .zip(x)
        .filter(|&(_, &v)| v > 0)
        .map(|(p, &v)| (p.clone(), v))
        .collect();
    Solution::new(entries).expect("solver counts are positive")
}

#[derive(Clone, Copy)]
enum Branch {
    Lower(usize, u64),
    Upper(usize, u64),
}

struct Bnb<'a> {
    instance: &'a Instance,
    pool: &'a [Pattern],
    costs: &'a [u64],
    base_rows: Vec<Constraint>,
    index_of: HashMap<Vec<u64>, usize>,
    incumbent: Option<(u64, Vec<u64>)>,
    root_bound: Option<u64>,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl<'a> Bnb<'a> {
    fn new(
        instance: &'a Instance,
        pool: &'a [Pattern],
        costs: &'a [u64],
        base_rows: Vec<Constraint>,
        deadline: Option<Instant>,
    ) -> Self {
        let index_of = pool
            .iter()
            .enumerate()
            .map(|(i, p)| (p.counts().to_vec(), i))
            .collect();
        Bnb {
            instance,
            pool,
            costs,
            base_rows,
            index_of,
            incumbent: None,
            root_bound: None,
            deadline,
            timed_out: false,
        }
    }

    fn run(&mut self) {
        let mut branches = Vec::new();
        self.dfs(&mut branches);
    }

    fn out_of_time(&self) -> bool {
        self.deadline.map(|d| Instant::now() >= d).unwrap_or(false)
    }

    fn rows_with(&self, branches: &[Branch]) -> Vec<Constraint> {
        let mut rows = self.base_rows.clone();
        let n = self.pool.len();
        for b in branches {
            let (k, rel, v) = match *b {
                Branch::Lower(k, v) => (k, Relation::Ge, v),
                Branch::Upper(k, v) => (k, Relation::Le, v),
            };
            let mut coeffs = vec![BigRational::zero(); n];
            coeffs[k] = BigRational::from_integer(1.into());
            rows.push(Constraint::new(
                coeffs,
                rel,
                BigRational::from_integer(v.into()),
            ));
        }
        rows
    }

    fn dfs(&mut self, branches: &mut Vec<Branch>) {
        if self.timed_out || self.out_of_time() {
            self.timed_out = true;
            return;
        }
        let objective: Vec<BigRational> = self
            .costs
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let rows = self.rows_with(branches);
        let sol = match solve_lp(&objective, &rows) {
            LpOutcome::Optimal(s) => s,
            LpOutcome::Infeasible => return,
            LpOutcome::Unbounded => unreachable!("nonnegative costs bound the LP below"),
        };
        let bound = ceil_u64(&sol.value);
        if branches.is_empty() {
            self.root_bound = Some(bound);
        }
        if let Some((best, _)) = &self.incumbent {
            if bound >= *best {
                return;
            }
        }
        if let Some(x) = integral(&sol.primal) {
            let value = value_of(self.costs, &x);
            if self
                .incumbent
                .as_ref()
                .map(|(b, _)| value < *b)
                .unwrap_or(true)
            {
                self.incumbent = Some((value, x));
            }
            return;
        }
        if self.incumbent.is_none() {
            self.try_rounding(&sol.primal);
            if let Some((best, _)) = &self.incumbent {
                if bound >= *best {
                    return;
                }
            }
        }
        // Branch on the fractional variable with the largest fractional part.
        let mut pick: Option<(usize, BigRational)> = None;
        for (i, v) in sol.primal.iter().enumerate() {
            let frac = v - v.floor();
            if !frac.is_zero() {
                match &pick {
                    None => pick = Some((i, frac)),
                    Some((_, f)) if frac > *f => pick = Some((i, frac)),
                    _ => {}
                }
            }
        }
        let (k, _) = pick.expect("non-integral LP solution has a fractional variable");
        let floor = sol.primal[k].floor().to_integer().to_u64().unwrap();
        branches.push(Branch::Lower(k, floor + 1));
        self.dfs(branches);
        branches.pop();
        branches.push(Branch::Upper(k, floor));
        self.dfs(branches);
        branches.pop();
    }

    /// Rounds the LP point down and completes the residual demand greedily
    /// with max-width patterns; accepts the result only if fully feasible.
    fn try_rounding(&mut self, primal: &[BigRational]) {
        let mut x: Vec<u64> = primal
            .iter()
            .map(|v| v.floor().to_integer().to_u64().unwrap_or(0))
            .collect();
        let m = self.instance.order_count();
        let mut produced = vec![0u64; m];
        for (p, &v) in self.pool.iter().zip(&x) {
            for j in 0..m {
                produced[j] += p.count(j) * v;
            }
        }
        loop {
            let caps: Vec<u64> = (0..m)
                .map(|j| {
                    let order = &self.instance.orders()[j];
                    let residual = order.min_qty().saturating_sub(produced[j]);
                    residual.min(self.instance.max_per_master(j))
                })
                .collect();
            if caps.iter().all(|&c| c == 0) {
                break;
            }
            let Some(p) = patterns::max_width_pattern(self.instance, &caps) else {
                return;
            };
            let Some(&idx) = self.index_of.get(p.counts()) else {
                return;
            };
            for j in 0..m {
                produced[j] += p.count(j);
            }
            x[idx] += 1;
        }
        // Feasibility against every row (demand windows, masters cap, and any
        // active branching bounds are all linear rows; branching bounds are
        // checked by the caller's LP, so check the base rows here).
        if !satisfies(&self.base_rows, &x) {
            return;
        }
        let value = value_of(self.costs, &x);
        if self
            .incumbent
            .as_ref()
            .map(|(b, _)| value < *b)
            .unwrap_or(true)
        {
            self.incumbent = Some((value, x));
        }
    }
}

fn satisfies(rows: &[Constraint], x: &[u64]) -> bool {
    rows.iter().all(|row| {
        let lhs: BigRational = row
            .coeffs
            .iter()
            .zip(x)
            .map(|(c, &v)| c * BigRational::from_integer(v.into()))
            .sum();
        match row.relation {
            Relation::Le => lhs <= row.rhs,
            Relation::Ge => lhs >= row.rhs,
            Relation::Eq => lhs == row.rhs,
        }
    })
}

fn ceil_u64(v: &BigRational) -> u64 {
    v.ceil().to_integer().to_u64().unwrap_or(0)
}

fn integral(primal: &[BigRational]) -> Option<Vec<u64>> {
    let mut out = Vec::with_capacity(primal.len());
    for v in primal {
        if !v.is_integer() {
            return None;
        }
        out.push(v.to_integer().to_u64()?);
    }
    Some(out)
}

/// Limits protecting the exhaustive oracle from blowing up.
#[derive(Debug, Clone, Copy)]
pub struct BruteLimits {
    pub max_masters: u64,
    pub max_patterns: usize,
}

impl Default for BruteLimits {
    fn default() -> Self {
        BruteLimits {
            max_masters: 2_000,
            max_patterns: 50_000,
        }
    }
}

const BRUTE_STATE_GUARD: u64 = 100_000_000;

/// Exhaustive oracle: dynamic program over (pattern index, produced-quantity
/// state). No LP, no bounding beyond feasibility. Returns the same optimum
/// contract as `solve_exact`.
pub fn brute_force_solve(
    instance: &Instance,
    objective: Objective,
    limits: BruteLimits,
) -> Result<SolveReport> {
    let pool = patterns::enumerate_patterns_capped(
        instance,
        EnumerationMode::all_feasible().capped(),
        limits.max_patterns,
    )
    .map_err(|e| match e {
        Error::EnumerationCapExceeded { cap } => {
            Error::LimitsExceeded(format!("more than {cap} feasible patterns"))
        }
        other => other,
    })?;
    let m = instance.order_count();
    // Per-order state bound: exact up to Q_j when bounded, clipped at q_j
    // when unbounded (producing beyond q_j never changes feasibility and the
    // pattern costs are already accounted).
    let bounds: Vec<u64> = instance
        .orders()
        .iter()
        .map(|o| o.max_qty().bound().unwrap_or(o.min_qty()))
        .collect();
    let clipped: Vec<bool> = instance
        .orders()
        .iter()
        .map(|o| o.max_qty().is_unbounded())
        .collect();
    let total_items: u64 = bounds.iter().sum();
    if total_items > limits.max_masters {
        return Err(Error::LimitsExceeded(format!(
            "worst-case master count {total_items} exceeds max_masters {}",
            limits.max_masters
        )));
    }
    let mut state_count: u64 = 1;
    for &b in &bounds {
        state_count = state_count
            .checked_mul(b + 1)
            .filter(|&s| s.saturating_mul(pool.len() as u64 + 1) <= BRUTE_STATE_GUARD)
            .ok_or_else(|| {
                Error::LimitsExceeded("produced-quantity state space too large".into())
            })?;
    }
    let states = state_count as usize;
    let n = pool.len();

    let mut radix = vec![1u64; m];
    for j in (0..m.saturating_sub(1)).rev() {
        radix[j] = radix[j + 1] * (bounds[j + 1] + 1);
    }
    let decode = |s: u64| -> Vec<u64> {
        let mut out = vec![0u64; m];
        let mut rest = s;
        for j in 0..m {
            out[j] = rest / radix[j];
            rest %= radix[j];
        }
        out
    };

    let costs1: Vec<u64> = pool.iter().map(|p| pattern_cost(p, objective)).collect();
    let costs2: Vec<u64> = pool
        .iter()
        .map(|p| pattern_cost(p, objective.other()))
        .collect();

    const INFEASIBLE: (u64, u64) = (u64::MAX, u64::MAX);
    // Base layer: a state is accepting when every order meets its minimum.
    let mut next: Vec<(u64, u64)> = (0..states as u64)
        .map(|s| {
            let prod = decode(s);
            let ok = prod
                .iter()
                .zip(instance.orders())
                .all(|(&p, o)| p >= o.min_qty());
            if ok {
                (0, 0)
            } else {
                INFEASIBLE
            }
        })
        .collect();
    let mut choices: Vec<Vec<u32>> = vec![vec![0u32; states]; n];

    for i in (0..n).rev() {
        let p = &pool[i];
        let mut layer = vec![INFEASIBLE; states];
        for s in 0..states as u64 {
            let prod = decode(s);
            let mut best = next[s as usize];
            let mut best_x = 0u32;
            // hard cap from bounded orders; useful cap from progress
            let mut hard: u64 = u64::MAX;
            let mut useful: u64 = 0;
            for j in 0..m {
                let a = p.count(j);
                if a == 0 {
                    continue;
                }
                let room = bounds[j] - prod[j];
                if clipped[j] {
                    useful = useful.max(room.div_ceil(a));
                } else {
                    hard = hard.min(room / a);
                    useful = useful.max(room.div_ceil(a));
                }
            }
            let xmax = hard.min(useful);
            for x in 1..=xmax {
                let mut s2 = 0u64;
                for j in 0..m {
                    let a = p.count(j);
                    let v = if clipped[j] {
                        (prod[j] + x * a).min(bounds[j])
                    } else {
                        prod[j] + x * a
                    };
                    s2 += v * radix[j];
                }
                let tail = next[s2 as usize];
                if tail == INFEASIBLE {
                    continue;
                }
                let cand = (tail.0 + x * costs1[i], tail.1 + x * costs2[i]);
                if cand < best {
                    best = cand;
                    best_x = x as u32;
                }
            }
            layer[s as usize] = best;
            choices[i][s as usize] = best_x;
        }
        next = layer;
    }

    let root = next[0];
    if root == INFEASIBLE {
        return Ok(SolveReport {
            objective,
            status: SolveStatus::Infeasible,
            masters_cap: None,
        });
    }

    // Reconstruct the witness by replaying the stored choices.
    let mut entries = Vec::new();
    let mut prod = vec![0u64; m];
    for i in 0..n {
        let s: u64 = prod.iter().zip(&radix).map(|(&p, &r)| p * r).sum();
        let x = choices[i][s as usize] as u64;
        if x > 0 {
            entries.push((pool[i].clone(), x));
            for j in 0..m {
                let a = pool[i].count(j);
                prod[j] = if clipped[j] {
                    (prod[j] + x * a).min(bounds[j])
                } else {
                    prod[j] + x * a
                };
            }
        }
    }
    let solution = Solution::new(entries)?.canonicalize();
    debug_assert!(solution.validate(instance)?.feasible);
    Ok(SolveReport {
        objective,
        status: SolveStatus::ProvedOptimal {
            objective_value: root.0,
            secondary_value: root.1,
            solution,
        },
        masters_cap: None,
    })
}
