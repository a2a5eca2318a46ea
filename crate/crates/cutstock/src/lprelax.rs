//! Exact-rational LP relaxation of the master-count formulation, via column
//! generation for the one-sided case and full enumeration otherwise, plus
//! integer round-up gap analysis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, Objective};
use crate::instance::Instance;
use crate::pattern::Pattern;
use crate::patterns::{self, EnumerationMode};
use crate::simplex::{solve_lp, Constraint, LpOutcome, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundMode {
    /// Lower bounds only; upper bounds ignored.
    OneSided,
    /// Production fixed at q.
    Equality,
    /// Full [q, Q] windows.
    TwoSided,
}

/// Exact value and activities of the continuous relaxation.
#[derive(Debug, Clone)]
pub struct LpReport {
    pub value: BigRational,
    pub activities: Vec<(Pattern, BigRational)>,
    pub bound_mode: BoundMode,
}

/// Round-up gap between the LP relaxation and the integer optimum of the
/// master-count objective.
#[derive(Debug, Clone)]
pub struct GapReport {
    pub z_lp: BigRational,
    pub z_star: u64,
    /// z* - z_LP, exact.
    pub gap: BigRational,
    /// z* - ceil(z_LP). Nonnegativity is a theorem target, not an assumption.
    pub rounded_gap: i64,
}

/// LP minimum of the master count under one-sided bounds, by delayed column
/// generation: the restricted master is solved exactly, the pricing knapsack
/// proposes the best-priced pattern, and we stop when no pattern has negative
/// reduced cost.
pub fn lp_min_masters(instance: &Instance) -> Result<LpReport> {
    let m = instance.order_count();
    // Initial restricted master: one single-order pattern per order, which
    // makes the first LP feasible.
    let mut columns: Vec<Pattern> = (0..m)
        .map(|j| {
            let mut counts = vec![0u64; m];
            counts[j] = instance.max_per_master(j);
            Pattern::new(instance, counts)
        })
        .collect::<Result<Vec<_>>>()?;

    loop {
        let sol = solve_restricted(instance, &columns)?;
        let duals: Vec<BigRational> = sol.duals.clone();
        debug_assert!(duals.iter().all(|y| !y.is_negative()));
        let candidate = patterns::best_pattern_for_prices(instance, &duals, false)?;
        let priced: BigRational = candidate
            .counts()
            .iter()
            .zip(&duals)
            .map(|(&a, y)| BigRational::from_integer(BigInt::from(a)) * y)
            .sum();
        if priced <= BigRational::one() {
            let activities = columns
                .iter()
                .zip(&sol.primal)
                .filter(|(_, x)| x.is_positive())
                .map(|(p, x)| (p.clone(), x.clone()))
                .collect();
            return Ok(LpReport {
                value: sol.value,
                activities,
                bound_mode: BoundMode::OneSided,
            });
        }
        debug_assert!(!columns.contains(&candidate));
        columns.push(candidate);
    }
}

fn solve_restricted(
    instance: &Instance,
    columns: &[Pattern],
) -> Result<crate::simplex::LpSolution> {
    let rows: Vec<Constraint> = instance
        .orders()
        .iter()
        .enumerate()
        .map(|(j, order)| {
            Constraint::new(
                columns
                    .iter()
                    .map(|p| BigRational::from_integer(BigInt::from(p.count(j))))
                    .collect(),
                Relation::Ge,
                BigRational::from_integer(BigInt::from(order.min_qty())),
            )
        })
        .collect();
    let objective = vec![BigRational::one(); columns.len()];
    match solve_lp(&objective, &rows) {
        LpOutcome::Optimal(sol) => Ok(sol),
        LpOutcome::Infeasible => Err(Error::Infeasible),
        LpOutcome::Unbounded => unreachable!("master-count LP is bounded below"),
    }
}

/// LP relaxation over the fully enumerated pattern set, in any bound mode.
pub fn lp_relax_enumerated(instance: &Instance, mode: BoundMode) -> Result<LpReport> {
    let enumeration = match mode {
        BoundMode::OneSided => EnumerationMode::all_feasible(),
        _ => EnumerationMode::all_feasible().capped(),
    };
    let pool = patterns::enumerate_patterns(instance, enumeration)?;
    let mut rows = Vec::new();
    for (j, order) in instance.orders().iter().enumerate() {
        let coeffs: Vec<BigRational> = pool
            .iter()
            .map(|p| BigRational::from_integer(BigInt::from(p.count(j))))
            .collect();
        let q = BigRational::from_integer(BigInt::from(order.min_qty()));
        match mode {
            BoundMode::OneSided => rows.push(Constraint::new(coeffs, Relation::Ge, q)),
            BoundMode::Equality => rows.push(Constraint::new(coeffs, Relation::Eq, q)),
            BoundMode::TwoSided => {
                rows.push(Constraint::new(coeffs.clone(), Relation::Ge, q));
                if let Some(q_max) = order.max_qty().bound() {
                    rows.push(Constraint::new(
                        coeffs,
                        Relation::Le,
                        BigRational::from_integer(BigInt::from(q_max)),
                    ));
                }
            }
        }
    }
    let objective = vec![BigRational::one(); pool.len()];
    match solve_lp(&objective, &rows) {
        LpOutcome::Optimal(sol) => Ok(LpReport {
            value: sol.value,
            activities: pool
                .iter()
                .zip(&sol.primal)
                .filter(|(_, x)| x.is_positive())
                .map(|(p, x)| (p.clone(), x.clone()))
                .collect(),
            bound_mode: mode,
        }),
        LpOutcome::Infeasible => Err(Error::Infeasible),
        LpOutcome::Unbounded => unreachable!("master-count LP is bounded below"),
    }
}

/// Gap between z_LP and z* for the master-count objective in the given bound
/// mode.
pub fn gap_report(instance: &Instance, mode: BoundMode) -> Result<GapReport> {
    let (z_lp, z_star) = match mode {
        BoundMode::OneSided => {
            let lp = lp_min_masters(instance)?;
            let relaxed = instance.relax_upper_bounds();
            let z = exact::solve_exact(&relaxed, Objective::MinMasters, None)?
                .optimal_value()
                .ok_or(Error::Infeasible)?;
            (lp.value, z)
        }
        mode => {
            let lp = lp_relax_enumerated(instance, mode)?;
            let z = exact::solve_exact(instance, Objective::MinMasters, None)?
                .optimal_value()
                .ok_or(Error::Infeasible)?;
            (lp.value, z)
        }
    };
    let z_star_rat = BigRational::from_integer(BigInt::from(z_star));
    let gap = &z_star_rat - &z_lp;
    let rounded_gap = (z_star_rat - z_lp.ceil()).to_integer().to_i64().unwrap();
    Ok(GapReport {
        z_lp,
        z_star,
        gap,
        rounded_gap,
    })
}

/// One-sided round-up gap per the classical master-count relaxation.
pub fn integrality_gap(instance: &Instance) -> Result<GapReport> {
    gap_report(instance, BoundMode::OneSided)
}

/// Integer round-up property: z* = ceil(z_LP).
pub fn irup_holds(instance: &Instance, mode: BoundMode) -> Result<bool> {
    Ok(gap_report(instance, mode)?.rounded_gap == 0)
}

/// Modified integer round-up property: z* <= ceil(z_LP) + 1.
pub fn mirup_holds(instance: &Instance, mode: BoundMode) -> Result<bool> {
    Ok(gap_report(instance, mode)?.rounded_gap <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn gap132() -> Instance {
        Instance::one_sided(132, &[(44, 2), (33, 3), (12, 6)]).unwrap()
    }

    #[test]
    fn gap_instance_lp_value() {
        let lp = lp_min_masters(&gap132()).unwrap();
        assert_eq!(lp.value, rat(259, 132));
        // activities satisfy the relaxed constraints exactly
        for (j, order) in gap132().orders().iter().enumerate() {
            let produced: BigRational = lp
                .activities
                .iter()
                .map(|(p, x)| BigRational::from_integer(BigInt::from(p.count(j))) * x)
                .sum();
            assert!(produced >= BigRational::from_integer(BigInt::from(order.min_qty())));
        }
        let total: BigRational = lp.activities.iter().map(|(_, x)| x.clone()).sum();
        assert_eq!(total, lp.value);
    }

    #[test]
    fn gap_instance_report() {
        let g = integrality_gap(&gap132()).unwrap();
        assert_eq!(g.z_lp, rat(259, 132));
        assert_eq!(g.z_star, 3);
        assert_eq!(g.gap, rat(137, 132));
        assert_eq!(g.rounded_gap, 1);
        assert!(!irup_holds(&gap132(), BoundMode::OneSided).unwrap());
        assert!(mirup_holds(&gap132(), BoundMode::OneSided).unwrap());
    }

    #[test]
    fn single_order_lp_is_integral() {
        let inst = Instance::one_sided(10, &[(10, 5)]).unwrap();
        let lp = lp_min_masters(&inst).unwrap();
        assert_eq!(lp.value, rat(5, 1));
        let g = integrality_gap(&inst).unwrap();
        assert!(g.gap.is_zero());
        assert_eq!(g.rounded_gap, 0);
        assert!(irup_holds(&inst, BoundMode::OneSided).unwrap());
    }

    #[test]
    fn two_order_lp_matches_enumerated() {
        let inst = Instance::one_sided(1000, &[(300, 15), (340, 15)]).unwrap();
        let colgen = lp_min_masters(&inst).unwrap();
        let full = lp_relax_enumerated(&inst, BoundMode::OneSided).unwrap();
        assert_eq!(colgen.value, rat(10, 1));
        assert_eq!(full.value, colgen.value);
        let g = integrality_gap(&inst).unwrap();
        assert_eq!(g.z_star, 10);
        assert!(g.gap.is_zero());
    }

    #[test]
    fn colgen_duals_price_out_every_pattern() {
        // weak duality, checked against the full enumeration
        let inst = gap132();
        let lp = lp_min_masters(&inst).unwrap();
        let full = lp_relax_enumerated(&inst, BoundMode::OneSided).unwrap();
        assert_eq!(lp.value, full.value);
    }

    #[test]
    fn equality_mode_gap() {
        let inst = Instance::equality(10, &[(3, 7)]).unwrap();
        // patterns (3),(2),(1); equality LP: 3x1+2x2+x3 = 7, min sum
        let lp = lp_relax_enumerated(&inst, BoundMode::Equality).unwrap();
        assert_eq!(lp.value, rat(7, 3));
        assert!(irup_holds(&inst, BoundMode::Equality).unwrap());
    }
}
