//! Dense two-phase primal simplex over exact rationals.
//!
//! Entering variable: most negative reduced cost, with a permanent switch to
//! Bland's rule after a run of degenerate pivots. The ratio test breaks ties
//! on the smallest basic variable index, so the Bland regime terminates.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: BigRational,
    pub primal: Vec<BigRational>,
    /// One dual value per constraint, in input order.
    pub duals: Vec<BigRational>,
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

const DEGENERATE_PIVOT_LIMIT: usize = 40;

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
    art_start: usize,
    art_col: Vec<usize>,
    flipped: Vec<bool>,
    bland: bool,
    degenerate_run: usize,
}

impl Tableau {
    fn build(n: usize, constraints: &[Constraint]) -> Self {
        let m = constraints.len();
        let mut extra = 0usize;
        for c in constraints {
            if c.relation != Relation::Eq {
                extra += 1;
            }
        }
        let art_start = n + extra;
        let total = art_start + m;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        let mut art_col = Vec::with_capacity(m);
        let mut next_extra = n;
        for (i, c) in constraints.iter().enumerate() {
            assert_eq!(c.coeffs.len(), n, "constraint width mismatch");
            let flip = c.rhs.is_negative();
            let mut relation = c.relation;
            if flip {
                relation = match relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            let sign = if flip {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            let mut row = vec![BigRational::zero(); total];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = a * &sign;
            }
            let b = &c.rhs * &sign;
            let art = art_start + i;
            row[art] = BigRational::one();
            match relation {
                Relation::Le => {
                    row[next_extra] = BigRational::one();
                    basis.push(next_extra);
                    next_extra += 1;
                }
                Relation::Ge => {
                    row[next_extra] = -BigRational::one();
                    basis.push(art);
                    next_extra += 1;
                }
                Relation::Eq => {
                    basis.push(art);
                }
            }
            art_col.push(art);
            rows.push(row);
            rhs.push(b);
            flipped.push(flip);
        }
        Tableau {
            rows,
            rhs,
            basis,
            art_start,
            art_col,
            flipped,
            bland: false,
            degenerate_run: 0,
        }
    }

    fn total_cols(&self) -> usize {
        self.art_start + self.rows.len()
    }

    fn reduced_costs(&self, costs: &[BigRational]) -> (Vec<BigRational>, BigRational) {
        let total = self.total_cols();
        let mut r = costs.to_vec();
        let mut value = BigRational::zero();
        debug_assert_eq!(r.len(), total);
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &costs[self.basis[i]];
            if !cb.is_zero() {
                for j in 0..total {
                    if !row[j].is_zero() {
                        r[j] -= cb * &row[j];
                    }
                }
                value += cb * &self.rhs[i];
            }
        }
        (r, value)
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let piv = self.rows[pr][pc].clone();
        debug_assert!(!piv.is_zero());
        let inv = piv.recip();
        for v in self.rows[pr].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[pr] *= &inv;
        let pivot_row = self.rows[pr].clone();
        let pivot_rhs = self.rhs[pr].clone();
        for i in 0..self.rows.len() {
            if i == pr {
                continue;
            }
            let factor = self.rows[i][pc].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        self.basis[pr] = pc;
    }

    /// Runs the simplex loop for the given costs. `allow` filters entering
    /// columns. Returns false when unbounded.
    fn optimize(&mut self, costs: &[BigRational], allow: impl Fn(usize) -> bool) -> bool {
        loop {
            let (r, _) = self.reduced_costs(costs);
            let entering = if self.bland {
                (0..r.len()).find(|&j| allow(j) && r[j].is_negative())
            } else {
                let mut best: Option<usize> = None;
                for j in 0..r.len() {
                    if allow(j) && r[j].is_negative() {
                        match best {
                            None => best = Some(j),
                            Some(b) if r[j] < r[b] => best = Some(j),
                            _ => {}
                        }
                    }
                }
                best
            };
            let Some(e) = entering else {
                return true;
            };
            let mut leave: Option<usize> = None;
            let mut best_ratio: Option<BigRational> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][e].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][e];
                    let better = match &best_ratio {
                        None => true,
                        Some(b) => {
                            ratio < *b
                                || (ratio == *b
                                    && self.basis[i] < self.basis[leave.unwrap()])
                        }
                    };
                    if better {
                        best_ratio = Some(ratio);
                        leave = Some(i);
                    }
                }
            }
            let Some(l) = leave else {
                return false;
            };
            if best_ratio.as_ref().map(|r| r.is_zero()).unwrap_or(false) {
                self.degenerate_run += 1;
                if self.degenerate_run > DEGENERATE_PIVOT_LIMIT {
                    self.bland = true;
                }
            } else {
                self.degenerate_run = 0;
            }
            self.pivot(l, e);
        }
    }
}

/// Minimizes `objective . x` subject to the constraints and `x >= 0`.
pub fn solve_lp(objective: &[BigRational], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let mut t = Tableau::build(n, constraints);
    let total = t.total_cols();

    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![BigRational::zero(); total];
    for j in t.art_start..total {
        phase1[j] = BigRational::one();
    }
    let ok = t.optimize(&phase1, |_| true);
    debug_assert!(ok, "phase 1 is bounded below by zero");
    let (_, infeas) = t.reduced_costs(&phase1);
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive artificials out of the basis where a structural or slack pivot
    // exists; rows without one are redundant and stay pinned at zero.
    for i in 0..t.rows.len() {
        if t.basis[i] >= t.art_start {
            debug_assert!(t.rhs[i].is_zero());
            let pc = (0..t.art_start).find(|&j| !t.rows[i][j].is_zero());
            if let Some(pc) = pc {
                t.pivot(i, pc);
            }
        }
    }

    // Phase 2 with the real objective; artificials may not re-enter.
    let mut phase2 = vec![BigRational::zero(); total];
    phase2[..n].clone_from_slice(objective);
    let art_start = t.art_start;
    if !t.optimize(&phase2, |j| j < art_start) {
        return LpOutcome::Unbounded;
    }

    let mut primal = vec![BigRational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            primal[b] = t.rhs[i].clone();
        }
    }
    let value: BigRational = objective
        .iter()
        .zip(&primal)
        .map(|(c, x)| c * x)
        .sum();
    let (r, _) = t.reduced_costs(&phase2);
    let duals = (0..constraints.len())
        .map(|i| {
            let y = -r[t.art_col[i]].clone();
            if t.flipped[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    LpOutcome::Optimal(LpSolution {
        value,
        primal,
        duals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn simple_ge_problem() {
        // min x + y s.t. x + 2y >= 4, 3x + y >= 6
        let out = solve_lp(
            &[r(1), r(1)],
            &[
                Constraint::new(vec![r(1), r(2)], Relation::Ge, r(4)),
                Constraint::new(vec![r(3), r(1)], Relation::Ge, r(6)),
            ],
        );
        let LpOutcome::Optimal(sol) = out else {
            panic!("expected optimal")
        };
        // vertex at x = 8/5, y = 6/5, value 14/5
        assert_eq!(sol.value, rat(14, 5));
        assert_eq!(sol.primal, vec![rat(8, 5), rat(6, 5)]);
        // duals from y_1 + 3 y_2 = 1, 2 y_1 + y_2 = 1
        assert_eq!(sol.duals, vec![rat(2, 5), rat(1, 5)]);
    }

    #[test]
    fn equality_and_le_mix() {
        // min 2x + 3y s.t. x + y = 10, x <= 4
        let out = solve_lp(
            &[r(2), r(3)],
            &[
                Constraint::new(vec![r(1), r(1)], Relation::Eq, r(10)),
                Constraint::new(vec![r(1), r(0)], Relation::Le, r(4)),
            ],
        );
        let LpOutcome::Optimal(sol) = out else {
            panic!("expected optimal")
        };
        assert_eq!(sol.value, r(26));
        assert_eq!(sol.primal, vec![r(4), r(6)]);
    }

    #[test]
    fn infeasible_detected() {
        // x <= 1 and x >= 2
        let out = solve_lp(
            &[r(1)],
            &[
                Constraint::new(vec![r(1)], Relation::Le, r(1)),
                Constraint::new(vec![r(1)], Relation::Ge, r(2)),
            ],
        );
        assert!(matches!(out, LpOutcome::Infeasible));
    }

    #[test]
    fn unbounded_detected() {
        // min -x s.t. x >= 1
        let out = solve_lp(
            &[r(-1)],
            &[Constraint::new(vec![r(1)], Relation::Ge, r(1))],
        );
        assert!(matches!(out, LpOutcome::Unbounded));
    }

    #[test]
    fn redundant_rows_handled() {
        // duplicated equality row
        let out = solve_lp(
            &[r(1), r(1)],
            &[
                Constraint::new(vec![r(1), r(1)], Relation::Eq, r(3)),
                Constraint::new(vec![r(1), r(1)], Relation::Eq, r(3)),
            ],
        );
        let LpOutcome::Optimal(sol) = out else {
            panic!("expected optimal")
        };
        assert_eq!(sol.value, r(3));
    }

    #[test]
    fn negative_rhs_normalized() {
        // min x s.t. -x <= -5  (i.e. x >= 5)
        let out = solve_lp(
            &[r(1)],
            &[Constraint::new(vec![r(-1)], Relation::Le, r(-5))],
        );
        let LpOutcome::Optimal(sol) = out else {
            panic!("expected optimal")
        };
        assert_eq!(sol.value, r(5));
        // dual of the original <= row is nonpositive
        assert!(sol.duals[0].is_negative());
    }

    #[test]
    fn duals_price_out_columns() {
        // min c.x with Ge rows: at optimum, c_j - y.A_j >= 0 for every column
        let obj = [r(3), r(2), r(4)];
        let cons = [
            Constraint::new(vec![r(1), r(1), r(2)], Relation::Ge, r(4)),
            Constraint::new(vec![r(2), r(0), r(1)], Relation::Ge, r(3)),
        ];
        let LpOutcome::Optimal(sol) = solve_lp(&obj, &cons) else {
            panic!("expected optimal")
        };
        for j in 0..3 {
            let priced: BigRational = cons
                .iter()
                .zip(&sol.duals)
                .map(|(c, y)| &c.coeffs[j] * y)
                .sum();
            assert!(obj[j].clone() - priced >= BigRational::zero());
        }
    }
}
