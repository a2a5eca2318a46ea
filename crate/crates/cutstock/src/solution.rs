use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::pattern::Pattern;

/// A multiset of patterns with positive repetition counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    entries: Vec<(Pattern, u64)>,
}

impl Solution {
    pub fn new(entries: Vec<(Pattern, u64)>) -> Result<Self> {
        if let Some(first) = entries.first() {
            for (p, _) in &entries {
                if p.len() != first.0.len() {
                    return Err(Error::InvalidSolution(
                        "patterns have inconsistent dimensions".into(),
                    ));
                }
            }
        }
        if entries.iter().any(|&(_, reps)| reps == 0) {
            return Err(Error::InvalidSolution("repetition counts must be >= 1".into()));
        }
        Ok(Solution { entries })
    }

    pub fn empty() -> Self {
        Solution { entries: vec![] }
    }

    pub fn entries(&self) -> &[(Pattern, u64)] {
        &self.entries
    }

    pub fn pattern_count(&self) -> usize {
        self.entries.len()
    }

    pub fn masters(&self) -> u64 {
        self.entries.iter().map(|&(_, x)| x).sum()
    }

    pub fn total_waste(&self) -> u64 {
        self.entries.iter().map(|(p, x)| p.waste() * x).sum()
    }

    /// Per-order produced quantities.
    pub fn produced(&self, instance: &Instance) -> Result<Vec<u64>> {
        let m = instance.order_count();
        for (p, _) in &self.entries {
            instance.check_dimension(p.len())?;
        }
        let mut out = vec![0u64; m];
        for (p, x) in &self.entries {
            for (j, &c) in p.counts().iter().enumerate() {
                out[j] += c * x;
            }
        }
        Ok(out)
    }

    /// Merges equal patterns and sorts entries lexicographically descending by
    /// count vector. Idempotent; preserves masters, waste and production.
    pub fn canonicalize(&self) -> Solution {
        let mut merged: BTreeMap<Pattern, u64> = BTreeMap::new();
        for (p, x) in &self.entries {
            *merged.entry(p.clone()).or_insert(0) += x;
        }
        let mut entries: Vec<(Pattern, u64)> = merged.into_iter().collect();
        entries.sort_by(|a, b| b.0.cmp(&a.0));
        Solution { entries }
    }

    pub fn is_canonical(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| w[0].0 > w[1].0)
    }

    /// Checks the quantity window of every order against this solution's
    /// production.
    pub fn validate(&self, instance: &Instance) -> Result<ValidationReport> {
        let produced = self.produced(instance)?;
        let per_order: Vec<OrderCheck> = instance
            .orders()
            .iter()
            .zip(&produced)
            .enumerate()
            .map(|(index, (order, &produced))| OrderCheck {
                order_index: index,
                size: order.size(),
                min_qty: order.min_qty(),
                max_qty: order.max_qty(),
                produced,
                ok: produced >= order.min_qty() && order.max_qty().allows(produced),
            })
            .collect();
        let feasible = per_order.iter().all(|c| c.ok);
        Ok(ValidationReport { per_order, feasible })
    }

    pub fn summarize(&self, instance: &Instance) -> Result<SolutionSummary> {
        let produced = self.produced(instance)?;
        let masters = self.masters();
        let total_waste = self.total_waste();
        let percent_waste = if masters == 0 {
            BigRational::zero()
        } else {
            BigRational::new(
                BigInt::from(total_waste),
                BigInt::from(masters * instance.master_width()),
            )
        };
        let mut split_profile = vec![0u64; instance.order_count()];
        for (p, _) in &self.entries {
            for (j, &c) in p.counts().iter().enumerate() {
                if c > 0 {
                    split_profile[j] += 1;
                }
            }
        }
        Ok(SolutionSummary {
            masters,
            total_waste,
            percent_waste,
            produced,
            split_profile,
            pattern_count: self.entries.len() as u64,
        })
    }
}

impl std::fmt::Display for Solution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (p, x)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{x}x{p}")?;
        }
        if self.entries.is_empty() {
            write!(f, "(empty)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderCheck {
    pub order_index: usize,
    pub size: u64,
    pub min_qty: u64,
    pub max_qty: crate::instance::MaxQty,
    pub produced: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub per_order: Vec<OrderCheck>,
    pub feasible: bool,
}

/// Accounting view of a solution.
#[derive(Debug, Clone)]
pub struct SolutionSummary {
    pub masters: u64,
    pub total_waste: u64,
    pub percent_waste: BigRational,
    pub produced: Vec<u64>,
    pub split_profile: Vec<u64>,
    pub pattern_count: u64,
}
