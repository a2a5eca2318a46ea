//! Pattern enumeration and the pricing knapsack.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::pattern::Pattern;

/// Default guard on the number of enumerated patterns.
pub const DEFAULT_PATTERN_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternFilter {
    AllFeasible,
    /// Keep only patterns whose waste is smaller than the smallest order size.
    MaximalOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationMode {
    pub filter: PatternFilter,
    /// When set, pattern counts are additionally capped by each order's Q_j.
    pub cap_by_max_qty: bool,
}

impl EnumerationMode {
    pub fn all_feasible() -> Self {
        EnumerationMode {
            filter: PatternFilter::AllFeasible,
            cap_by_max_qty: false,
        }
    }

    pub fn maximal_only() -> Self {
        EnumerationMode {
            filter: PatternFilter::MaximalOnly,
            cap_by_max_qty: false,
        }
    }

    pub fn capped(mut self) -> Self {
        self.cap_by_max_qty = true;
        self
    }
}

/// True iff the pattern's waste is smaller than the smallest order size.
pub fn is_maximal(instance: &Instance, pattern: &Pattern) -> Result<bool> {
    instance.check_dimension(pattern.len())?;
    let min_size = instance.min_size().expect("instance has at least one order");
    Ok(pattern.waste() < min_size)
}

fn count_caps(instance: &Instance, cap_by_max_qty: bool) -> Vec<u64> {
    (0..instance.order_count())
        .map(|j| {
            let mut cap = instance.max_per_master(j);
            if cap_by_max_qty {
                if let Some(q) = instance.orders()[j].max_qty().bound() {
                    cap = cap.min(q);
                }
            }
            cap
        })
        .collect()
}

/// Enumerates every nonempty feasible pattern, sorted lexicographically
/// descending. Fails rather than truncating when the cap is exceeded.
pub fn enumerate_patterns(instance: &Instance, mode: EnumerationMode) -> Result<Vec<Pattern>> {
    enumerate_patterns_capped(instance, mode, DEFAULT_PATTERN_CAP)
}

pub fn enumerate_patterns_capped(
    instance: &Instance,
    mode: EnumerationMode,
    cap: usize,
) -> Result<Vec<Pattern>> {
    let caps = count_caps(instance, mode.cap_by_max_qty);
    let min_size = instance.min_size().unwrap_or(0);
    let mut out = Vec::new();
    let mut counts = vec![0u64; instance.order_count()];
    descend(
        instance,
        &caps,
        min_size,
        mode.filter,
        cap,
        0,
        instance.master_width(),
        &mut counts,
        &mut out,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    instance: &Instance,
    caps: &[u64],
    min_size: u64,
    filter: PatternFilter,
    cap: usize,
    j: usize,
    remaining: u64,
    counts: &mut Vec<u64>,
    out: &mut Vec<Pattern>,
) -> Result<()> {
    if j == instance.order_count() {
        if counts.iter().any(|&c| c > 0) {
            if filter == PatternFilter::MaximalOnly && remaining >= min_size {
                return Ok(());
            }
            if out.len() >= cap {
                return Err(Error::EnumerationCapExceeded { cap });
            }
            out.push(Pattern::new(instance, counts.clone())?);
        }
        return Ok(());
    }
    let w = instance.orders()[j].size();
    let max_here = caps[j].min(remaining / w);
    for a in (0..=max_here).rev() {
        counts[j] = a;
        descend(
            instance,
            caps,
            min_size,
            filter,
            cap,
            j + 1,
            remaining - a * w,
            counts,
            out,
        )?;
    }
    counts[j] = 0;
    Ok(())
}

/// Solves the pricing knapsack exactly: a feasible pattern maximizing
/// `sum_j a_j * price_j`, ties broken by the lexicographically largest count
/// vector. Bounded-knapsack dynamic program over widths `0..=W`.
pub fn best_pattern_for_prices(
    instance: &Instance,
    prices: &[BigRational],
    cap_by_max_qty: bool,
) -> Result<Pattern> {
    instance.check_dimension(prices.len())?;
    let caps = count_caps(instance, cap_by_max_qty);
    best_pattern_with_caps(instance, prices, &caps)
}

/// Pricing knapsack with explicit per-order count caps.
pub(crate) fn best_pattern_with_caps(
    instance: &Instance,
    prices: &[BigRational],
    caps: &[u64],
) -> Result<Pattern> {
    let m = instance.order_count();
    let width = instance.master_width() as usize;
    // best[j][c]: max value achievable with orders j.. and capacity c
    let mut best = vec![vec![BigRational::zero(); width + 1]; m + 1];
    for j in (0..m).rev() {
        let w = instance.orders()[j].size() as usize;
        for c in 0..=width {
            let amax = caps[j].min((c / w) as u64);
            let mut value = best[j + 1][c].clone();
            for a in 1..=amax {
                let cand = &prices[j] * BigRational::from_integer(a.into())
                    + &best[j + 1][c - a as usize * w];
                if cand > value {
                    value = cand;
                }
            }
            best[j][c] = value;
        }
    }
    // Reconstruct preferring the largest count at each order, which yields the
    // lexicographically largest optimal vector.
    let mut counts = vec![0u64; m];
    let mut c = width;
    for j in 0..m {
        let w = instance.orders()[j].size() as usize;
        let amax = caps[j].min((c / w) as u64);
        for a in (0..=amax).rev() {
            let cand =
                &prices[j] * BigRational::from_integer(a.into()) + &best[j + 1][c - a as usize * w];
            if cand == best[j][c] {
                counts[j] = a;
                c -= a as usize * w;
                break;
            }
        }
    }
    Pattern::new(instance, counts)
}

/// Max-width pattern under explicit count caps, used to complete fractional
/// solutions into feasible integer ones. Returns None when all caps are zero.
pub(crate) fn max_width_pattern(instance: &Instance, caps: &[u64]) -> Option<Pattern> {
    if caps.iter().all(|&c| c == 0) {
        return None;
    }
    let m = instance.order_count();
    let width = instance.master_width() as usize;
    let mut best = vec![vec![0u64; width + 1]; m + 1];
    for j in (0..m).rev() {
        let w = instance.orders()[j].size() as usize;
        for c in 0..=width {
            let amax = caps[j].min((c / w) as u64);
            let mut value = best[j + 1][c];
            for a in 1..=amax {
                let cand = a * w as u64 + best[j + 1][c - a as usize * w];
                if cand > value {
                    value = cand;
                }
            }
            best[j][c] = value;
        }
    }
    let mut counts = vec![0u64; m];
    let mut c = width;
    for j in 0..m {
        let w = instance.orders()[j].size() as usize;
        let amax = caps[j].min((c / w) as u64);
        for a in (0..=amax).rev() {
            if a * w as u64 + best[j + 1][c - a as usize * w] == best[j][c] {
                counts[j] = a;
                c -= a as usize * w;
                break;
            }
        }
    }
    Pattern::new(instance, counts).ok()
}
