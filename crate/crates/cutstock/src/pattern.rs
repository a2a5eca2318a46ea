use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;

/// A cutting pattern: per-order counts for one master item, with its derived
/// waste `W - a . w`.
///
/// Ordering is lexicographic on the count vector (counts is the first field),
/// so sorting descending gives the canonical pattern order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pattern {
    counts: Vec<u64>,
    waste: u64,
}

impl Pattern {
    pub fn new(instance: &Instance, counts: Vec<u64>) -> Result<Self> {
        instance.check_dimension(counts.len())?;
        if counts.iter().all(|&c| c == 0) {
            return Err(Error::InvalidPattern("counts must not be all zero".into()));
        }
        let used: u64 = counts
            .iter()
            .zip(instance.orders())
            .map(|(&c, o)| c * o.size())
            .sum();
        if used > instance.master_width() {
            return Err(Error::InvalidPattern(format!(
                "pattern width {used} exceeds master width {}",
                instance.master_width()
            )));
        }
        Ok(Pattern {
            waste: instance.master_width() - used,
            counts,
        })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, j: usize) -> u64 {
        self.counts[j]
    }

    pub fn waste(&self) -> u64 {
        self.waste
    }

    pub fn used_width(&self, instance: &Instance) -> u64 {
        instance.master_width() - self.waste
    }

    pub fn contains_order(&self, j: usize) -> bool {
        self.counts[j] > 0
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
