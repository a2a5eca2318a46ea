use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper quantity bound of an order. Unbounded is a distinct value, not a
/// sentinel integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MaxQty {
    Bounded(u64),
    Unbounded,
}

impl MaxQty {
    pub fn allows(&self, qty: u64) -> bool {
        match self {
            MaxQty::Bounded(q) => qty <= *q,
            MaxQty::Unbounded => true,
        }
    }

    pub fn bound(&self) -> Option<u64> {
        match self {
            MaxQty::Bounded(q) => Some(*q),
            MaxQty::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, MaxQty::Unbounded)
    }
}

impl std::fmt::Display for MaxQty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MaxQty::Bounded(q) => write!(f, "{q}"),
            MaxQty::Unbounded => write!(f, "*"),
        }
    }
}

/// A demanded size with its quantity window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Order {
    size: u64,
    min_qty: u64,
    max_qty: MaxQty,
}

impl Order {
    pub fn new(size: u64, min_qty: u64, max_qty: MaxQty) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidInstance("order size must be >= 1".into()));
        }
        if let MaxQty::Bounded(q) = max_qty {
            if min_qty > q {
                return Err(Error::InvalidInstance(format!(
                    "order of size {size} has min_qty {min_qty} > max_qty {q}"
                )));
            }
        }
        Ok(Order {
            size,
            min_qty,
            max_qty,
        })
    }

    /// Order with an exact required quantity (q = Q).
    pub fn exact(size: u64, qty: u64) -> Result<Self> {
        Order::new(size, qty, MaxQty::Bounded(qty))
    }

    /// Order with a lower bound only.
    pub fn at_least(size: u64, qty: u64) -> Result<Self> {
        Order::new(size, qty, MaxQty::Unbounded)
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn min_qty(&self) -> u64 {
        self.min_qty
    }

    pub fn max_qty(&self) -> MaxQty {
        self.max_qty
    }
}

/// A 1D cutting-stock instance: one master width and a list of orders with
/// strictly decreasing, distinct sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    master_width: u64,
    orders: Vec<Order>,
}

impl Instance {
    /// Builds an instance. Orders are sorted by decreasing size; duplicate
    /// sizes are rejected.
    pub fn new(master_width: u64, mut orders: Vec<Order>) -> Result<Self> {
        if master_width == 0 {
            return Err(Error::InvalidInstance("master width must be >= 1".into()));
        }
        orders.sort_by(|a, b| b.size.cmp(&a.size));
        for pair in orders.windows(2) {
            if pair[0].size == pair[1].size {
                return Err(Error::InvalidInstance(format!(
                    "duplicate order size {}",
                    pair[0].size
                )));
            }
        }
        for order in &orders {
            if order.size > master_width {
                return Err(Error::InvalidInstance(format!(
                    "order size {} exceeds master width {master_width}",
                    order.size
                )));
            }
        }
        Ok(Instance {
            master_width,
            orders,
        })
    }

    /// Convenience constructor from (size, q, Q) triples.
    pub fn from_triples(master_width: u64, triples: &[(u64, u64, MaxQty)]) -> Result<Self> {
        let orders = triples
            .iter()
            .map(|&(w, q, max)| Order::new(w, q, max))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(master_width, orders)
    }

    /// Equality-constrained instance from (size, qty) pairs.
    pub fn equality(master_width: u64, pairs: &[(u64, u64)]) -> Result<Self> {
        let orders = pairs
            .iter()
            .map(|&(w, q)| Order::exact(w, q))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(master_width, orders)
    }

    /// One-sided instance from (size, min qty) pairs.
    pub fn one_sided(master_width: u64, pairs: &[(u64, u64)]) -> Result<Self> {
        let orders = pairs
            .iter()
            .map(|&(w, q)| Order::at_least(w, q))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(master_width, orders)
    }

    pub fn master_width(&self) -> u64 {
        self.master_width
    }

    pub fn orders(&self) -> &[Order] {
        &self.orders
    }

    pub fn order_count(&self) -> usize {
        self.orders.len()
    }

    pub fn sizes(&self) -> impl Iterator<Item = u64> + '_ {
        self.orders.iter().map(|o| o.size)
    }

    /// Smallest order size (sizes are sorted decreasing).
    pub fn min_size(&self) -> Option<u64> {
        self.orders.last().map(|o| o.size)
    }

    /// How many copies of order `j` fit in one master item.
    pub fn max_per_master(&self, j: usize) -> u64 {
        self.master_width / self.orders[j].size
    }

    /// Total width of the minimum demand, `sum_j q_j * w_j`.
    pub fn total_min_width(&self) -> u64 {
        self.orders.iter().map(|o| o.min_qty * o.size).sum()
    }

    /// Sum of the distinct order sizes.
    pub fn total_size_width(&self) -> u64 {
        self.orders.iter().map(|o| o.size).sum()
    }

    pub fn is_equality_constrained(&self) -> bool {
        self.orders
            .iter()
            .all(|o| o.max_qty == MaxQty::Bounded(o.min_qty))
    }

    pub fn is_one_sided(&self) -> bool {
        self.orders.iter().all(|o| o.max_qty.is_unbounded())
    }

    /// Copy of this instance with all upper bounds dropped.
    pub fn relax_upper_bounds(&self) -> Instance {
        Instance {
            master_width: self.master_width,
            orders: self
                .orders
                .iter()
                .map(|o| Order {
                    size: o.size,
                    min_qty: o.min_qty,
                    max_qty: MaxQty::Unbounded,
                })
                .collect(),
        }
    }

    pub(crate) fn check_dimension(&self, len: usize) -> Result<()> {
        if len != self.orders.len() {
            return Err(Error::DimensionMismatch {
                expected: self.orders.len(),
                got: len,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_sorted_descending() {
        let inst = Instance::equality(1000, &[(300, 15), (340, 15)]).unwrap();
        let sizes: Vec<u64> = inst.sizes().collect();
        assert_eq!(sizes, vec![340, 300]);
    }

    #[test]
    fn duplicate_sizes_rejected() {
        let err = Instance::equality(100, &[(100, 1), (100, 1)]).unwrap_err();
        assert!(matches!(err, Error::InvalidInstance(_)));
    }

    #[test]
    fn oversized_order_rejected() {
        assert!(Instance::equality(100, &[(101, 1)]).is_err());
    }

    #[test]
    fn min_above_max_rejected() {
        assert!(Order::new(10, 5, MaxQty::Bounded(4)).is_err());
    }

    #[test]
    fn zero_width_rejected() {
        assert!(Instance::new(0, vec![]).is_err());
        assert!(Order::new(0, 1, MaxQty::Unbounded).is_err());
    }

    #[test]
    fn equality_detection() {
        let inst = Instance::equality(132, &[(44, 2), (33, 3), (12, 6)]).unwrap();
        assert!(inst.is_equality_constrained());
        assert!(!inst.is_one_sided());
        assert!(inst.relax_upper_bounds().is_one_sided());
    }
}
