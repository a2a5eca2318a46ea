//! Seeded random instance generator for sweeps and replication studies.
//!
//! The generating distribution is an interpretation of "realistic" order
//! books: sizes drawn uniformly without replacement from an integer band
//! expressed as fractions of the master width, demands uniform in an integer
//! range. Both the band and the range are tunable via [`GenParams`].

use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, MaxQty, Order};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenBoundMode {
    /// q = Q.
    Equality,
    /// q only, Q unbounded.
    OneSided,
}

#[derive(Debug, Clone)]
pub struct GenParams {
    pub order_count: usize,
    pub master_width: u64,
    /// Sizes are drawn from `[ceil(size_lo * W), floor(size_hi * W)]`.
    pub size_lo: Ratio<u64>,
    pub size_hi: Ratio<u64>,
    /// Demands are drawn from `[demand_lo, demand_hi]`.
    pub demand_lo: u64,
    pub demand_hi: u64,
    pub bound_mode: GenBoundMode,
}

impl GenParams {
    /// Defaults used for replication sweeps: sizes 8%-35% of W, demands
    /// 10-60, equality-constrained.
    pub fn survey(order_count: usize, master_width: u64) -> GenParams {
        GenParams {
            order_count,
            master_width,
            size_lo: Ratio::new(8, 100),
            size_hi: Ratio::new(35, 100),
            demand_lo: 10,
            demand_hi: 60,
            bound_mode: GenBoundMode::Equality,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.order_count == 0 {
            return Err(Error::InvalidGenParams("order count must be positive".into()));
        }
        if self.master_width == 0 {
            return Err(Error::InvalidGenParams("master width must be positive".into()));
        }
        let zero = Ratio::new(0, 1);
        let one = Ratio::new(1, 1);
        if !(self.size_lo > zero && self.size_lo < self.size_hi && self.size_hi <= one) {
            return Err(Error::InvalidGenParams(
                "size fractions must satisfy 0 < lo < hi <= 1".into(),
            ));
        }
        if self.demand_lo < 1 || self.demand_lo > self.demand_hi {
            return Err(Error::InvalidGenParams(
                "demand range must satisfy 1 <= lo <= hi".into(),
            ));
        }
        Ok(())
    }

    fn size_band(&self) -> Result<(u64, u64)> {
        let w = self.master_width;
        let lo = (self.size_lo * w).ceil().to_integer().to_u64().unwrap().max(1);
        let hi = (self.size_hi * w).floor().to_integer().to_u64().unwrap().min(w);
        if hi < lo || (hi - lo + 1) < self.order_count as u64 {
            return Err(Error::InvalidGenParams(format!(
                "size band [{lo}, {hi}] cannot supply {} distinct sizes",
                self.order_count
            )));
        }
        Ok((lo, hi))
    }
}

/// Deterministic for a fixed `(params, seed)` pair.
pub fn generate_instance(params: &GenParams, seed: u64) -> Result<Instance> {
    params.validate()?;
    let (lo, hi) = params.size_band()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let band = (hi - lo + 1) as usize;
    let mut sizes: Vec<u64> = sample(&mut rng, band, params.order_count)
        .into_iter()
        .map(|offset| lo + offset as u64)
        .collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let orders = sizes
        .into_iter()
        .map(|size| {
            let q = rng.gen_range(params.demand_lo..=params.demand_hi);
            let max = match params.bound_mode {
                GenBoundMode::Equality => MaxQty::Bounded(q),
                GenBoundMode::OneSided => MaxQty::Unbounded,
            };
            Order::new(size, q, max)
        })
        .collect::<Result<Vec<_>>>()?;
    Instance::new(params.master_width, orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let params = GenParams::survey(10, 5000);
        let a = generate_instance(&params, 42).unwrap();
        let b = generate_instance(&params, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sizes_in_band_and_distinct() {
        let params = GenParams::survey(10, 5000);
        let inst = generate_instance(&params, 7).unwrap();
        assert_eq!(inst.order_count(), 10);
        let sizes: Vec<u64> = inst.sizes().collect();
        for w in &sizes {
            assert!((400..=1750).contains(w), "size {w} out of band");
        }
        for pair in sizes.windows(2) {
            assert!(pair[0] > pair[1], "sizes strictly decreasing");
        }
        assert!(inst.is_equality_constrained());
        for order in inst.orders() {
            assert!((10..=60).contains(&order.min_qty()));
        }
    }

    #[test]
    fn seeds_vary() {
        let params = GenParams::survey(6, 1000);
        let mut distinct = 0;
        for s in 0..100u64 {
            let a = generate_instance(&params, 2 * s).unwrap();
            let b = generate_instance(&params, 2 * s + 1).unwrap();
            if a != b {
                distinct += 1;
            }
        }
        assert!(distinct >= 99, "only {distinct}/100 seed pairs differed");
    }

    #[test]
    fn one_sided_mode() {
        let mut params = GenParams::survey(5, 1000);
        params.bound_mode = GenBoundMode::OneSided;
        let inst = generate_instance(&params, 1).unwrap();
        assert!(inst.is_one_sided());
        assert!(inst.orders().iter().all(|o| o.max_qty().is_unbounded()));
    }

    #[test]
    fn narrow_band_rejected() {
        let mut params = GenParams::survey(10, 20);
        params.size_lo = Ratio::new(40, 100);
        params.size_hi = Ratio::new(50, 100);
        assert!(matches!(
            generate_instance(&params, 0),
            Err(Error::InvalidGenParams(_))
        ));
    }
}
