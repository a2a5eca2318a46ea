//! Randomized properties: solution accounting, canonicalization, the
//! pricing knapsack against full enumeration, and format round-trips.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::collection::vec;
use proptest::prelude::*;

use cutstock::format::{emit_instance, parse_instance};
use cutstock::instance::MaxQty;
use cutstock::patterns::{self, EnumerationMode};
use cutstock::{Instance, Solution};

fn arb_instance() -> impl Strategy<Value = Instance> {
    (5u64..=40, 1usize..=4).prop_flat_map(|(width, m)| {
        let sizes = proptest::sample::subsequence((1..=width).collect::<Vec<u64>>(), m..=m);
        let bounds = vec((1u64..=6, 0u64..=4, any::<bool>()), m..=m);
        (Just(width), sizes, bounds).prop_map(|(width, sizes, bounds)| {
            let orders: Vec<(u64, u64, MaxQty)> = sizes
                .into_iter()
                .zip(bounds)
                .map(|(size, (q, extra, unbounded))| {
                    let max = if unbounded {
                        MaxQty::Unbounded
                    } else {
                        MaxQty::Bounded(q + extra)
                    };
                    (size, q, max)
                })
                .collect();
            Instance::from_triples(width, &orders).unwrap()
        })
    })
}

fn arb_solution(inst: Instance) -> impl Strategy<Value = (Instance, Solution)> {
    let pool = patterns::enumerate_patterns(&inst, EnumerationMode::all_feasible()).unwrap();
    let n = pool.len();
    vec((0..n, 1u64..=5), 0..=6).prop_map(move |picks| {
        let entries = picks
            .into_iter()
            .map(|(i, x)| (pool[i].clone(), x))
            .collect();
        (inst.clone(), Solution::new(entries).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn accounting_identity_and_canonicalization((inst, sol) in arb_instance().prop_flat_map(arb_solution)) {
        let summary = sol.summarize(&inst).unwrap();
        let produced_width: u64 = summary
            .produced
            .iter()
            .zip(inst.orders())
            .map(|(&n, o)| n * o.size())
            .sum();
        prop_assert_eq!(
            summary.masters * inst.master_width(),
            produced_width + summary.total_waste
        );

        let canonical = sol.canonicalize();
        prop_assert!(canonical.is_canonical());
        prop_assert_eq!(canonical.clone(), canonical.canonicalize());
        prop_assert_eq!(canonical.masters(), sol.masters());
        prop_assert_eq!(canonical.total_waste(), sol.total_waste());
        prop_assert_eq!(canonical.produced(&inst).unwrap(), sol.produced(&inst).unwrap());
    }

    #[test]
    fn pricing_matches_enumeration(
        inst in arb_instance(),
        numerators in vec(0u32..=50, 4),
    ) {
        // random nonnegative rational prices, denominators fixed at 7
        let prices: Vec<BigRational> = (0..inst.order_count())
            .map(|j| BigRational::new(BigInt::from(numerators[j]), BigInt::from(7)))
            .collect();
        let best = patterns::best_pattern_for_prices(&inst, &prices, false).unwrap();
        let value = |counts: &[u64]| -> BigRational {
            counts
                .iter()
                .zip(&prices)
                .map(|(&a, y)| BigRational::from_integer(BigInt::from(a)) * y)
                .sum()
        };
        let best_value = value(best.counts());
        let pool = patterns::enumerate_patterns(&inst, EnumerationMode::all_feasible()).unwrap();
        for p in &pool {
            prop_assert!(value(p.counts()) <= best_value, "pattern {} beats the priced one", p);
        }
        // ties broken toward the lexicographically largest count vector
        for p in &pool {
            if value(p.counts()) == best_value {
                prop_assert!(p.counts() <= best.counts());
            }
        }
    }

    #[test]
    fn format_round_trip(inst in arb_instance()) {
        let text = emit_instance(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }
}
