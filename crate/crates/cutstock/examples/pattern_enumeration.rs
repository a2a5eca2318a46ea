//! Enumerate feasible and maximal cutting patterns, and price a pattern
//! against exact rational dual values with the bounded-knapsack solver.

use num_bigint::BigInt;
use num_rational::BigRational;
use cutstock::patterns::{self, EnumerationMode};
use cutstock::Instance;

fn main() {
    let inst = Instance::one_sided(132, &[(44, 2), (33, 3), (12, 6)]).unwrap();

    let all = patterns::enumerate_patterns(&inst, EnumerationMode::all_feasible()).unwrap();
    println!("{} feasible patterns", all.len());
    let maximal = patterns::enumerate_patterns(&inst, EnumerationMode::maximal_only()).unwrap();
    println!("{} maximal patterns (waste below the smallest size):", maximal.len());
    for p in &maximal {
        println!("  {p}  waste {}", p.waste());
    }

    // price against y = (44/132, 33/132, 12/132): proportional-to-size duals
    let prices: Vec<BigRational> = inst
        .sizes()
        .map(|w| BigRational::new(BigInt::from(w), BigInt::from(132)))
        .collect();
    let best = patterns::best_pattern_for_prices(&inst, &prices, false).unwrap();
    println!("best priced pattern for size-proportional duals: {best}");
}
