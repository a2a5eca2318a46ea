//! The two classical objectives can disagree: minimising waste may need
//! more master items than minimising the master count, and vice versa.

use cutstock::exact::{self, Objective};
use cutstock::instance::MaxQty;
use cutstock::rational::percent_3dp;
use cutstock::Instance;

fn main() {
    // W = 1000, sizes 340 (15..18 pieces) and 300 (exactly 15 pieces).
    let inst = Instance::from_triples(
        1000,
        &[
            (340, 15, MaxQty::Bounded(18)),
            (300, 15, MaxQty::Bounded(15)),
        ],
    )
    .unwrap();

    for objective in [Objective::MinWaste, Objective::MinMasters] {
        let report = exact::solve_exact(&inst, objective, None).unwrap();
        let solution = report.solution().unwrap();
        let summary = solution.summarize(&inst).unwrap();
        println!("{objective:?}:");
        println!(
            "  {} masters, waste {} ({}%)",
            summary.masters,
            summary.total_waste,
            percent_3dp(&summary.percent_waste)
        );
        for (pattern, x) in solution.entries() {
            println!("  {x} x {pattern}  waste {}", pattern.waste());
        }
    }
}
