//! LP relaxation, round-up gap, and IRUP/MIRUP verdicts for an instance
//! whose integer optimum exceeds the rounded-up LP value.

use cutstock::lprelax::{self, BoundMode};
use cutstock::rational::RationalText;
use cutstock::Instance;

fn main() {
    // W = 132, sizes 44/33/12, at least 2/3/6 pieces.
    let inst = Instance::one_sided(132, &[(44, 2), (33, 3), (12, 6)]).unwrap();

    let lp = lprelax::lp_min_masters(&inst).unwrap();
    println!("z_LP = {}", RationalText::of(&lp.value));
    println!("fractional activities:");
    for (pattern, x) in &lp.activities {
        println!("  {} x {pattern}", RationalText::of(x));
    }

    let gap = lprelax::integrality_gap(&inst).unwrap();
    println!("z* = {}", gap.z_star);
    println!("gap = {}", RationalText::of(&gap.gap));
    println!("rounded gap = {}", gap.rounded_gap);
    println!(
        "IRUP holds: {}",
        lprelax::irup_holds(&inst, BoundMode::OneSided).unwrap()
    );
    println!(
        "MIRUP holds: {}",
        lprelax::mirup_holds(&inst, BoundMode::OneSided).unwrap()
    );
}
