//! Minimum number of distinct patterns among waste-optimal solutions, and
//! the width lower bound ceil(sum of sizes / W).

use cutstock::patmin;
use cutstock::Instance;

fn main() {
    // Two orders that need three patterns (one more than the order count).
    let two = Instance::equality(1000, &[(300, 7), (250, 100)]).unwrap();
    report("two orders", &two);

    // Five orders whose zero-waste optimum needs four patterns.
    let five = Instance::equality(
        1000,
        &[(300, 100), (250, 100), (200, 100), (150, 100), (90, 100)],
    )
    .unwrap();
    report("five orders", &five);
}

fn report(label: &str, inst: &Instance) {
    println!("{label}: lower bound {}", patmin::pattern_lower_bound(inst));
    let r = patmin::min_patterns(inst, None).unwrap();
    println!(
        "  optimal waste {}, minimum distinct patterns {}",
        r.optimal_waste,
        r.min_pattern_count().unwrap()
    );
    for (pattern, x) in r.witness().unwrap().entries() {
        println!("  {x} x {pattern}  waste {}", pattern.waste());
    }
}
