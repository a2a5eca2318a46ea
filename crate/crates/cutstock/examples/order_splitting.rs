//! How many distinct patterns must a single order appear in, over all
//! waste-optimal solutions?

use cutstock::patmin;
use cutstock::Instance;

fn main() {
    // A single order can already force a split: 7 pieces of size 3 from
    // width-10 masters need patterns (3) and (1) (or (2)).
    let single = Instance::equality(10, &[(3, 7)]).unwrap();
    let report = patmin::min_split_for_order(&single, 0, None).unwrap();
    println!(
        "single-order instance: minimum appearances = {}",
        report.min_appearances().unwrap()
    );

    // Four sizes; the bulk order (300 pieces of 275) must split three ways.
    let four = Instance::equality(1000, &[(400, 1), (375, 1), (350, 1), (275, 300)]).unwrap();
    let report = patmin::min_split_for_order(&four, 3, None).unwrap();
    println!(
        "four-size instance, order 275: minimum appearances = {}",
        report.min_appearances().unwrap()
    );
    println!("witness:");
    for (pattern, x) in report.witness().entries() {
        println!("  {x} x {pattern}  waste {}", pattern.waste());
    }
}
