//! Seeded instance generation and a small round-up-gap sweep: on
//! equality-constrained instances with tiny widths the LP bound rounds up
//! to the exact optimum every time.

use cutstock::generate::{generate_instance, GenParams};
use cutstock::lprelax::{self, BoundMode};
use cutstock::Instance;
use num_rational::Ratio;

fn main() {
    let params = GenParams {
        order_count: 3,
        master_width: 15,
        size_lo: Ratio::new(1, 15),
        size_hi: Ratio::new(9, 15),
        demand_lo: 1,
        demand_hi: 9,
        bound_mode: cutstock::generate::GenBoundMode::Equality,
    };
    let mut irup_count = 0usize;
    let runs = 50;
    for seed in 0..runs {
        let inst: Instance = generate_instance(&params, seed).unwrap();
        if lprelax::irup_holds(&inst, BoundMode::Equality).unwrap() {
            irup_count += 1;
        } else {
            println!("round-up gap above zero at seed {seed}: {inst:?}");
        }
    }
    println!("IRUP held on {irup_count}/{runs} generated instances");

    let sample = generate_instance(&params, 1).unwrap();
    println!("sample instance (seed 1):");
    print!("{}", cutstock::format::emit_instance(&sample));
}
