//! Replay the built-in corpus expectations (fast entries) and print the
//! verification table.

use cutstock::corpus::{verify_corpus, Selection};

fn main() {
    let report = verify_corpus(Selection::Fast, None);
    print!("{}", report.render_table());
    if report.all_passed() {
        println!("all fast corpus checks passed");
    } else {
        println!("corpus check failures above");
        std::process::exit(1);
    }
}
