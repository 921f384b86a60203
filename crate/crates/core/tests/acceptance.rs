//! Runs every acceptance criterion and prints one line per criterion.
//! Built without the test harness so the lines always show.

use thompson_kms::suites::run_all;

fn main() {
    let results = run_all(0);
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{} passed, {} failed", results.len() - failed.len(), failed.len());
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
