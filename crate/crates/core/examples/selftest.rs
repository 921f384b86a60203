//! Run the verification suites, or the ones named on the command line.

fn main() {
    let ids: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let results = if ids.is_empty() {
        thompson_kms::suites::run_all(0)
    } else {
        ids.iter()
            .map(|&id| thompson_kms::suites::run(id, 0).expect("known suite id"))
            .collect()
    };
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    std::process::exit(i32::from(failed > 0));
}
