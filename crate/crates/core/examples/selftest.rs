//! Runs the invariant suite and prints one line per check.

fn main() {
    let report = modspec::selftest::run(modspec::cli::DEFAULT_SEED);
    for c in &report.checks {
        println!("[{}] {:<8} {} {}", if c.holds { "ok" } else { "FAIL" }, c.module, c.name, c.detail);
    }
    println!("{} passed, {} failed", report.passed, report.failed);
}
