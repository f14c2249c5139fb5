//! Acceptance gate: one line per criterion, details beneath.

use cyclelab::reproduce::{Golden, Suite};

fn main() {
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let suite = Suite::new(Golden::builtin());
    let rows = suite.run(filter.as_deref());
    let mut failed = 0;
    for r in &rows {
        println!("{}", r.line());
        for d in &r.details {
            println!("        {d}");
        }
        if !r.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", rows.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
