//! Runs every acceptance criterion at its stated budget and prints one
//! PASS/FAIL line per criterion. Exits non-zero if any criterion fails.
//!
//! `cargo test --test acceptance -- 6 11` runs a subset by id.

use sighom::acceptance::{criterion_ids, run_criterion, AcceptanceOptions};

fn main() {
    let picked: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids = if picked.is_empty() { criterion_ids() } else { picked };
    let opts = AcceptanceOptions::default();
    let mut failed = 0;
    for id in ids {
        let Some(r) = run_criterion(id, &opts) else {
            println!("FAIL {id:>2} unknown criterion");
            failed += 1;
            continue;
        };
        println!("{}", r.line());
        failed += usize::from(!r.passed);
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
