//! Runs every timing suite at a modest size and prints mean/median times.
//!
//! `cargo run --release --example benchmarks -- 10000 5`

use longmem::bench::{run_suite, Suite};

fn main() -> longmem::Result<()> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(2000);
    let reps = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    for suite in Suite::ALL {
        let rep = run_suite(suite, n, reps)?;
        println!("{} (n = {n}, reps = {reps})", suite.name());
        for r in &rep.results {
            println!("  {:<20} mean {:>14.0} ns  median {:>14.0} ns", r.name, r.mean_ns, r.median_ns);
        }
        for c in &rep.comparisons {
            println!("  {} is {:.1}x faster than {}", c.candidate, c.speedup, c.baseline);
        }
        if let Some(diff) = rep.max_abs_diff {
            println!("  max abs difference {diff:.2e}");
        }
    }
    Ok(())
}
