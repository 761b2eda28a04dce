//! Counts the rationals with bounded denominator in a generalized Cantor set.
//!
//! cargo run --example count -- 3 0,2 100000 [threads]

use std::time::Instant;

use cantor_rationals::cantor::{count_summary, DigitSet};

fn main() -> cantor_rationals::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let base = args.first().map_or(3, |s| s.parse().unwrap());
    let digits = args.get(1).map_or("0,2", String::as_str);
    let max_den = args.get(2).map_or(100_000, |s| s.parse().unwrap());
    let threads = args.get(3).map_or(1, |s| s.parse().unwrap());
    let ds = DigitSet::parse(base, digits)?;

    for coprime in [false, true] {
        let t = Instant::now();
        let s = count_summary(&ds, max_den, coprime, threads)?;
        println!(
            "{ds} T={max_den} coprime={coprime}: reduced {} ({} without 0, 1), all {} [{:.2?}]",
            s.reduced_with_endpoints,
            s.reduced_without_endpoints,
            s.all_with_endpoints,
            t.elapsed()
        );
    }
    Ok(())
}
