//! Empirical constants in the lower bounds for P(d) and rad(d) over the
//! rationals a/d of a Cantor set.
//!
//! cargo run --example largest_prime_bounds -- 3 0,2 100000

use cantor_rationals::bounds::{aggregate_constants, collect_reports, Branch};
use cantor_rationals::cantor::DigitSet;

fn main() -> cantor_rationals::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let b: u64 = args.first().map_or(3, |s| s.parse().unwrap());
    let ds = DigitSet::parse(b, args.get(1).map_or("0,2", String::as_str))?;
    let max_den: u64 = args.get(2).map_or(100_000, |s| s.parse().unwrap());

    let reports = collect_reports(&ds, max_den, 4)?;
    let s = aggregate_constants(&reports)?;
    let below = reports.iter().filter(|r| r.branch == Branch::Below).count();
    println!("{ds}, d <= {max_den}, eps = {}: {} fractions ({below} with P(d) < b)", ds.sup_distance(), s.count);
    println!("  K_emp     >= {:.6} at {}", s.k_emp_min, s.k_emp_argmin);
    println!("  c_emp_rad >= {:.6} at {}", s.c_emp_rad_min, s.c_emp_rad_argmin);
    println!("  c_emp_P   >= {:.6} at {}", s.c_emp_p_min, s.c_emp_p_argmin);
    println!("  max log(2 eps d) / (P^2 / log P * log b) = {:.6}", s.p_ratio_max);
    Ok(())
}
