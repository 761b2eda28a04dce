//! Above D = prod p^N_p / (2 eps) every orbit is eps-dense; below it,
//! some are not.
//!
//! cargo run --example effective_density -- 2 3 1/6

use cantor_rationals::fraction::parse_rational;
use cantor_rationals::orbit::{density_bound, density_report, floor_bound, orbit};
use cantor_rationals::{OrderProfile, ReducedFraction};
use num_integer::Integer;

fn main() -> cantor_rationals::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let b: u64 = args.first().map_or(2, |s| s.parse().unwrap());
    let primes: Vec<u64> = args.get(1).map_or("3", String::as_str).split(',').map(|s| s.parse().unwrap()).collect();
    let eps = parse_rational(args.get(2).map_or("1/6", String::as_str))?;

    let profile = OrderProfile::new(b, primes.iter().copied())?;
    let big_d = density_bound(&profile, &eps)?;
    println!("b = {b}, S = {primes:?}, eps = {eps}: D = {big_d}");

    // quadratic in d, so stay small
    let limit = (floor_bound(&big_d).try_into().unwrap_or(u64::MAX)).min(400) * 30;
    let dens = cantor_rationals::cantor::smooth_numbers(&primes, limit);
    let mut rows = vec![];
    for d in dens.into_iter().filter(|&d| d > 1) {
        let mut sparse = 0;
        for a in (1..d).filter(|a| a.gcd(&d) == 1) {
            let x = ReducedFraction::new(a, d)?;
            if !density_report(&orbit(b, x)?.points, &eps)?.is_dense {
                sparse += 1;
            }
        }
        rows.push((d, sparse));
    }
    for (d, sparse) in rows {
        let side = if num_rational::BigRational::from_integer(d.into()) > big_d { "above D" } else { "below D" };
        println!("  d = {d:>6} ({side}): {sparse} fractions with non-dense orbit");
    }
    Ok(())
}
