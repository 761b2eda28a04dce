//! Multiplicative orders from the threshold table of a prime set.
//!
//! cargo run --example orders -- 10 3,7,11

use std::collections::BTreeMap;

use cantor_rationals::numtheory::{factorize, mult_order_bruteforce};
use cantor_rationals::OrderProfile;

fn main() -> cantor_rationals::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let b: u64 = args.first().map_or(10, |s| s.parse().unwrap());
    let primes: Vec<u64> = args.get(1).map_or("3,7,11", String::as_str).split(',').map(|s| s.parse().unwrap()).collect();

    let profile = OrderProfile::new(b, primes.iter().copied())?;
    println!("{}", profile.to_json());
    println!("prod p^N_p = {}", profile.threshold_product());

    // small moduli: formula next to brute force
    for d in [21u64, 99, 693, 3 * 3 * 3 * 7 * 7 * 11] {
        let f = factorize(d)?;
        if f.primes().all(|p| profile.contains(p)) {
            println!("ord({b}, {d}) = {} (brute force {})", profile.order_of(&f)?, mult_order_bruteforce(b, d)?);
        }
    }

    // huge exponents only go through the formula
    let exps: BTreeMap<u64, u32> = primes.iter().map(|&p| (p, 40)).collect();
    println!("ord({b}, prod p^40) = {}", profile.order_via_formula(&exps)?);
    Ok(())
}
