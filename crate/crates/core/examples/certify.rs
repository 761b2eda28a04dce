//! Provably complete list of S-integers in a Cantor set.
//!
//! cargo run --example certify -- 3 0,2 2,5

use cantor_rationals::cantor::{enumerate_s_integers, DigitSet, EndpointConvention};
use cantor_rationals::OrderProfile;

fn main() -> cantor_rationals::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let b: u64 = args.first().map_or(3, |s| s.parse().unwrap());
    let ds = DigitSet::parse(b, args.get(1).map_or("0,2", String::as_str))?;
    let primes: Vec<u64> = args.get(2).map_or("2,5", String::as_str).split(',').map(|s| s.parse().unwrap()).collect();

    let profile = OrderProfile::new(b, primes)?;
    let cert = enumerate_s_integers(&ds, &profile, None, EndpointConvention::WithoutEndpoints, 4)?;
    println!("{ds}, S = {:?}", cert.primes);
    println!("  eps = {}, D = {}, {} denominators scanned", cert.epsilon, cert.density_bound, cert.denominators_scanned);
    let shown: Vec<String> = cert.members.iter().map(|x| x.to_string()).collect();
    println!("  {}", shown.join(" "));
    println!(
        "  {} elements without 0 and 1, {} with them",
        cert.count_without_endpoints, cert.count_with_endpoints
    );
    println!("  {}", cert.justification);
    Ok(())
}
