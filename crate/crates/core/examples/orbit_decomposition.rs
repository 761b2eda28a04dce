//! The x -> b x mod 1 orbit of a fraction and its split into a comb of
//! d0 translates of a bounded orbit.
//!
//! cargo run --example orbit_decomposition -- 2 5/72 3

use cantor_rationals::orbit::{decompose, orbit};
use cantor_rationals::{OrderProfile, ReducedFraction};

fn main() -> cantor_rationals::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let b: u64 = args.first().map_or(2, |s| s.parse().unwrap());
    let x: ReducedFraction = args.get(1).map_or("1/81", String::as_str).parse()?;

    let o = orbit(b, x)?;
    let show = |xs: &[ReducedFraction]| xs.iter().map(|y| y.to_string()).collect::<Vec<_>>().join(" ");
    println!("orbit of {x} under x -> {b}x mod 1: preperiod {}, period {}", o.preperiod, o.period);
    if !o.transient().is_empty() {
        println!("  transient: {}", show(o.transient()));
    }
    if o.period <= 40 {
        println!("  cycle:     {}", show(o.cycle()));
    }

    // the decomposition concerns the purely periodic part
    let y = o.cycle()[0];
    if y.den() == 1 {
        return Ok(());
    }
    let primes: Vec<u64> = match args.get(2) {
        Some(s) => s.split(',').map(|p| p.parse().unwrap()).collect(),
        None => cantor_rationals::numtheory::factorize(y.den())?.primes().collect(),
    };
    let profile = OrderProfile::new(b, primes)?;
    let dec = decompose(&profile, y)?;
    println!(
        "{y}: d = {} = d0 * d1 = {} * {}; |A1| = {} = d0 * ord({b}, d1); A1 = A2: {}",
        dec.split.d, dec.split.d0, dec.split.d1, dec.order, dec.a1_equals_a2
    );
    Ok(())
}
