//! Fractions with a power-of-two or power-of-three denominator in the
//! middle-thirds Cantor set.
//!
//! cargo run --example dyadic_cantor

use std::time::Instant;

use cantor_rationals::cantor::{enumerate_members, members_with_denominator, DigitSet};

fn main() -> cantor_rationals::Result<()> {
    let c = DigitSet::new(3, [0, 2])?;

    let t = Instant::now();
    let dens: Vec<u64> = (1..=40).map(|k| 1u64 << k).collect();
    let dyadic = enumerate_members(&c, &dens, 4)?;
    let shown: Vec<String> = dyadic.iter().map(|x| x.to_string()).collect();
    println!("{c} over 2^1..2^40: {} [{:.2?}]", shown.join(", "), t.elapsed());

    for n in 0..=12u32 {
        let d = 3u64.pow(n);
        let all = members_with_denominator(&c, d, false)?.len();
        println!("  a/3^{n:<2} in C: {all:>5} = 2^{}", n + 1);
    }
    Ok(())
}
