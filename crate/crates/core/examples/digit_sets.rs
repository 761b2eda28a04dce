//! Gap geometry of a few digit sets: the quoted m / 2b radius against the
//! exact sup-distance, and membership of some fractions.

use cantor_rationals::cantor::{expand, member, DigitSet};
use cantor_rationals::ReducedFraction;

fn main() -> cantor_rationals::Result<()> {
    let sets = [
        DigitSet::new(3, [0, 2])?,
        DigitSet::new(4, [1, 2])?,
        DigitSet::new(5, [0, 4])?,
        DigitSet::new(10, [0, 1, 2, 3, 4, 5, 6, 7, 8])?,
        DigitSet::new(7, [2, 3, 6])?,
    ];
    for ds in &sets {
        let s = ds.summary();
        println!(
            "{ds}: m = {}, m/2b = {}, sup-distance = {}, certificate eps = {}{}",
            s.m,
            s.epsilon_claimed,
            s.epsilon_exact,
            s.epsilon_certificate,
            if s.claimed_differs { "  (differs)" } else { "" }
        );
    }

    let c = &sets[0];
    for f in ["1/4", "3/4", "1/10", "1/3", "1/2", "4/9", "1/1"] {
        let x: ReducedFraction = f.parse()?;
        let e = if x == ReducedFraction::ONE { None } else { Some(expand(3, x)?) };
        let digits = e.map_or("-".into(), |e| format!("{:?} ({:?})", e.preperiod, e.period));
        println!("  {x:>5} in {c}: {:<5} base 3: {digits}", member(c, x));
    }
    Ok(())
}
