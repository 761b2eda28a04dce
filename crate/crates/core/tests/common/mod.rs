//! Slow, direct oracles shared by the integration tests. Nothing here calls
//! into the library's arithmetic.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde_json::{json, Value};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Distinct prime factors by trial division, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least `k >= 1` with `b^k = 1 mod m`, by repeated multiplication.
pub fn order(b: u64, m: u64) -> u64 {
    assert_eq!(gcd(b, m), 1);
    if m == 1 {
        return 1;
    }
    let mut x = b % m;
    let mut k = 1;
    while x != 1 {
        x = x * b % m;
        k += 1;
    }
    k
}

/// Numerators `a` coprime to `d` with `a/d` in `C(b, D)`, for `gcd(d, b) = 1`.
/// Each cycle of `r -> b r mod d` is walked once and marked as a whole.
pub fn members_coprime(b: u64, digits: &[u64], d: u64) -> Vec<u64> {
    assert_eq!(gcd(b, d), 1);
    let allowed: Vec<bool> = (0..b).map(|c| digits.contains(&c)).collect();
    if d == 1 {
        return [0u64, 1].into_iter().filter(|&a| allowed[((b - 1) * a) as usize]).collect();
    }
    // 0 unknown, 1 in, 2 out
    let mut state = vec![0u8; d as usize];
    let mut cycle = Vec::new();
    for a in 1..d {
        if state[a as usize] != 0 || gcd(a, d) != 1 {
            continue;
        }
        cycle.clear();
        let mut r = a;
        let mut ok = true;
        loop {
            cycle.push(r);
            ok &= allowed[(b * r / d) as usize];
            r = b * r % d;
            if r == a {
                break;
            }
        }
        let mark = if ok { 1 } else { 2 };
        for &r in &cycle {
            state[r as usize] = mark;
        }
    }
    (1..d).filter(|&a| state[a as usize] == 1).collect()
}

/// Largest prime, radical.
fn p_and_rad(d: u64) -> (u64, u64) {
    let ps = prime_factors(d);
    (*ps.last().unwrap(), ps.iter().product())
}

/// Minima of the empirical constants over members `a/d` of `C(3, {0, 2})`
/// with `3 < d <= max_den`, `gcd(d, 3) = 1` and `d / 6 >= 3`, computed with
/// the same floating-point expressions the reporter documents.
pub fn bounds_golden(max_den: u64) -> Value {
    let (b, eps_den) = (3u64, 6u64);
    let log_b = (b as f64).ln();
    let mut count = 0u64;
    let mut above = 0u64;
    let mut best: [(f64, (u64, u64)); 3] = [(f64::INFINITY, (0, 0)); 3];
    let mut ratio_max = f64::NEG_INFINITY;
    for d in 2..=max_den {
        if gcd(d, b) != 1 || d < 3 * eps_den {
            continue;
        }
        let members = members_coprime(b, &[0, 2], d);
        if members.is_empty() {
            continue;
        }
        let (p, rad) = p_and_rad(d);
        let l = (d as f64 / (eps_den / 2) as f64).ln();
        let inner = if p > b { l * l.ln() / log_b } else { l / log_b };
        let (pf, df) = (p as f64, d as f64);
        let vals = [pf / inner.sqrt(), rad as f64 / df.ln(), pf / (df.ln() * df.ln().ln()).sqrt()];
        let ratio = l / (pf * pf / pf.ln() * log_b);
        for a in members {
            count += 1;
            above += (p > b) as u64;
            for (slot, &v) in best.iter_mut().zip(&vals) {
                // ascending (d, a), so the first minimum seen wins ties
                if v < slot.0 {
                    *slot = (v, (a, d));
                }
            }
            ratio_max = ratio_max.max(ratio);
        }
    }
    let frac = |(a, d): (u64, u64)| format!("{a}/{d}");
    json!({
        "base": b,
        "digits": [0, 2],
        "max_den": max_den,
        "epsilon": format!("1/{eps_den}"),
        "count": count,
        "count_above": above,
        "K_emp_min": best[0].0.to_string(),
        "K_emp_argmin": frac(best[0].1),
        "c_emp_rad_min": best[1].0.to_string(),
        "c_emp_rad_argmin": frac(best[1].1),
        "c_emp_P_min": best[2].0.to_string(),
        "c_emp_P_argmin": frac(best[2].1),
        "p_ratio_max": ratio_max.to_string(),
    })
}

pub type Q = Ratio<i128>;

/// Hull intervals of the level-`k` approximation of `C(b, D)`, sorted. Their
/// endpoints lie in `C`, and every point of `C` lies in one of them.
pub fn level_intervals(b: u64, digits: &[u64], k: u32) -> Vec<(Q, Q)> {
    let (b, mn, mx) = (b as i128, *digits.first().unwrap() as i128, *digits.last().unwrap() as i128);
    let scale = (b - 1) * b.pow(k);
    let mut words = vec![0i128];
    for _ in 0..k {
        words = words.iter().flat_map(|&w| digits.iter().map(move |&c| w * b + c as i128)).collect();
    }
    words.iter().map(|&w| (Q::new(w * (b - 1) + mn, scale), Q::new(w * (b - 1) + mx, scale))).collect()
}

/// `max_i dist(i / 2^bits, C_k)` over the grid, a lower bound for
/// `sup dist(x, C)` because `C` sits inside `C_k`.
pub fn grid_lower_bound(b: u64, digits: &[u64], bits: u32, k: u32) -> Q {
    let ivs = level_intervals(b, digits, k);
    let n = 1i128 << bits;
    let mut best = Q::from_integer(0);
    for i in 0..=n {
        let x = Q::new(i, n);
        let j = ivs.partition_point(|iv| iv.0 <= x);
        let left = (j > 0).then(|| (x - ivs[j - 1].1).max(Q::from_integer(0)));
        let right = ivs.get(j).map(|iv| iv.0 - x);
        let dist = match (left, right) {
            (Some(l), Some(r)) => l.min(r),
            (l, r) => l.or(r).unwrap(),
        };
        best = best.max(dist);
    }
    best
}

/// The closed orbit of `a/d` under `x -> b x mod 1`, as reduced pairs.
pub fn orbit_set(b: u64, a: u64, d: u64) -> BTreeSet<(u64, u64)> {
    let mut seen = BTreeSet::new();
    let mut r = a % d;
    loop {
        let g = gcd(r, d);
        if !seen.insert((r / g, d / g)) {
            return seen;
        }
        r = b * r % d;
    }
}
