//! Command-line front end. Data goes to `out`, diagnostics to `err`; every
//! subcommand prints JSON by default and CSV with `--format csv`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{aggregate_constants, collect_reports};
use crate::cantor::{
    count_summary, enumerate_members, enumerate_s_integers, expand, member, DigitSet, EndpointConvention,
    Expansion,
};
use crate::error::{Error, Result};
use crate::fraction::{parse_rational, ReducedFraction};
use crate::numtheory::{factorize, mult_order_bruteforce};
use crate::orbit::{decompose, density_bound, density_report, floor_bound, orbit};
use crate::orders::OrderProfile;
use crate::verify::run_checks;

/// Moduli up to this size get a brute-force cross-check.
const VERIFY_LIMIT: u64 = 1_000_000;

pub const THREADS_ENV: &str = "CANTOR_RATIONALS_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    WithEndpoints,
    WithoutEndpoints,
}

#[derive(Debug, Parser)]
#[command(name = "cantor-rationals", version, about = "Rationals in generalized Cantor sets")]
struct Cli {
    /// Worker threads for enumeration; defaults to the number of CPUs.
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multiplicative order of the base modulo d.
    #[command(group(ArgGroup::new("target").required(true).args(["modulus", "primes"])))]
    Order {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, value_delimiter = ',', requires = "exponents")]
        primes: Option<Vec<u64>>,
        #[arg(long, value_delimiter = ',', requires = "primes")]
        exponents: Option<Vec<u32>>,
    },
    /// Thresholds n_p, N_p and ord(b, p^n_p) for a prime set.
    Profile {
        #[arg(long)]
        base: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Orbit of a fraction under x -> b x mod 1.
    Orbit {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        frac: ReducedFraction,
        #[arg(long, requires = "primes")]
        decompose: bool,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
    /// Denominator bound D beyond which orbits are epsilon-dense.
    Density {
        #[arg(long)]
        base: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        frac: Option<ReducedFraction>,
    },
    /// Provably complete list of S-integers in C(b, digits).
    Certify {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        digits: String,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, value_enum, default_value = "without-endpoints")]
        convention: Convention,
    },
    /// Whether a fraction lies in C(b, digits).
    Member {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        digits: String,
        #[arg(long)]
        frac: ReducedFraction,
    },
    /// Canonical base-b expansion of a fraction in [0, 1).
    Expand {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        frac: ReducedFraction,
    },
    /// Members of C(b, digits) over a family of denominators.
    #[command(group(ArgGroup::new("dens-source").required(true).args(["max_den", "den_form", "dens"])))]
    Enumerate {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        digits: String,
        #[arg(long)]
        max_den: Option<u64>,
        /// `N^k`, taken for k = 1..=max-exp.
        #[arg(long, requires = "max_exp")]
        den_form: Option<String>,
        #[arg(long)]
        max_exp: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        dens: Option<Vec<u64>>,
        /// Keep only denominators coprime to the base.
        #[arg(long)]
        coprime: bool,
    },
    /// Number of members with denominator at most max-den.
    Count {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        digits: String,
        #[arg(long)]
        max_den: u64,
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        coprime: bool,
        /// Count 0 and 1 in the headline number.
        #[arg(long)]
        endpoints: bool,
    },
    /// Empirical constants for the largest-prime and radical bounds.
    Bounds {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        digits: String,
        #[arg(long)]
        max_den: u64,
        #[arg(long)]
        summary_out: Option<PathBuf>,
    },
    /// Seeded randomized cross-checks; exits 3 on any failure.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            if matches!(e.kind(), DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = write!(out, "{e}");
                return if e.kind() == DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 };
            }
            let _ = writeln!(err, "{}", one_line(&e.to_string()));
            return 2;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn one_line(msg: &str) -> String {
    msg.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with("For more")).collect::<Vec<_>>().join(" ")
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

fn emit_json(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    serde_json::to_writer(&mut *out, v).map_err(io)?;
    writeln!(out).map_err(io)
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(out)
}

fn emit_csv<R: IntoIterator<Item = Vec<String>>>(out: &mut dyn Write, header: &[&str], rows: R) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Numbers that fit in `u64` stay JSON numbers, larger ones become strings.
fn big_json(x: &BigUint) -> Value {
    x.to_u64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn join(xs: &[u64], sep: &str) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let threads = cli.threads.unwrap_or_else(default_threads);
    if threads == 0 {
        return Err(Error::OutOfDomain("--threads must be at least 1".into()));
    }
    let fmt = cli.format;
    match cli.command {
        Command::Order { base, modulus, primes, exponents } => cmd_order(out, fmt, base, modulus, primes, exponents),
        Command::Profile { base, primes } => {
            let profile = OrderProfile::new(base, primes)?;
            match fmt {
                Format::Json => writeln!(out, "{}", profile.to_json()).map_err(io),
                Format::Csv => emit_csv(
                    out,
                    &["p", "n", "N", "ord"],
                    profile.records().map(|(p, r)| vec![p.to_string(), r.n.to_string(), r.big_n.to_string(), r.ord.to_string()]),
                ),
            }
        }
        Command::Orbit { base, frac, decompose: dec, primes } => {
            if dec {
                let profile = OrderProfile::new(base, primes.unwrap_or_default())?;
                let d = decompose(&profile, frac)?;
                return match fmt {
                    Format::Json => emit_json(out, &d),
                    Format::Csv => emit_csv(
                        out,
                        &["base", "fraction", "d", "d0", "d1", "order", "a1_equals_a2"],
                        [vec![
                            base.to_string(),
                            frac.to_string(),
                            d.split.d.to_string(),
                            d.split.d0.to_string(),
                            d.split.d1.to_string(),
                            d.order.to_string(),
                            d.a1_equals_a2.to_string(),
                        ]],
                    ),
                }
                .map(|_| 0);
            }
            let o = orbit(base, frac)?;
            match fmt {
                Format::Json => emit_json(out, &o),
                Format::Csv => emit_csv(
                    out,
                    &["step", "point", "in_cycle"],
                    o.points
                        .iter()
                        .enumerate()
                        .map(|(i, p)| vec![i.to_string(), p.to_string(), (i >= o.preperiod).to_string()]),
                ),
            }
        }
        Command::Density { base, primes, epsilon, frac } => {
            let eps = parse_rational(&epsilon)?;
            let profile = OrderProfile::new(base, primes)?;
            let big_d = density_bound(&profile, &eps)?;
            let mut v = json!({
                "base": base,
                "primes": profile.primes(),
                "epsilon": eps.to_string(),
                "threshold_product": big_json(&profile.threshold_product()),
                "D": big_d.to_string(),
                "floor_D": big_json(&floor_bound(&big_d)),
            });
            if let Some(x) = frac {
                let o = orbit(base, x)?;
                let rep = density_report(o.cycle(), &eps)?;
                v["fraction"] = json!(x.to_string());
                v["den_exceeds_D"] = json!(BigRational::from_integer(x.den().into()) > big_d);
                v["cover_radius"] = json!(rep.cover_radius.to_string());
                v["gap_radius"] = json!(rep.gap_radius.to_string());
                v["is_dense"] = json!(rep.is_dense);
            }
            match fmt {
                Format::Json => emit_json(out, &v),
                Format::Csv => {
                    let obj = v.as_object().expect("object");
                    let cell = |x: &Value| match x {
                        Value::String(s) => s.clone(),
                        Value::Array(a) => a.iter().map(|y| y.to_string()).collect::<Vec<_>>().join(" "),
                        other => other.to_string(),
                    };
                    let header: Vec<&str> = obj.keys().map(String::as_str).collect();
                    emit_csv(out, &header, [obj.values().map(cell).collect()])
                }
            }
        }
        Command::Certify { base, digits, primes, epsilon, convention } => {
            let ds = DigitSet::parse(base, &digits)?;
            let profile = OrderProfile::new(base, primes)?;
            let eps = epsilon.as_deref().map(parse_rational).transpose()?;
            let convention = match convention {
                Convention::WithEndpoints => EndpointConvention::WithEndpoints,
                Convention::WithoutEndpoints => EndpointConvention::WithoutEndpoints,
            };
            let cert = enumerate_s_integers(&ds, &profile, eps.as_ref(), convention, threads)?;
            match fmt {
                Format::Json => emit_json(out, &cert),
                Format::Csv => emit_csv(
                    out,
                    &["num", "den", "endpoint"],
                    cert.members
                        .iter()
                        .map(|x| vec![x.num().to_string(), x.den().to_string(), x.is_endpoint().to_string()]),
                ),
            }
        }
        Command::Member { base, digits, frac } => {
            let ds = DigitSet::parse(base, &digits)?;
            let is_member = member(&ds, frac);
            let e = member_expansion(&ds, frac)?;
            let row = json!({
                "fraction": frac.to_string(),
                "member": is_member,
                "preperiod": e.preperiod,
                "period": e.period,
            });
            match fmt {
                Format::Json => emit_json(out, &row),
                Format::Csv => emit_csv(
                    out,
                    &["fraction", "member", "preperiod", "period"],
                    [vec![frac.to_string(), is_member.to_string(), join(&e.preperiod, " "), join(&e.period, " ")]],
                ),
            }
        }
        Command::Expand { base, frac } => {
            let e = expand(base, frac)?;
            match fmt {
                Format::Json => emit_json(
                    out,
                    &json!({"fraction": frac.to_string(), "preperiod": e.preperiod, "period": e.period}),
                ),
                Format::Csv => emit_csv(
                    out,
                    &["fraction", "preperiod", "period"],
                    [vec![frac.to_string(), join(&e.preperiod, " "), join(&e.period, " ")]],
                ),
            }
        }
        Command::Enumerate { base, digits, max_den, den_form, max_exp, dens, coprime } => {
            let ds = DigitSet::parse(base, &digits)?;
            let mut denominators = match (max_den, den_form, dens) {
                (Some(t), _, _) => (1..=t).collect(),
                (_, Some(form), _) => power_denominators(&form, max_exp.unwrap_or(0))?,
                (_, _, Some(list)) => list,
                _ => unreachable!("clap enforces one denominator source"),
            };
            if coprime {
                denominators.retain(|d| d.gcd(&base) == 1);
            }
            denominators.sort_unstable();
            denominators.dedup();
            let members = enumerate_members(&ds, &denominators, threads)?;
            write_members(out, fmt, &ds, &members)
        }
        Command::Count { base, digits, max_den, reduced, coprime, endpoints } => {
            let ds = DigitSet::parse(base, &digits)?;
            let s = count_summary(&ds, max_den, coprime, threads)?;
            match fmt {
                Format::Json => {
                    let mut v = serde_json::to_value(&s).map_err(io)?;
                    v["reduced"] = json!(reduced);
                    v["includes_endpoints"] = json!(endpoints);
                    v["count"] = json!(s.count(reduced, endpoints));
                    emit_json(out, &v)
                }
                Format::Csv => emit_csv(
                    out,
                    &["T", "count_reduced", "count_all", "includes_endpoints"],
                    [true, false].map(|with| {
                        vec![
                            max_den.to_string(),
                            s.count(true, with).to_string(),
                            s.count(false, with).to_string(),
                            with.to_string(),
                        ]
                    }),
                ),
            }
        }
        Command::Bounds { base, digits, max_den, summary_out } => {
            let ds = DigitSet::parse(base, &digits)?;
            let reports = collect_reports(&ds, max_den, threads)?;
            let summary = aggregate_constants(&reports)?;
            if let Some(path) = &summary_out {
                let text = serde_json::to_string_pretty(&summary).map_err(io)?;
                std::fs::write(path, text + "\n").map_err(|e| io(format!("{}: {e}", path.display())))?;
            }
            match fmt {
                Format::Json => emit_json(out, &json!({"summary": summary, "reports": reports})),
                Format::Csv => {
                    if summary_out.is_none() {
                        let _ = writeln!(err, "{}", serde_json::to_string(&summary).map_err(io)?);
                    }
                    let digit_list = join(ds.digits(), " ");
                    emit_csv(
                        out,
                        &["b", "digits", "a", "d", "P", "rad", "branch", "K_emp", "c_emp_rad", "c_emp_P"],
                        reports.iter().map(|r| {
                            vec![
                                base.to_string(),
                                digit_list.clone(),
                                r.fraction.num().to_string(),
                                r.fraction.den().to_string(),
                                r.largest_prime.to_string(),
                                r.rad.to_string(),
                                r.branch.label().to_string(),
                                r.k_emp.to_string(),
                                r.c_emp_rad.to_string(),
                                r.c_emp_p.to_string(),
                            ]
                        }),
                    )
                }
            }
        }
        Command::Verify { trials, seed } => {
            let report = run_checks(trials, seed);
            match fmt {
                Format::Json => emit_json(out, &report)?,
                Format::Csv => emit_csv(
                    out,
                    &["check", "trials", "failures", "first_failure"],
                    report.checks.iter().map(|c| {
                        vec![
                            c.name.to_string(),
                            c.trials.to_string(),
                            c.failures.to_string(),
                            c.first_failure.clone().unwrap_or_default(),
                        ]
                    }),
                )?,
            }
            if !report.passed {
                let _ = writeln!(err, "error: verification failed (seed {seed})");
                return Ok(3);
            }
            Ok(())
        }
    }
    .map(|_| 0)
}

fn cmd_order(
    out: &mut dyn Write,
    fmt: Format,
    base: u64,
    modulus: Option<u64>,
    primes: Option<Vec<u64>>,
    exponents: Option<Vec<u32>>,
) -> Result<()> {
    let exps: BTreeMap<u64, u32> = match (modulus, primes, exponents) {
        (Some(m), _, _) => {
            if m == 0 {
                return Err(Error::OutOfDomain("modulus must be positive".into()));
            }
            if m.gcd(&base) != 1 {
                return Err(Error::NotCoprime { base, modulus: m });
            }
            factorize(m)?.factors().iter().copied().collect()
        }
        (None, Some(ps), Some(es)) => {
            if ps.len() != es.len() {
                return Err(Error::OutOfDomain(format!(
                    "{} primes but {} exponents",
                    ps.len(),
                    es.len()
                )));
            }
            let mut m = BTreeMap::new();
            for (p, e) in ps.into_iter().zip(es) {
                if m.insert(p, e).is_some() {
                    return Err(Error::OutOfDomain(format!("prime {p} listed twice")));
                }
            }
            m
        }
        _ => unreachable!("clap enforces a modulus or primes with exponents"),
    };
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let support: Vec<u64> = exps.iter().filter(|(_, &e)| e > 0).map(|(&p, _)| p).collect();
    let modulus: BigUint = exps.iter().map(|(&p, &e)| BigUint::from(p).pow(e)).product();
    let order = if support.is_empty() {
        BigUint::from(1u32)
    } else {
        let profile = OrderProfile::new(base, support)?;
        profile.order_via_formula(&exps.iter().filter(|(_, &e)| e > 0).map(|(&p, &e)| (p, e)).collect())?
    };
    let verified = match modulus.to_u64().filter(|&m| m <= VERIFY_LIMIT) {
        Some(m) => {
            let brute = mult_order_bruteforce(base, m)?;
            if BigUint::from(brute) != order {
                return Err(Error::Invariant(format!("formula gives {order}, brute force {brute} for b={base} d={m}")));
            }
            Some(true)
        }
        None => None,
    };
    match fmt {
        Format::Json => emit_json(
            out,
            &json!({
                "base": base,
                "modulus": big_json(&modulus),
                "order": big_json(&order),
                "verified": verified,
            }),
        ),
        Format::Csv => emit_csv(
            out,
            &["base", "modulus", "order", "verified"],
            [vec![
                base.to_string(),
                modulus.to_string(),
                order.to_string(),
                verified.map_or(String::new(), |v| v.to_string()),
            ]],
        ),
    }
}

/// `N^k` for `k = 1..=max_exp`.
fn power_denominators(form: &str, max_exp: u32) -> Result<Vec<u64>> {
    let bad = || Error::Parse(format!("expected --den-form N^k, got {form:?}"));
    let (n, k) = form.split_once('^').ok_or_else(bad)?;
    if k.trim() != "k" {
        return Err(bad());
    }
    let n: u64 = n.trim().parse().map_err(|_| bad())?;
    if n < 2 {
        return Err(Error::OutOfDomain(format!("--den-form base must be at least 2, got {n}")));
    }
    (1..=max_exp)
        .map(|k| n.checked_pow(k).ok_or(Error::Overflow("--den-form N^k exceeds 64 bits")))
        .collect()
}

/// The expansion of a member that uses only allowed digits; for 1/1 that is
/// `0.(b-1)(b-1)...`. Non-members get their canonical expansion.
fn member_expansion(ds: &DigitSet, x: ReducedFraction) -> Result<Expansion> {
    let b = ds.base();
    if x == ReducedFraction::ONE {
        return Ok(Expansion { base: b, preperiod: vec![], period: vec![b - 1] });
    }
    let e = expand(b, x)?;
    if !e.uses_only(ds) {
        if let Some(alt) = e.dual().filter(|alt| alt.uses_only(ds)) {
            return Ok(alt);
        }
    }
    Ok(e)
}

#[derive(Serialize)]
struct MemberRow {
    num: u64,
    den: u64,
    preperiod: Vec<u64>,
    period: Vec<u64>,
    endpoint: bool,
}

fn write_members(out: &mut dyn Write, fmt: Format, ds: &DigitSet, members: &[ReducedFraction]) -> Result<()> {
    let rows = members.iter().map(|&x| {
        member_expansion(ds, x).map(|e| MemberRow {
            num: x.num(),
            den: x.den(),
            preperiod: e.preperiod,
            period: e.period,
            endpoint: x.is_endpoint(),
        })
    });
    match fmt {
        Format::Json => {
            for row in rows {
                emit_json(out, &row?)?;
            }
            Ok(())
        }
        Format::Csv => {
            let rows = rows.collect::<Result<Vec<_>>>()?;
            emit_csv(
                out,
                &["num", "den", "preperiod", "period", "endpoint"],
                rows.into_iter().map(|r| {
                    vec![
                        r.num.to_string(),
                        r.den.to_string(),
                        join(&r.preperiod, " "),
                        join(&r.period, " "),
                        r.endpoint.to_string(),
                    ]
                }),
            )
        }
    }
}
