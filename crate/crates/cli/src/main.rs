//! `constforge`: certified series evaluation, exact power-series checks and
//! congruence sweeps from the command line.
//!
//! Exit status is 0 when every check passes, 1 when at least one fails and 2
//! on usage, domain or refusal errors.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use constforge::congruence::{check_congruence, sweep_primes, CongruenceId, CongruenceStatus};
use constforge::ps::{verify_coeff_ratio, verify_product_coeff, verify_sin_identity, verify_sinh_identity, PsCheck};
use constforge::real::{const_pi, digits_to_bits};
use constforge::series::{catalog, gf_check, profile, verify_identity, EvalReport, GfFamily};
use constforge::{Error, QuadExt};

/// Displayed significant digits of balls in table mode; the ball renderer
/// never prints more than the radius certifies.
const TABLE_DIGITS: usize = 32;

#[derive(Parser, Debug)]
#[command(name = "constforge", version, about = "Certified constants from central binomial series")]
struct Cli {
    /// Emit one JSON object per line (same as `--output json`).
    #[arg(long, global = true)]
    json: bool,

    #[arg(long, global = true, value_enum, default_value_t = Output::Table)]
    output: Output,

    /// Report wall-clock milliseconds; without it `ms` is 0 so output is
    /// byte-for-byte reproducible.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Table,
    Json,
}

#[derive(Args, Debug, Clone, Copy)]
struct Digits {
    /// Decimal digits to certify.
    #[arg(long, env = "CONSTFORGE_DIGITS", default_value_t = 100,
          value_parser = clap::value_parser!(u64).range(10..=1_000_000))]
    digits: u64,
}

#[derive(Args, Debug, Clone, Copy)]
struct Jobs {
    /// Worker threads; results are always reported in input order.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    jobs: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the series catalog.
    List,
    /// Certify one catalog identity.
    Verify {
        #[arg(long)]
        id: String,
        #[command(flatten)]
        digits: Digits,
    },
    /// Certify every catalog identity that converges fast enough.
    VerifyAll {
        #[command(flatten)]
        digits: Digits,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Compare a generating function with its series at a point.
    Gf {
        #[arg(long)]
        family: String,
        /// Point such as `3`, `1/2`, `sqrt(2)` or `(3+sqrt(5))/2`.
        #[arg(long)]
        x: String,
        #[command(flatten)]
        digits: Digits,
    },
    /// Check the sine and hyperbolic sine series identities through `z^order`.
    PsVerify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=400))]
        order: u64,
    },
    /// Check the odd-square product and coefficient ratio for `k <= kmax`.
    ProdCoeff {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=2000))]
        kmax: u64,
    },
    /// Sweep a prime congruence over `pmin..=pmax`.
    Cong {
        #[arg(long)]
        id: String,
        #[arg(long)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Correct digits of partial sums against the closed form.
    Profile {
        #[arg(long)]
        id: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10_000_000))]
        terms: u64,
    },
    /// Print π truncated to certified digits after the point.
    Pi {
        #[command(flatten)]
        digits: Digits,
    },
}

struct Reporter {
    json: bool,
    timing: bool,
    out: io::StdoutLock<'static>,
}

impl Reporter {
    fn emit<T: Serialize>(&mut self, value: &T, table: impl FnOnce() -> String) {
        let line = if self.json { serde_json::to_string(value).expect("reports serialize") } else { table() };
        // a closed pipe is not worth a panic
        let _ = writeln!(self.out, "{line}");
    }

    fn note(&mut self, line: &str) {
        if !self.json {
            let _ = writeln!(self.out, "{line}");
        }
    }

    fn eval(&mut self, mut r: EvalReport) -> bool {
        if !self.timing {
            r.ms = 0;
        }
        let timing = self.timing;
        self.emit(&r, || {
            format!(
                "{:<12} {:<4} terms={:<7} gap<={:<10} lhs={}  rhs={}{}",
                r.id,
                r.status,
                r.terms,
                r.gap.to_string(),
                r.lhs.to_decimal(TABLE_DIGITS.min(r.digits as usize)),
                r.rhs.to_decimal(TABLE_DIGITS.min(r.digits as usize)),
                if timing { format!("  {} ms", r.ms) } else { String::new() }
            )
        });
        r.passed()
    }
}

fn pool(jobs: Jobs) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.jobs as usize)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start workers: {e}")))
}

/// Outcome of a subcommand: `Ok(true)` when every check passed.
fn run(cli: Cli, rep: &mut Reporter) -> Result<bool, Error> {
    match cli.command {
        Command::List => {
            for s in catalog() {
                let row = json!({
                    "id": s.id,
                    "summand": s.summand,
                    "x": s.x,
                    "rhs": s.rhs.to_string(),
                    "profile_only": s.profile_only,
                });
                rep.emit(&row, || {
                    let tag = if s.profile_only { "  [profile only]" } else { "" };
                    format!("{:<12} sum_k {}  (x = {})  =  {}{tag}", s.id, s.summand, s.x, s.rhs)
                });
            }
            Ok(true)
        }
        Command::Verify { id, digits } => {
            let r = verify_identity(&id, digits.digits)?;
            Ok(rep.eval(r))
        }
        Command::VerifyAll { digits, jobs } => {
            let ids: Vec<String> = catalog().into_iter().filter(|s| !s.profile_only).map(|s| s.id).collect();
            let reports: Vec<Result<EvalReport, Error>> =
                pool(jobs)?.install(|| ids.par_iter().map(|id| verify_identity(id, digits.digits)).collect());
            let total = reports.len();
            let mut passed = 0;
            for r in reports {
                if rep.eval(r?) {
                    passed += 1;
                }
            }
            rep.note(&format!("{passed}/{total} identities certified at {} digits", digits.digits));
            Ok(passed == total)
        }
        Command::Gf { family, x, digits } => {
            let family: GfFamily = family.parse()?;
            let x: QuadExt = x.parse()?;
            Ok(rep.eval(gf_check(family, &x, digits.digits)?))
        }
        Command::PsVerify { order } => {
            let order = order as usize;
            let checks = [("sin", verify_sin_identity(order)), ("sinh", verify_sinh_identity(order))];
            let mut ok = true;
            for (name, c) in &checks {
                ok &= c.passed;
                rep.emit(
                    &json!({"check": name, "order": c.order, "passed": c.passed, "first_failure": c.first_failure}),
                    || ps_line(name, c),
                );
            }
            Ok(ok)
        }
        Command::ProdCoeff { kmax } => {
            let mut ok = true;
            for (name, checks) in [("product", verify_product_coeff(kmax)), ("ratio", verify_coeff_ratio(kmax))] {
                for c in &checks {
                    ok &= c.passed;
                    let mut row = serde_json::to_value(c).expect("checks serialize");
                    row["check"] = json!(name);
                    rep.emit(&row, || {
                        format!("{name:<8} k={:<5} {:<4} {}", c.k, if c.passed { "pass" } else { "fail" }, c.value)
                    });
                }
            }
            Ok(ok)
        }
        Command::Cong { id, pmin, pmax, jobs } => {
            let id: CongruenceId = id.parse()?;
            let primes = sweep_primes(id, pmin, pmax)?;
            let reports: Vec<_> = pool(jobs)?.install(|| primes.par_iter().map(|&p| check_congruence(id, p)).collect());
            let (mut pass, mut fail, mut skip) = (0, 0, 0);
            for r in reports {
                let r = r?;
                match r.status {
                    CongruenceStatus::Pass => pass += 1,
                    CongruenceStatus::Fail => fail += 1,
                    CongruenceStatus::Inapplicable => skip += 1,
                }
                rep.emit(&r, || {
                    let rhs = r.rhs.map_or_else(|| "-".to_string(), |v| v.to_string());
                    let flag = if r.status == CongruenceStatus::Fail { "  <- counterexample" } else { "" };
                    format!(
                        "{} p={:<6} {:<12} lhs={} rhs={} (mod {}){flag}",
                        r.id, r.p, r.status, r.lhs, rhs, r.modulus
                    )
                });
            }
            rep.note(&format!("{id}: {pass} pass, {fail} fail, {skip} inapplicable over {pmin}..={pmax}"));
            Ok(fail == 0)
        }
        Command::Profile { id, terms } => {
            let points = profile(&id, terms)?;
            for p in &points {
                rep.emit(&json!({"id": id, "k": p.k, "digits": p.digits}), || {
                    format!("{:<12} k={:<9} digits={:.2}", id, p.k, p.digits)
                });
            }
            Ok(true)
        }
        Command::Pi { digits } => {
            let d = digits.digits;
            let text = truncated_pi(d);
            rep.emit(&json!({"constant": "pi", "digits": d, "value": text}), || text.clone());
            Ok(true)
        }
    }
}

fn ps_line(name: &str, c: &PsCheck) -> String {
    match c.first_failure {
        None => format!("{name:<5} identity holds through z^{}", c.order),
        Some(n) => format!("{name:<5} identity FAILS at z^{n} (checked through z^{})", c.order),
    }
}

/// `floor(pi * 10^d)` rendered as `3.` plus `d` digits; precision grows until
/// both ends of the enclosure agree on every printed digit.
fn truncated_pi(d: u64) -> String {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let scale = num_traits::pow(BigInt::from(10), d as usize);
    let mut prec = digits_to_bits(d) + 32;
    let n = loop {
        let pi = const_pi(prec);
        let lo = pi.lower_rational() * &scale;
        let hi = pi.upper_rational() * &scale;
        let (a, b) = (lo.numer().div_floor(lo.denom()), hi.numer().div_floor(hi.denom()));
        if a == b {
            break a;
        }
        prec += 64;
    };
    let s = n.to_string();
    format!("{}.{}", &s[..1], &s[1..])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json || cli.output == Output::Json;
    let mut rep = Reporter { json, timing: cli.timing, out: io::stdout().lock() };
    match run(cli, &mut rep) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = rep.out.flush();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
