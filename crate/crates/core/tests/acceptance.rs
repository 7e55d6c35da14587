//! Acceptance criteria, one test per criterion. Each test writes a single
//! `PASS`/`FAIL` line to stderr (bypassing output capture) before asserting.

mod common;

use std::io::Write;
use std::time::Instant;

use constforge::congruence::{
    bernoulli_mod, harmonic1_mod, rational_residue, sieve, sweep, CongruenceId, CongruenceStatus, ModContext,
};
use constforge::ps::{verify_coeff_ratio, verify_product_coeff, verify_sin_identity, verify_sinh_identity};
use constforge::real::ball::pow10_neg_mag;
use constforge::real::{const_pi, Ball};
use constforge::seq::bernoulli_upto;
use constforge::series::{catalog, eval_series, gf_check, lookup, profile, verify_identity, GfFamily};
use constforge::QuadExt;

use common::{ball_prefix, contains_surd, exact_prefix, q};

fn report(n: u32, name: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "acceptance criterion {n} [{name}]: {verdict} ({detail})");
    assert!(ok, "criterion {n} failed: {detail}");
}

/// Every certifiable catalog identity at 1000 digits, gap below 1e-990.
#[test]
fn criterion_1_identity_suite() {
    const DIGITS: u64 = 1000;
    const GAP: i64 = 990;
    let expected = [
        "S1.1",
        "S1.2L",
        "S1.2F",
        "S1.3v",
        "S1.3u",
        "S1.5",
        "S1.6",
        "S1.8",
        "S1.9",
        "S1.11",
        "S1.12",
        "S1.13",
        "S1.14",
        "S1.15",
        "S1.16",
        "S1.18",
        "S1.19",
        "S1.20",
        "S-S6",
        "B-GOSPER",
        "B-ZEILBERGER",
        "B-BBB",
        "B-LOG2-9K",
    ];
    let start = Instant::now();
    let ids: Vec<String> = catalog().into_iter().filter(|s| !s.profile_only).map(|s| s.id).collect();
    let mut failures = Vec::new();
    for id in &ids {
        let r = verify_identity(id, DIGITS).unwrap();
        let certified = r.lhs.rad() <= pow10_neg_mag(GAP) && r.rhs.rad() <= pow10_neg_mag(GAP);
        if !(r.passed() && r.gap.lt_pow10_neg(GAP) && certified) {
            failures.push(format!("{id}: gap {}", r.gap));
        }
    }
    let ok = failures.is_empty() && ids == expected;
    let detail = format!(
        "{}/{} identities with gap < 1e-{GAP} at {DIGITS} digits in {:.1} s{}",
        ids.len() - failures.len(),
        expected.len(),
        start.elapsed().as_secs_f64(),
        if failures.is_empty() { String::new() } else { format!("; failing: {}", failures.join(", ")) }
    );
    report(1, "identity suite", ok, &detail);
}

/// Generating functions at their documented points, 200 digits.
#[test]
fn criterion_2_generating_functions() {
    const DIGITS: u64 = 200;
    const GAP: i64 = 190;
    let x = |s: &str| s.parse::<QuadExt>().unwrap();
    let points: Vec<(GfFamily, QuadExt, Option<&str>)> = vec![
        (GfFamily::Gf1_4, x("1"), Some("S1.5")),
        (GfFamily::Gf1_4, x("3"), Some("S1.6")),
        (GfFamily::Gf1_7, x("1"), Some("S1.11")),
        (GfFamily::Gf1_7, x("2"), Some("S1.12")),
        (GfFamily::Gf1_7, x("3"), Some("S1.13")),
        (GfFamily::Gf1_10, x("8"), Some("S1.14")),
        (GfFamily::Gf1_10, x("3"), Some("S1.15")),
        (GfFamily::Gf1_10, x("4"), Some("S1.16")),
        (GfFamily::Gf1_17, x("1"), Some("S1.18")),
        (GfFamily::Gf1_17, x("sqrt(2)"), Some("S1.19")),
        (GfFamily::Gf1_17, x("sqrt(3)"), Some("S1.20")),
        (GfFamily::Gf2_1, x("(3+sqrt(5))/2"), None),
        (GfFamily::Gf2_1, x("(3-sqrt(5))/2"), None),
        (GfFamily::Dk3, x("1"), None),
        (GfFamily::Dk3, x("2"), None),
        (GfFamily::Dk4, x("1"), None),
        (GfFamily::Dk4, x("2"), None),
    ];
    // the two golden-ratio sub-sums: (2/3) (3 pi/10)^4 and (2/3) (pi/10)^4
    let prec = 800;
    let pi = const_pi(prec);
    let sub_sum = |c: i64| pi.mul_small(c, prec).div_small(10, prec).pow(4, prec).mul_small(2, prec).div_small(3, prec);
    let golden = [sub_sum(3), sub_sum(1)];
    let mut failures = Vec::new();
    let mut golden_iter = golden.iter();
    for (fam, x, id) in &points {
        let r = gf_check(*fam, x, DIGITS).unwrap();
        let documented: Option<Ball> = match (fam, id) {
            (_, Some(id)) => Some(verify_identity(id, DIGITS).unwrap().rhs),
            (GfFamily::Gf2_1, None) => golden_iter.next().cloned(),
            _ => None,
        };
        let matches_doc = documented.is_none_or(|d| r.lhs.gap_bound(&d).lt_pow10_neg(GAP));
        if !(r.passed() && r.gap.lt_pow10_neg(GAP) && matches_doc) {
            failures.push(format!("{fam} at {x}"));
        }
    }
    let detail = format!(
        "{}/{} points with gap < 1e-{GAP} at {DIGITS} digits{}",
        points.len() - failures.len(),
        points.len(),
        if failures.is_empty() { String::new() } else { format!("; failing: {}", failures.join(", ")) }
    );
    report(2, "generating functions", failures.is_empty(), &detail);
}

/// Exact power-series identities and coefficient lemmas, zero tolerance.
#[test]
fn criterion_3_exact_checks() {
    let orders: Vec<usize> = (3..=41).step_by(2).collect();
    let sin_ok = orders.iter().all(|&n| verify_sin_identity(n).passed);
    let sinh_ok = orders.iter().all(|&n| verify_sinh_identity(n).passed);
    let prod = verify_product_coeff(50);
    let ratio = verify_coeff_ratio(40);
    let ok = sin_ok
        && sinh_ok
        && prod.len() == 50
        && prod.iter().all(|c| c.passed)
        && ratio.len() == 40
        && ratio.iter().all(|c| c.passed);
    let detail = format!(
        "sin at odd orders 3..=41: {sin_ok}, sinh at odd orders 3..=41: {sinh_ok}, product k<=50: {}/50, \
         ratio k<=40: {}/40",
        prod.iter().filter(|c| c.passed).count(),
        ratio.iter().filter(|c| c.passed).count()
    );
    report(3, "exact proof checks", ok, &detail);
}

/// Congruence sweeps; any failure would be a counterexample and is named.
#[test]
fn criterion_4_congruence_sweeps() {
    let ranges = [
        (CongruenceId::C1a, 5, 2000),
        (CongruenceId::C1b, 5, 1000),
        (CongruenceId::C2a, 5, 5000),
        (CongruenceId::C2b, 7, 5000),
        (CongruenceId::Cs6, 5, 1000),
    ];
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (id, lo, hi) in ranges {
        let reports = sweep(id, lo, hi).unwrap();
        let pass = reports.iter().filter(|r| r.status == CongruenceStatus::Pass).count();
        let bad: Vec<String> = reports
            .iter()
            .filter(|r| r.status != CongruenceStatus::Pass)
            .map(|r| format!("p={} {} lhs={} rhs={:?}", r.p, r.status, r.lhs, r.rhs))
            .collect();
        ok &= bad.is_empty() && !reports.is_empty();
        parts.push(format!("{id} {lo}..={hi}: {pass}/{}", reports.len()));
        if !bad.is_empty() {
            parts.push(format!("counterexamples {}", bad.join(", ")));
        }
    }
    let detail = format!("{}; {:.1} s", parts.join(", "), start.elapsed().as_secs_f64());
    report(4, "congruence sweeps", ok, &detail);
}

/// Independent cross-validations.
#[test]
fn criterion_5_cross_validation() {
    let wolstenholme: Vec<u64> = sieve(10_000).into_iter().filter(|&p| p > 3).collect();
    let w_ok = wolstenholme.iter().all(|&p| harmonic1_mod(p, 2).unwrap() == 0);

    let b = bernoulli_upto(195);
    let bern: Vec<u64> = sieve(200).into_iter().filter(|&p| p >= 7).collect();
    let b_ok = bern.iter().all(|&p| {
        let ctx = ModContext::new(p, 1).unwrap();
        bernoulli_mod(p).unwrap() == rational_residue(&b[(p - 5) as usize], &ctx).unwrap()
    });

    let entries = catalog();
    let prefix_ok = entries.iter().all(|s| contains_surd(&ball_prefix(s, 25, 256), &exact_prefix(s, 25)));

    let s11 = lookup("S1.1").unwrap();
    let exact_ok = exact_prefix(&s11, 4) == QuadExt::ratio(2009, 40320)
        && ball_prefix(&s11, 4, 128).contains_rational(&q(2009, 40320));

    let detail = format!(
        "Wolstenholme {} primes: {w_ok}, Bernoulli {} primes: {b_ok}, 25-term prefixes of {} entries: {prefix_ok}, \
         S1.1 through k=4 = 2009/40320: {exact_ok}",
        wolstenholme.len(),
        bern.len(),
        entries.len()
    );
    report(5, "cross-validation", w_ok && b_ok && prefix_ok && exact_ok, &detail);
}

/// Fast versus slow convergence.
#[test]
fn criterion_6_convergence_economics() {
    let terms = eval_series(&lookup("S1.1").unwrap(), 1000).unwrap().terms;
    let leibniz = profile("B-LEIBNIZ", 1000).unwrap();
    let last = leibniz.last().unwrap();
    let ok = terms <= 1800 && last.k == 999 && last.digits <= 4.0;
    let detail = format!(
        "S1.1 needs {terms} terms for 1000 digits (limit 1800), B-LEIBNIZ after 1000 terms has {:.2} digits (limit 4)",
        last.digits
    );
    report(6, "convergence economics", ok, &detail);
}
