use super::{Baseline, Family, IntWeight, SeriesSpec, Weight};
use crate::error::{Error, Result};
use crate::real::{ClosedForm as C, QuadExt};

fn entry(id: &str, family: Family, weight: Weight, x: QuadExt, rhs: C, summand: &str) -> SeriesSpec {
    SeriesSpec {
        id: id.to_string(),
        family,
        weight,
        x,
        rhs,
        k_start: family.k_start(),
        profile_only: false,
        summand: summand.to_string(),
    }
}

fn baseline(id: &str, b: Baseline, rhs: C, summand: &str) -> SeriesSpec {
    let profile_only = matches!(b, Baseline::Leibniz | Baseline::Zeta2 | Baseline::Zeta4 | Baseline::Log2Alt);
    SeriesSpec { profile_only, ..entry(id, Family::Baseline(b), Weight::ONE, QuadExt::from_int(1), rhs, summand) }
}

/// `num * pi^e / (den * sqrt(r))`, with `r = 1` meaning no root.
fn pi_term(num: i64, e: u32, den: i64, r: i64) -> C {
    let top = if num == 1 { C::pi_pow(e) } else { C::int(num).times(C::pi_pow(e)) };
    match (den, r) {
        (1, 1) => top,
        (d, 1) => top.over(C::int(d)),
        (1, r) => top.over(C::sqrt(r)),
        (d, r) => top.over(C::int(d).times(C::sqrt(r))),
    }
}

/// `-(sqrt(r) / den) * ln^3(arg)`.
fn neg_log_cube(r: i64, den: i64, arg: C) -> C {
    let coeff = if r == 1 { C::ratio(1, den) } else { C::sqrt(r).over(C::int(den)) };
    coeff.times(arg.ln().pow(3)).neg()
}

/// The full series catalog, in a fixed order.
pub fn catalog() -> Vec<SeriesSpec> {
    let inv2 = Family::InvCb { m: 2 };
    let inv1 = Family::InvCb { m: 1 };
    let h2 = Weight::h2_prev;
    let hb = Weight::hbar;
    let one = || QuadExt::from_int(1);
    let q = QuadExt::ratio;
    let inv2_sum = "H2_{k-1} / (k^2 C(2k,k))";
    let odd_sum = "C(2k,k) Hbar_k / (2k+1)";
    vec![
        entry("S1.1", inv2, h2(IntWeight::One), one(), pi_term(1, 4, 1944, 1), inv2_sum),
        entry("S1.2L", inv2, h2(IntWeight::Luc2k), one(), pi_term(41, 4, 7500, 1), "L_{2k} H2_{k-1} / (k^2 C(2k,k))"),
        entry("S1.2F", inv2, h2(IntWeight::Fib2k), one(), pi_term(2, 4, 375, 5), "F_{2k} H2_{k-1} / (k^2 C(2k,k))"),
        entry("S1.3v", inv2, h2(IntWeight::V), one(), pi_term(34, 4, 1875, 1), "v_k H2_{k-1} / (k^2 C(2k,k))"),
        entry("S1.3u", inv2, h2(IntWeight::U), one(), pi_term(2, 4, 125, 5), "u_k H2_{k-1} / (k^2 C(2k,k))"),
        entry("S1.5", inv1, h2(IntWeight::One), one(), pi_term(1, 3, 162, 3), "H2_{k-1} / (k C(2k,k))"),
        entry(
            "S1.6",
            inv1,
            h2(IntWeight::One),
            QuadExt::from_int(3),
            pi_term(4, 3, 27, 3),
            "3^k H2_{k-1} / (k C(2k,k))",
        ),
        entry(
            "S1.8",
            Family::CbOdd,
            hb(IntWeight::Fib2k1),
            q(1, 16),
            pi_term(7, 3, 750, 5),
            "C(2k,k) F_{2k+1} Hbar_k / ((2k+1) 16^k)",
        ),
        entry(
            "S1.9",
            Family::CbOdd,
            hb(IntWeight::Luc2k1),
            q(1, 16),
            pi_term(13, 3, 1500, 1),
            "C(2k,k) L_{2k+1} Hbar_k / ((2k+1) 16^k)",
        ),
        entry(
            "S1.11",
            Family::CbOdd,
            hb(IntWeight::One),
            q(1, 16),
            pi_term(1, 3, 648, 1),
            &format!("{odd_sum} / 16^k"),
        ),
        entry("S1.12", Family::CbOdd, hb(IntWeight::One), q(1, 8), pi_term(1, 3, 192, 2), &format!("{odd_sum} / 8^k")),
        entry(
            "S1.13",
            Family::CbOdd,
            hb(IntWeight::One),
            q(3, 16),
            pi_term(1, 3, 81, 3),
            &format!("{odd_sum} (3/16)^k"),
        ),
        entry(
            "S1.14",
            Family::CbOdd,
            hb(IntWeight::One),
            q(-1, 32),
            neg_log_cube(2, 24, C::int(2)),
            &format!("{odd_sum} / (-32)^k"),
        ),
        entry(
            "S1.15",
            Family::CbOdd,
            hb(IntWeight::One),
            q(-1, 12),
            neg_log_cube(3, 48, C::int(3)),
            &format!("{odd_sum} / (-12)^k"),
        ),
        entry(
            "S1.16",
            Family::CbOdd,
            hb(IntWeight::One),
            q(-1, 16),
            neg_log_cube(1, 3, C::surd(1, 5, 2)),
            &format!("{odd_sum} / (-16)^k"),
        ),
        entry("S1.18", Family::CbPlain, hb(IntWeight::One), q(1, 16), pi_term(1, 2, 36, 3), "C(2k,k) Hbar_k / 16^k"),
        entry("S1.19", Family::CbPlain, hb(IntWeight::One), q(1, 8), pi_term(1, 2, 16, 2), "C(2k,k) Hbar_k / 8^k"),
        entry("S1.20", Family::CbPlain, hb(IntWeight::One), q(3, 16), pi_term(1, 2, 9, 1), "C(2k,k) Hbar_k (3/16)^k"),
        entry(
            "S-S6",
            inv1,
            h2(IntWeight::One),
            QuadExt::from_int(2),
            pi_term(1, 3, 48, 1),
            "2^k H2_{k-1} / (k C(2k,k))",
        ),
        baseline("B-GOSPER", Baseline::Gosper, pi_term(1, 1, 2, 1), "(25k-3) / (2^k C(3k,k))"),
        baseline("B-ZEILBERGER", Baseline::Zeilberger, pi_term(1, 2, 6, 1), "(21k-8) / (k^3 C(2k,k)^3)"),
        baseline("B-BBB", Baseline::Bbb, pi_term(17, 4, 3240, 1), "1 / (k^4 C(2k,k))"),
        baseline("B-LOG2-9K", Baseline::Log2NineK, C::int(2).ln(), "(2/3) / ((2k+1) 9^k)"),
        baseline("B-LEIBNIZ", Baseline::Leibniz, pi_term(1, 1, 4, 1), "(-1)^k / (2k+1)"),
        baseline("B-ZETA2", Baseline::Zeta2, pi_term(1, 2, 6, 1), "1 / k^2"),
        baseline("B-ZETA4", Baseline::Zeta4, pi_term(1, 4, 90, 1), "1 / k^4"),
        baseline("B-LOG2-ALT", Baseline::Log2Alt, C::int(2).ln(), "(-1)^(k-1) / k"),
    ]
}

/// Catalog entry by id.
pub fn lookup(id: &str) -> Result<SeriesSpec> {
    catalog().into_iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
}
