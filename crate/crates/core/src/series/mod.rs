//! Catalog of fast-converging series and their certified evaluation.
//!
//! Each [`SeriesSpec`] is summed term by term in ball arithmetic. The
//! hypergeometric part of a term is advanced by exact rational step ratios,
//! integer weights come from exact recurrences, and the truncation error is
//! certified by a geometric tail bound ([`tail_bound`]).

mod catalog;
mod eval;
mod gf;
mod profile;
mod tail;
mod terms;

pub use catalog::{catalog, lookup};
pub use eval::{eval_series, verify_identity, EvalReport, EvalStatus, Evaluation};
pub use gf::{gf_check, gf_series_spec, GfFamily};
pub use profile::{profile, ProfilePoint};
pub use tail::{limit_ratio, tail_bound};
pub use terms::{exact_term_ratio, TermStream};

use crate::real::{ClosedForm, QuadExt};

/// Shape of the `k`-th term, apart from the weight and the argument power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `w_k x^k / (k^m C(2k,k))`, `k >= 1`.
    InvCb { m: u32 },
    /// `C(2k,k) w_k x^k / (2k+1)`, `k >= 1`.
    CbOdd,
    /// `C(2k,k) w_k x^k`, `k >= 1`.
    CbPlain,
    /// A fixed classical series.
    Baseline(Baseline),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Baseline {
    /// `sum_{k>=0} (25k-3) / (2^k C(3k,k))`
    Gosper,
    /// `sum_{k>=1} (21k-8) / (k^3 C(2k,k)^3)`
    Zeilberger,
    /// `sum_{k>=1} 1 / (k^4 C(2k,k))`
    Bbb,
    /// `(2/3) sum_{k>=0} 1 / ((2k+1) 9^k)`
    Log2NineK,
    /// `sum_{k>=0} (-1)^k / (2k+1)`
    Leibniz,
    /// `sum_{k>=1} 1/k^2`
    Zeta2,
    /// `sum_{k>=1} 1/k^4`
    Zeta4,
    /// `sum_{k>=1} (-1)^(k-1) / k`
    Log2Alt,
}

/// Harmonic-number factor of the weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Harmonic {
    None,
    /// `H^(2)_{k-1}`
    H2Prev,
    /// `sum_{0<j<=k} 1/(2j-1)^2`
    HBar,
}

/// Integer factor of the weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntWeight {
    One,
    /// `L_{2k}`
    Luc2k,
    /// `F_{2k}`
    Fib2k,
    /// `u_k`
    U,
    /// `v_k`
    V,
    /// `F_{2k+1}`
    Fib2k1,
    /// `L_{2k+1}`
    Luc2k1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weight {
    pub harmonic: Harmonic,
    pub int: IntWeight,
}

impl Weight {
    pub const ONE: Weight = Weight { harmonic: Harmonic::None, int: IntWeight::One };

    pub const fn h2_prev(int: IntWeight) -> Weight {
        Weight { harmonic: Harmonic::H2Prev, int }
    }

    pub const fn hbar(int: IntWeight) -> Weight {
        Weight { harmonic: Harmonic::HBar, int }
    }
}

/// One cataloged series together with its claimed closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    pub id: String,
    pub family: Family,
    pub weight: Weight,
    /// Argument raised to the `k`-th power in each term.
    pub x: QuadExt,
    pub rhs: ClosedForm,
    pub k_start: u64,
    /// Too slow for certified evaluation; only usable with [`profile`].
    pub profile_only: bool,
    /// Human-readable summand.
    pub summand: String,
}
