//! Certified evaluation of fast-converging series built from central binomial
//! coefficients and second-order harmonic numbers, exact power-series checks of
//! the identities behind them, and empirical sweeps of related prime
//! congruences.

pub mod congruence;
pub mod error;
pub mod ps;
pub mod real;
pub mod seq;
pub mod series;

pub use error::{Error, Result};
pub use real::{Ball, ClosedForm, Mag, QuadExt};
