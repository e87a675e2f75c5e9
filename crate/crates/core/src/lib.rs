//! Core machinery for building genus functions and verifying the functional
//! equation `sum_k prod_{i != k} 1/f(u_i - u_k) = C` for them, exactly and
//! numerically.
//!
//! Module map:
//! * [`series`] — truncated Laurent/power series over exact rationals,
//!   high-precision complex numbers, or exact parameter polynomials.
//! * [`poly`] — sparse exact multivariate polynomials with the
//!   divided-difference / alternation / Schur operator suite.
//! * [`elliptic`] — lattices, theta-backed Weierstrass evaluation, exact and
//!   numeric Weierstrass series.
//! * [`genus`] — the genus families (Todd, Krichever, level-d, degenerate)
//!   with series, evaluators and monodromy factors.
//! * [`verifier`] — the functional-equation verifier: seeded numeric
//!   verification, the exact Todd identity, the abelian-coefficient and
//!   monodromy criteria, and the degenerate classification.

pub mod coeff;
pub mod cx;
pub mod elliptic;
pub mod error;
pub mod genus;
pub mod poly;
pub mod series;
pub mod verifier;

pub use coeff::Coeff;
pub use cx::Cx;
pub use elliptic::Lattice;
pub use error::{Error, Result};
pub use genus::{BakerAkhiezer, GenusFunction, GenusSpec, Scalar};
pub use poly::MultiPoly;
pub use series::TruncatedSeries;
pub use verifier::{Verdict, VerificationReport, VerifyConfig};
