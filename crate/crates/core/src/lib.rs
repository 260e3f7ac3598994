//! Exact evaluation of the divisor-sum convolutions
//! `W_(a,b)(n) = sum sigma(l) sigma(m)` over `a l + b m = n`, by expanding
//! the square of dilated weight-2 series in a certified basis of the
//! weight-4 modular forms on Gamma_0(ab), and application of the solved
//! closed forms to octonary quadratic form representation counts.
//!
//! Everything is computed in exact rational arithmetic; all derived
//! formulas are verified against independent brute-force oracles.

pub mod arith;
pub mod linalg;
pub mod qseries;
pub mod search;
pub mod spaces;

pub use arith::{divisors, euler_phi, kronecker, sigma_k, sigma_k_ratio, KroneckerChar, Rat};
pub use qseries::{euler_product, EtaQuotient, QSeries};
pub use search::search_cusp_quotients;
pub use spaces::{dims, eisenstein_series, ligozat_check, CharReading, EisensteinGen, GenKind, SpaceDims};
