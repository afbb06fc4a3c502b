//! Exact arithmetic substrate: big binomials, sparse Laurent polynomials in
//! one variable `q`, and dense bivariate power series truncated in `t`.
//!
//! Nothing in this crate uses floating point. All coefficients are
//! arbitrary-precision integers.

mod laurent;
mod series;

pub use laurent::{LaurentPoly, ParseLaurentError};
pub use series::{SeriesError, TruncatedBiseries};

use num_bigint::BigUint;
use num_traits::One;

/// Binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binom(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::default();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    // acc = C(n, i) after step i; each division is exact
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
