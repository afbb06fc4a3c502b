//! Betti numbers of symmetric products `Sym^n(C)` of a genus-`g` curve.
//!
//! Two independent routes for `g >= 1`: the closed binomial formula and the
//! `t^n` coefficient of `(1 + tx)^{2g} / ((1 - t)(1 - tx^2))`. Genus zero is
//! `Sym^n(P^1) = P^n` and is handled by the projective-space rule.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{binom, TruncatedBiseries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymCurveError {
    #[error("genus 0 is projective space; use the genus-zero rule")]
    GenusZero,
    #[error("symmetric power must be positive")]
    ZeroPower,
    #[error("degree {r} outside [0, {max}]")]
    DegreeOutOfRange { r: u32, max: u64 },
    #[error("dimension comparison needs n >= 2, got {0}")]
    PowerTooSmall(u32),
    #[error("not a Poincare polynomial: {0}")]
    InvalidPolynomial(&'static str),
    #[error("series and closed form disagree at g={g}, n={n}, r={r}")]
    CrossCheck { g: u32, n: u32, r: usize },
}

/// Betti numbers `B_0, ..., B_{2n}` of a compact `2n`-real-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PoincarePolynomial {
    betti: Vec<BigUint>,
}

impl PoincarePolynomial {
    /// Checks odd length, `B_0 = 1` and `B_r = B_{2n-r}`.
    pub fn new(betti: Vec<BigUint>) -> Result<Self, SymCurveError> {
        if betti.len().is_multiple_of(2) {
            return Err(SymCurveError::InvalidPolynomial(
                "even number of Betti numbers",
            ));
        }
        if !betti[0].is_one() {
            return Err(SymCurveError::InvalidPolynomial("B_0 is not 1"));
        }
        if !betti.iter().eq(betti.iter().rev()) {
            return Err(SymCurveError::InvalidPolynomial("Poincare duality fails"));
        }
        Ok(Self { betti })
    }

    /// Half the real dimension.
    pub fn n(&self) -> usize {
        (self.betti.len() - 1) / 2
    }

    pub fn betti(&self) -> &[BigUint] {
        &self.betti
    }

    /// Total dimension of cohomology (value at `x = 1`).
    pub fn total(&self) -> BigUint {
        self.betti.iter().sum()
    }
}

/// `1 + 2x + 2x^2 + 2x^3 + x^4`; zero terms are omitted.
impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, b) in self.betti.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = if b.is_one() && r > 0 {
                String::new()
            } else {
                b.to_string()
            };
            match r {
                0 => write!(f, "{b}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{r}")?,
            }
        }
        Ok(())
    }
}

/// `B_r` of `Sym^n(C)` for `g >= 1`: `sum_j C(2g, r - 2j)` for `r <= n`,
/// extended to `r > n` by duality.
pub fn betti_closed(g: u32, n: u32, r: u32) -> Result<BigUint, SymCurveError> {
    if g == 0 {
        return Err(SymCurveError::GenusZero);
    }
    if n == 0 {
        return Err(SymCurveError::ZeroPower);
    }
    let max = 2 * u64::from(n);
    if u64::from(r) > max {
        return Err(SymCurveError::DegreeOutOfRange { r, max });
    }
    let r = if r > n { 2 * n - r } else { r };
    let two_g = 2 * u64::from(g);
    Ok((0..=r / 2)
        .map(|j| binom(two_g, i64::from(r - 2 * j)))
        .sum())
}

/// Poincare polynomial of `Sym^n(C)` for `g >= 1` from the generating series.
pub fn poincare_via_series(g: u32, n: u32) -> Result<PoincarePolynomial, SymCurveError> {
    if g == 0 {
        return Err(SymCurveError::GenusZero);
    }
    if n == 0 {
        return Err(SymCurveError::ZeroPower);
    }
    let cap = n as usize;
    let numerator = TruncatedBiseries::from_terms(cap, [(0, 0, 1), (1, 1, 1)]).pow(2 * g);
    let inv_one_minus_t = TruncatedBiseries::monomial(cap, 1, 0, 1)
        .geometric()
        .expect("t has no constant term");
    let inv_one_minus_tx2 = TruncatedBiseries::monomial(cap, 1, 2, 1)
        .geometric()
        .expect("t x^2 has no constant term");
    let series = numerator
        .mul(&inv_one_minus_t)
        .and_then(|s| s.mul(&inv_one_minus_tx2))
        .expect("shared cap");

    let coeff = series.t_coeff(cap);
    if coeff.len() != 2 * cap + 1 {
        return Err(SymCurveError::InvalidPolynomial("x-degree is not 2n"));
    }
    let betti = coeff
        .iter()
        .map(|c| c.to_biguint())
        .collect::<Option<Vec<_>>>()
        .ok_or(SymCurveError::InvalidPolynomial("negative Betti number"))?;
    PoincarePolynomial::new(betti)
}

/// `P^n`: `B_i = 1` for even `i` in `[0, 2n]`, else 0.
pub fn poincare_genus_zero(n: u32) -> PoincarePolynomial {
    let betti = (0..=2 * n as usize)
        .map(|i| {
            if i % 2 == 0 {
                BigUint::one()
            } else {
                BigUint::zero()
            }
        })
        .collect();
    PoincarePolynomial { betti }
}

/// `dim H^*(Sym^n(C))`: `sum_{i <= min(n, 2g)} C(2g, i)(n + 1 - i)`, or
/// `n + 1` in genus zero.
pub fn total_dim_cohomology(g: u32, n: u32) -> BigUint {
    if g == 0 {
        return BigUint::from(n) + 1u32;
    }
    let two_g = 2 * u64::from(g);
    let top = u64::from(n).min(two_g);
    (0..=top)
        .map(|i| binom(two_g, i as i64) * (u64::from(n) + 1 - i))
        .sum()
}

/// `dim Sym^n(H^*(C))` with `H^*(C)` taken as a plain `(2g + 2)`-dimensional
/// space: `C(2g + n + 1, n)`.
pub fn dim_sym_of_cohomology(g: u32, n: u32) -> BigUint {
    binom(2 * u64::from(g) + u64::from(n) + 1, i64::from(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Relation {
    StrictlyLess,
    Equal,
    StrictlyGreater,
}

impl From<Ordering> for Relation {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Relation::StrictlyLess,
            Ordering::Equal => Relation::Equal,
            Ordering::Greater => Relation::StrictlyGreater,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::StrictlyLess => "STRICTLY_LESS",
            Relation::Equal => "EQUAL",
            Relation::StrictlyGreater => "STRICTLY_GREATER",
        })
    }
}

/// `dim H^*(Sym^n(C))` against `dim Sym^n(H^*(C))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionComparison {
    pub genus: u32,
    pub n: u32,
    #[serde(serialize_with = "crate::json::big_number")]
    pub total_dim: BigUint,
    #[serde(serialize_with = "crate::json::big_number")]
    pub sym_dim: BigUint,
    pub relation: Relation,
}

pub fn compare_dimensions(g: u32, n: u32) -> DimensionComparison {
    let total_dim = total_dim_cohomology(g, n);
    let sym_dim = dim_sym_of_cohomology(g, n);
    let relation = total_dim.cmp(&sym_dim).into();
    DimensionComparison {
        genus: g,
        n,
        total_dim,
        sym_dim,
        relation,
    }
}

/// The comparison for `n >= 2`, where it is equal in genus zero and strictly
/// smaller otherwise.
pub fn genus_obstruction_report(g: u32, n: u32) -> Result<DimensionComparison, SymCurveError> {
    if n < 2 {
        return Err(SymCurveError::PowerTooSmall(n));
    }
    Ok(compare_dimensions(g, n))
}

/// A smooth projective curve, known only through its genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    pub genus: u32,
}

impl Curve {
    pub fn new(genus: u32) -> Self {
        Self { genus }
    }

    /// Poincare polynomial of `Sym^n` of this curve. Positive genus goes
    /// through the generating series and is checked against the closed
    /// formula term by term.
    pub fn sym_poincare(&self, n: u32) -> Result<PoincarePolynomial, SymCurveError> {
        if n == 0 {
            return Err(SymCurveError::ZeroPower);
        }
        if self.genus == 0 {
            return Ok(poincare_genus_zero(n));
        }
        let p = poincare_via_series(self.genus, n)?;
        for (r, b) in p.betti().iter().enumerate() {
            if *b != betti_closed(self.genus, n, r as u32)? {
                return Err(SymCurveError::CrossCheck {
                    g: self.genus,
                    n,
                    r,
                });
            }
        }
        Ok(p)
    }

    pub fn sym_total_dim(&self, n: u32) -> BigUint {
        total_dim_cohomology(self.genus, n)
    }
}
