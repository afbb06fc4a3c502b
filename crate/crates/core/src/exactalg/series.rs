use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation caps differ: {left} vs {right}")]
    CapMismatch { left: usize, right: usize },
    #[error("geometric expansion needs a zero constant term in t")]
    NonzeroConstantTerm,
}

/// Power series in `t` with polynomial-in-`x` coefficients, truncated
/// above `t^tcap`.
///
/// `coeffs[i]` is the coefficient of `t^i`, stored dense from `x^0` with no
/// trailing zeros (the zero polynomial is the empty vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedBiseries {
    tcap: usize,
    coeffs: Vec<Vec<BigInt>>,
}

fn trim(poly: &mut Vec<BigInt>) {
    while poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
}

impl TruncatedBiseries {
    pub fn zero(tcap: usize) -> Self {
        Self {
            tcap,
            coeffs: vec![Vec::new(); tcap + 1],
        }
    }

    pub fn one(tcap: usize) -> Self {
        Self::monomial(tcap, 0, 0, 1)
    }

    /// `c * t^i * x^j`; dropped entirely when `i > tcap`.
    pub fn monomial(tcap: usize, i: usize, j: usize, c: impl Into<BigInt>) -> Self {
        Self::from_terms(tcap, [(i, j, c.into())])
    }

    /// Sum of `c * t^i * x^j` terms, silently discarding `i > tcap`.
    pub fn from_terms<I, C>(tcap: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, C)>,
        C: Into<BigInt>,
    {
        let mut s = Self::zero(tcap);
        for (i, j, c) in terms {
            if i > tcap {
                continue;
            }
            let row = &mut s.coeffs[i];
            if row.len() <= j {
                row.resize(j + 1, BigInt::zero());
            }
            row[j] += c.into();
        }
        s.coeffs.iter_mut().for_each(trim);
        s
    }

    pub fn tcap(&self) -> usize {
        self.tcap
    }

    /// Coefficient of `t^i` as a dense polynomial in `x`; empty when zero or
    /// when `i > tcap`.
    pub fn t_coeff(&self, i: usize) -> &[BigInt] {
        self.coeffs.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    fn check_cap(&self, other: &Self) -> Result<(), SeriesError> {
        if self.tcap != other.tcap {
            return Err(SeriesError::CapMismatch {
                left: self.tcap,
                right: other.tcap,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self, SeriesError> {
        self.check_cap(other)?;
        let mut out = self.clone();
        for (row, rhs) in out.coeffs.iter_mut().zip(&other.coeffs) {
            if row.len() < rhs.len() {
                row.resize(rhs.len(), BigInt::zero());
            }
            for (a, b) in row.iter_mut().zip(rhs) {
                if negate {
                    *a -= b;
                } else {
                    *a += b;
                }
            }
            trim(row);
        }
        Ok(out)
    }

    /// Product truncated at the shared cap. Zero coefficients are skipped, so
    /// multiplying by a sparse factor costs proportionally to its support.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_cap(other)?;
        let mut out = Self::zero(self.tcap);
        for (i, a) in self.coeffs.iter().enumerate() {
            for (k, b) in other.coeffs.iter().enumerate().take(self.tcap + 1 - i) {
                if a.is_empty() || b.is_empty() {
                    continue;
                }
                let row = &mut out.coeffs[i + k];
                let need = a.len() + b.len() - 1;
                if row.len() < need {
                    row.resize(need, BigInt::zero());
                }
                for (j, ca) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (l, cb) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        row[j + l] += ca * cb;
                    }
                }
            }
        }
        out.coeffs.iter_mut().for_each(trim);
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.tcap);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same cap");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same cap");
            }
        }
        acc
    }

    /// `1 + u + u^2 + ...` truncated at the cap, i.e. the inverse of `1 - u`.
    pub fn geometric(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_empty() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let mut acc = Self::one(self.tcap);
        let mut power = Self::one(self.tcap);
        // u^k has no terms below t^k, so k never needs to pass the cap
        for _ in 0..self.tcap {
            power = power.mul(self)?;
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for TruncatedBiseries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                let pw = |v: &str, e: usize| match e {
                    0 => None,
                    1 => Some(v.to_string()),
                    e => Some(format!("{v}^{e}")),
                };
                let mono = [pw("t", i), pw("x", j)]
                    .into_iter()
                    .flatten()
                    .collect::<Vec<_>>()
                    .join("*");
                if mono.is_empty() {
                    write!(f, "{c}")?;
                } else if c.is_one() {
                    f.write_str(&mono)?;
                } else {
                    write!(f, "{c}*{mono}")?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.tcap + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn binomial_square() {
        let s = TruncatedBiseries::from_terms(2, [(0, 0, 1), (1, 1, 1)]);
        let sq = s.mul(&s).unwrap();
        let expected = TruncatedBiseries::from_terms(2, [(0, 0, 1), (1, 1, 2), (2, 2, 1)]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn multiplicative_identity() {
        let s = TruncatedBiseries::from_terms(4, [(0, 3, -2), (1, 1, 7), (4, 0, 5)]);
        assert_eq!(s.mul(&TruncatedBiseries::one(4)).unwrap(), s);
    }

    #[test]
    fn truncates_above_cap() {
        let a = TruncatedBiseries::from_terms(2, [(0, 0, 1), (1, 0, 1)]);
        let b = TruncatedBiseries::from_terms(2, [(0, 0, 1), (1, 0, 1), (2, 0, 1)]);
        let expected = TruncatedBiseries::from_terms(2, [(0, 0, 1), (1, 0, 2), (2, 0, 2)]);
        assert_eq!(a.mul(&b).unwrap(), expected);
    }

    #[test]
    fn cap_mismatch_is_an_error() {
        let a = TruncatedBiseries::one(2);
        let b = TruncatedBiseries::one(3);
        assert_eq!(
            a.mul(&b),
            Err(SeriesError::CapMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn geometric_examples() {
        let t = TruncatedBiseries::monomial(3, 1, 0, 1);
        let g = t.geometric().unwrap();
        for i in 0..=3 {
            assert_eq!(g.t_coeff(i), big(&[1]).as_slice());
        }

        let tx2 = TruncatedBiseries::monomial(2, 1, 2, 1);
        let g = tx2.geometric().unwrap();
        assert_eq!(g.t_coeff(0), big(&[1]).as_slice());
        assert_eq!(g.t_coeff(1), big(&[0, 0, 1]).as_slice());
        assert_eq!(g.t_coeff(2), big(&[0, 0, 0, 0, 1]).as_slice());

        assert_eq!(
            TruncatedBiseries::one(3).geometric(),
            Err(SeriesError::NonzeroConstantTerm)
        );
    }

    #[test]
    fn out_of_range_coefficient_is_empty() {
        let s = TruncatedBiseries::monomial(2, 5, 0, 1);
        assert_eq!(s, TruncatedBiseries::zero(2));
        assert!(s.t_coeff(9).is_empty());
    }

    #[test]
    fn display() {
        let s = TruncatedBiseries::from_terms(2, [(0, 0, 1), (1, 1, 2), (2, 2, 1)]);
        assert_eq!(s.to_string(), "1 + 2*t*x + t^2*x^2 + O(t^3)");
    }

    fn arb_zero_const(tcap: usize) -> impl Strategy<Value = TruncatedBiseries> {
        prop::collection::vec((1..=tcap, 0usize..4, -20i64..=20), 0..6)
            .prop_map(move |terms| TruncatedBiseries::from_terms(tcap, terms))
    }

    proptest! {
        #[test]
        fn geometric_inverts_one_minus_u(u in arb_zero_const(5)) {
            let one = TruncatedBiseries::one(5);
            let one_minus_u = one.sub(&u).unwrap();
            prop_assert_eq!(u.geometric().unwrap().mul(&one_minus_u).unwrap(), one);
        }

        #[test]
        fn mul_commutes(a in arb_zero_const(4), b in arb_zero_const(4)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }
    }
}
