//! Character ring of finite-dimensional sl(2)-modules.
//!
//! A module is recorded by the multiset of its `H`-eigenvalues (weights),
//! packed into a Laurent polynomial in `q`. The irreducible `Sym^n(C^2)` has
//! character `q^n + q^(n-2) + ... + q^-n`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactalg::LaurentPoly;
use crate::partition::partitions;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("character is not palindromic in q")]
    NotPalindromic,
    #[error("character has a negative coefficient")]
    NegativeCoefficient,
    #[error("not a module character: weight multiplicities are not monotone")]
    NotAModule,
    #[error("not a tensor of nontrivial irreducibles")]
    NotATensor,
    #[error("tensor product of an empty list of characters")]
    EmptyTensor,
    #[error("multiplicity {0} does not fit in 64 bits")]
    MultiplicityOverflow(BigInt),
}

/// Weight character of an sl(2)-module: palindromic, nonnegative coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character(LaurentPoly);

impl Character {
    pub fn new(poly: LaurentPoly) -> Result<Self, CharacterError> {
        if !poly.has_nonnegative_coeffs() {
            return Err(CharacterError::NegativeCoefficient);
        }
        if !poly.is_palindromic() {
            return Err(CharacterError::NotPalindromic);
        }
        Ok(Self(poly))
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.0
    }

    /// Multiplicity of weight `k`.
    pub fn weight_mult(&self, k: i64) -> BigInt {
        self.0.coeff(k)
    }

    /// Dimension of the module: the character evaluated at `q = 1`.
    pub fn dim(&self) -> BigUint {
        self.0
            .coeff_sum()
            .to_biguint()
            .expect("coefficients are nonnegative")
    }

    /// Highest weight, `None` for the zero module.
    pub fn top_weight(&self) -> Option<i64> {
        self.0.max_exp()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Character {
    type Err = ParseCharacterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let poly: LaurentPoly = s.parse()?;
        Ok(Character::new(poly)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseCharacterError {
    #[error(transparent)]
    Syntax(#[from] crate::exactalg::ParseLaurentError),
    #[error(transparent)]
    Invalid(#[from] CharacterError),
}

/// Multiset of irreducible labels; label `n` stands for `Sym^n(C^2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IrrepMultiset {
    mult: BTreeMap<u32, u64>,
}

impl IrrepMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_labels<I: IntoIterator<Item = u32>>(labels: I) -> Self {
        let mut m = Self::new();
        for l in labels {
            m.insert(l, 1);
        }
        m
    }

    pub fn insert(&mut self, label: u32, count: u64) {
        if count > 0 {
            *self.mult.entry(label).or_default() += count;
        }
    }

    pub fn multiplicity(&self, label: u32) -> u64 {
        self.mult.get(&label).copied().unwrap_or(0)
    }

    /// `(label, multiplicity)` pairs, descending by label.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.mult.iter().rev().map(|(l, m)| (*l, *m))
    }

    /// Labels with repeats, descending.
    pub fn labels(&self) -> Vec<u32> {
        self.iter()
            .flat_map(|(l, m)| std::iter::repeat_n(l, m as usize))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// No copy of the trivial module (label 0).
    pub fn is_nontrivial(&self) -> bool {
        !self.mult.contains_key(&0)
    }

    /// Character of the direct sum of the members.
    pub fn sum_character(&self) -> Character {
        let mut acc = LaurentPoly::zero();
        for (l, m) in self.iter() {
            let term = &irrep_character(l).0 * &LaurentPoly::monomial(0, m);
            acc = &acc + &term;
        }
        Character(acc)
    }

    /// Character of the tensor product of the members (`1` when empty).
    pub fn tensor_character(&self) -> Character {
        let mut acc = LaurentPoly::one();
        for (l, m) in self.iter() {
            let factor = irrep_character(l).0.pow(m as u32);
            acc = &acc * &factor;
        }
        Character(acc)
    }
}

/// Canonical text: descending labels, `^m` for repeats, e.g. `3,1^2`.
impl fmt::Display for IrrepMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(l, m)| {
                if m == 1 {
                    l.to_string()
                } else {
                    format!("{l}^{m}")
                }
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed irreducible multiset entry `{0}`")]
pub struct ParseMultisetError(pub String);

impl FromStr for IrrepMultiset {
    type Err = ParseMultisetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut m = Self::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || ParseMultisetError(tok.to_string());
            let (l, c) = match tok.split_once('^') {
                Some((l, c)) => (l.trim(), c.trim().parse::<u64>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            if c == 0 {
                return Err(bad());
            }
            m.insert(l.parse::<u32>().map_err(|_| bad())?, c);
        }
        Ok(m)
    }
}

/// Character of `Sym^n(C^2)`: `q^n + q^(n-2) + ... + q^-n`.
pub fn irrep_character(n: u32) -> Character {
    let n = i64::from(n);
    Character(LaurentPoly::from_terms(
        (0..=n).map(|j| (n - 2 * j, BigInt::one())),
    ))
}

/// Character of a tensor product: the product of the factor characters.
pub fn tensor_character(factors: &[Character]) -> Result<Character, CharacterError> {
    let (first, rest) = factors.split_first().ok_or(CharacterError::EmptyTensor)?;
    let poly = rest.iter().fold(first.0.clone(), |acc, c| &acc * &c.0);
    Ok(Character(poly))
}

/// Direct-sum decomposition into irreducibles by weight peeling: the
/// multiplicity of label `k` is `mult(k) - mult(k + 2)`.
pub fn clebsch_gordan_decompose(c: &Character) -> Result<IrrepMultiset, CharacterError> {
    let mut out = IrrepMultiset::new();
    let Some(top) = c.top_weight() else {
        return Ok(out);
    };
    for k in 0..=top {
        let m = c.0.coeff(k) - c.0.coeff(k + 2);
        if m.is_negative() {
            return Err(CharacterError::NotAModule);
        }
        if m.is_zero() {
            continue;
        }
        let m64 = m.to_u64().ok_or(CharacterError::MultiplicityOverflow(m))?;
        out.insert(k as u32, m64);
    }
    Ok(out)
}

/// Recovers the unique multiset of positive labels whose irreducibles tensor
/// to `c`.
///
/// Exhaustive search over partitions of the top weight. Candidates are
/// pruned by part count (the coefficient of `q^(N-2)` equals the number of
/// nontrivial factors) and by dimension before characters are compared.
pub fn factor_tensor_of_irreps(c: &Character) -> Result<IrrepMultiset, CharacterError> {
    let top = c.top_weight().ok_or(CharacterError::NotATensor)?;
    if !c.weight_mult(top).is_one() {
        return Err(CharacterError::NotATensor);
    }
    if top == 0 {
        // only the empty product has character 1
        return Ok(IrrepMultiset::new());
    }
    let top_u32 = u32::try_from(top).map_err(|_| CharacterError::NotATensor)?;
    let num_parts = c
        .weight_mult(top - 2)
        .to_usize()
        .filter(|r| (1..=top_u32 as usize).contains(r))
        .ok_or(CharacterError::NotATensor)?;
    let dim = c.dim();

    partitions(top_u32)
        .filter(|p| p.len() == num_parts)
        .filter(|p| p.iter().map(|&n| BigUint::from(n + 1)).product::<BigUint>() == dim)
        .map(IrrepMultiset::from_labels)
        .find(|m| &m.tensor_character() == c)
        .ok_or(CharacterError::NotATensor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(s: &str) -> Character {
        s.parse().unwrap()
    }

    fn ms(s: &str) -> IrrepMultiset {
        s.parse().unwrap()
    }

    #[test]
    fn irrep_examples() {
        assert_eq!(irrep_character(0), ch("1"));
        assert_eq!(irrep_character(1), ch("q + q^-1"));
        assert_eq!(irrep_character(2), ch("q^2 + 1 + q^-2"));
        for n in 0..40 {
            assert_eq!(irrep_character(n).dim(), BigUint::from(n + 1));
        }
    }

    #[test]
    fn tensor_examples() {
        let c1 = irrep_character(1);
        let c2 = irrep_character(2);
        assert_eq!(
            tensor_character(&[c1.clone(), c1.clone()]).unwrap(),
            ch("q^2 + 2 + q^-2")
        );
        assert_eq!(tensor_character(std::slice::from_ref(&c2)).unwrap(), c2);
        assert_eq!(
            tensor_character(&[c2, c1]).unwrap(),
            ch("q^3 + 2*q + 2*q^-1 + q^-3")
        );
        assert_eq!(tensor_character(&[]), Err(CharacterError::EmptyTensor));
    }

    #[test]
    fn cg_examples() {
        assert_eq!(
            clebsch_gordan_decompose(&ch("q^2 + 2 + q^-2")).unwrap(),
            ms("2,0")
        );
        assert_eq!(
            clebsch_gordan_decompose(&irrep_character(5)).unwrap(),
            ms("5")
        );
        assert_eq!(
            clebsch_gordan_decompose(&ch("q^3 + 2*q + 2*q^-1 + q^-3")).unwrap(),
            ms("3,1")
        );
    }

    #[test]
    fn cg_rejects_non_modules() {
        // weight 2 more common than weight 0
        assert_eq!(
            clebsch_gordan_decompose(&ch("2*q^2 + 1 + 2*q^-2")),
            Err(CharacterError::NotAModule)
        );
        // gap in the weight string
        assert_eq!(
            clebsch_gordan_decompose(&ch("q^2 + q^-2")),
            Err(CharacterError::NotAModule)
        );
    }

    #[test]
    fn cg_mixed_parity() {
        let c = Character(&irrep_character(3).0 + &irrep_character(2).0);
        assert_eq!(clebsch_gordan_decompose(&c).unwrap(), ms("3,2"));
    }

    #[test]
    fn character_validation() {
        assert_eq!(
            "q^2 + 1".parse::<Character>(),
            Err(ParseCharacterError::Invalid(CharacterError::NotPalindromic))
        );
        assert_eq!(
            "q - 1 + q^-1".parse::<Character>(),
            Err(ParseCharacterError::Invalid(
                CharacterError::NegativeCoefficient
            ))
        );
    }

    #[test]
    fn factor_examples() {
        assert_eq!(
            factor_tensor_of_irreps(&ch("q^3 + 2*q + 2*q^-1 + q^-3")).unwrap(),
            ms("2,1")
        );
        assert_eq!(
            factor_tensor_of_irreps(&irrep_character(5)).unwrap(),
            ms("5")
        );
        assert_eq!(
            factor_tensor_of_irreps(&ch("q^2 + 2 + q^-2")).unwrap(),
            ms("1^2")
        );
        assert_eq!(
            factor_tensor_of_irreps(&ch("1")).unwrap(),
            IrrepMultiset::new()
        );
    }

    #[test]
    fn factor_rejects_non_tensors() {
        assert_eq!(
            factor_tensor_of_irreps(&ch("2")),
            Err(CharacterError::NotATensor)
        );
        // char(2) + char(0) coincides with char(1)^2, so it does factor
        let sum = IrrepMultiset::from_labels([2, 0]).sum_character();
        assert_eq!(factor_tensor_of_irreps(&sum).unwrap(), ms("1^2"));
        let sum = IrrepMultiset::from_labels([3, 0]).sum_character();
        assert_eq!(
            factor_tensor_of_irreps(&sum),
            Err(CharacterError::NotATensor)
        );
        let sum = IrrepMultiset::from_labels([2, 2]).sum_character();
        assert_eq!(
            factor_tensor_of_irreps(&sum),
            Err(CharacterError::NotATensor)
        );
        assert_eq!(
            factor_tensor_of_irreps(&Character(LaurentPoly::zero())),
            Err(CharacterError::NotATensor)
        );
    }

    #[test]
    fn multiset_text_form() {
        let m = IrrepMultiset::from_labels([1, 3, 1]);
        assert_eq!(m.to_string(), "3,1^2");
        assert_eq!(m.labels(), vec![3, 1, 1]);
        assert_eq!(ms("3,1^2"), m);
        assert_eq!(ms("1,3,1"), m);
        assert!("3,x".parse::<IrrepMultiset>().is_err());
        assert!("3^0".parse::<IrrepMultiset>().is_err());
        assert!(m.is_nontrivial());
        assert!(!ms("2,0").is_nontrivial());
    }

    #[test]
    fn dimension_is_value_at_one() {
        let m = IrrepMultiset::from_labels([4, 2, 2, 1]);
        assert_eq!(m.tensor_character().dim(), BigUint::from(5u32 * 3 * 3 * 2));
        assert_eq!(m.sum_character().dim(), BigUint::from(5u32 + 3 + 3 + 2));
    }
}
