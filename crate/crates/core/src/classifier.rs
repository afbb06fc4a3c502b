//! Isomorphism classification of multiprojective spaces through their
//! cohomology characters, and the explicit map `Sym^2(P^1) -> P^2`.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use crate::partition::{Partition, PartitionError};
use crate::sl2rep::{factor_tensor_of_irreps, Character, IrrepMultiset};
use crate::symcurve::PoincarePolynomial;

/// Parses a partition from comma/space-separated positive integers.
pub fn parse_partition(text: &str) -> Result<Partition, PartitionError> {
    text.parse()
}

/// Character of `H^*(P^{n_1} x ... x P^{n_r})`: the product of the
/// irreducible characters of the parts.
pub fn cohomology_character(p: &Partition) -> Character {
    IrrepMultiset::from_labels(p.parts().iter().copied()).tensor_character()
}

/// Product of `1 + x^2 + ... + x^{2 n_i}` over the parts.
pub fn poincare_of_multiprojective(p: &Partition) -> PoincarePolynomial {
    let mut betti = vec![BigUint::one()];
    for &part in p.parts() {
        let mut next = vec![BigUint::zero(); betti.len() + 2 * part as usize];
        for (i, b) in betti.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            for j in 0..=part as usize {
                next[i + 2 * j] += b;
            }
        }
        betti = next;
    }
    PoincarePolynomial::new(betti).expect("products of projective spaces satisfy duality")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Isomorphic,
    NonIsomorphic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reason {
    DimensionMismatch,
    SamePartition,
    DistinctCharacters,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Isomorphic => "ISOMORPHIC",
            Verdict::NonIsomorphic => "NON_ISOMORPHIC",
        })
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::DimensionMismatch => "DIMENSION_MISMATCH",
            Reason::SamePartition => "SAME_PARTITION",
            Reason::DistinctCharacters => "DISTINCT_CHARACTERS",
        })
    }
}

/// Characters of both spaces and the irreducible factors recovered from each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub characters: [Character; 2],
    /// `None` only if a character failed to factor, which would contradict
    /// unique factorization.
    pub factorizations: [Option<IrrepMultiset>; 2],
}

impl Evidence {
    fn gather(p1: &Partition, p2: &Partition) -> Self {
        let c1 = cohomology_character(p1);
        let c2 = cohomology_character(p2);
        let f1 = factor_tensor_of_irreps(&c1).ok();
        let f2 = factor_tensor_of_irreps(&c2).ok();
        Self {
            characters: [c1, c2],
            factorizations: [f1, f2],
        }
    }

    /// Each factorization reproduces its own partition.
    pub fn round_trips(&self, p1: &Partition, p2: &Partition) -> bool {
        let matches = |f: &Option<IrrepMultiset>, p: &Partition| {
            f.as_ref().is_some_and(|m| m.labels() == p.parts())
        };
        matches(&self.factorizations[0], p1) && matches(&self.factorizations[1], p2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub verdict: Verdict,
    pub reason: Reason,
    pub partitions: [Partition; 2],
    /// Absent when the dimensions already differ.
    pub evidence: Option<Evidence>,
}

/// Flat JSON form of a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictDocument {
    pub verdict: Verdict,
    pub reason: Reason,
    pub n1: u64,
    pub n2: u64,
    pub partition1: String,
    pub partition2: String,
    pub character1: Option<String>,
    pub character2: Option<String>,
    pub factorization1: Option<String>,
    pub factorization2: Option<String>,
}

impl ClassificationVerdict {
    pub fn document(&self) -> VerdictDocument {
        let [p1, p2] = &self.partitions;
        let ev = self.evidence.as_ref();
        let chr = |i: usize| ev.map(|e| e.characters[i].to_string());
        let fac = |i: usize| {
            ev.and_then(|e| e.factorizations[i].as_ref())
                .map(ToString::to_string)
        };
        VerdictDocument {
            verdict: self.verdict,
            reason: self.reason,
            n1: p1.n(),
            n2: p2.n(),
            partition1: p1.to_string(),
            partition2: p2.to_string(),
            character1: chr(0),
            character2: chr(1),
            factorization1: fac(0),
            factorization2: fac(1),
        }
    }
}

/// Decides whether `P^{p1}` and `P^{p2}` are isomorphic.
///
/// Different dimensions settle it immediately. Otherwise the verdict is
/// partition equality, and the characters plus their recovered
/// factorizations are attached so the answer can be audited from the
/// evidence alone.
pub fn classify(p1: &Partition, p2: &Partition) -> ClassificationVerdict {
    let partitions = [p1.clone(), p2.clone()];
    if p1.n() != p2.n() {
        return ClassificationVerdict {
            verdict: Verdict::NonIsomorphic,
            reason: Reason::DimensionMismatch,
            partitions,
            evidence: None,
        };
    }
    let evidence = Evidence::gather(p1, p2);
    let (verdict, reason) = if p1 == p2 {
        (Verdict::Isomorphic, Reason::SamePartition)
    } else {
        (Verdict::NonIsomorphic, Reason::DistinctCharacters)
    };
    ClassificationVerdict {
        verdict,
        reason,
        partitions,
        evidence: Some(evidence),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjPointError {
    #[error("projective point needs at least one coordinate")]
    NoCoordinates,
    #[error("all homogeneous coordinates are zero")]
    AllZero,
    #[error("expected a point of P^{expected}, got {got} coordinates")]
    WrongArity { expected: usize, got: usize },
}

/// Point of projective space in homogeneous rational coordinates. Equality
/// is up to a common nonzero scalar.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec<BigRational>,
}

impl ProjPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self, ProjPointError> {
        if coords.is_empty() {
            return Err(ProjPointError::NoCoordinates);
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(ProjPointError::AllZero);
        }
        Ok(Self { coords })
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coords: I) -> Result<Self, ProjPointError> {
        Self::new(
            coords
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Representative whose first nonzero coordinate is 1.
    pub fn normalized(&self) -> Vec<BigRational> {
        let lead = self
            .coords
            .iter()
            .find(|c| !c.is_zero())
            .expect("some coordinate is nonzero")
            .clone();
        self.coords.iter().map(|c| c / &lead).collect()
    }

    pub fn scaled(&self, s: &BigRational) -> Result<Self, ProjPointError> {
        Self::new(self.coords.iter().map(|c| c * s).collect())
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.coords.len() == other.coords.len() && self.normalized() == other.normalized()
    }
}

impl Eq for ProjPoint {}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// `([z1:z2], [w1:w2]) -> [z1 w1 : z2 w2 : z1 w2 + z2 w1]`, symmetric in its
/// arguments and so defined on `Sym^2(P^1)`.
pub fn sym2_p1_map(z: &ProjPoint, w: &ProjPoint) -> Result<ProjPoint, ProjPointError> {
    for p in [z, w] {
        if p.coords.len() != 2 {
            return Err(ProjPointError::WrongArity {
                expected: 1,
                got: p.coords.len(),
            });
        }
    }
    let (z1, z2) = (&z.coords[0], &z.coords[1]);
    let (w1, w2) = (&w.coords[0], &w.coords[1]);
    ProjPoint::new(vec![z1 * w1, z2 * w2, z1 * w2 + z2 * w1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2rep::irrep_character;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_integers(c.iter().copied()).unwrap()
    }

    #[test]
    fn character_examples() {
        assert_eq!(cohomology_character(&part("1")).to_string(), "q + q^-1");
        assert_eq!(
            cohomology_character(&part("1,1")).to_string(),
            "q^2 + 2 + q^-2"
        );
        assert_eq!(
            cohomology_character(&part("2,1")).to_string(),
            "q^3 + 2*q + 2*q^-1 + q^-3"
        );
        assert_eq!(cohomology_character(&part("4")), irrep_character(4));
    }

    #[test]
    fn classify_examples() {
        let v = classify(&part("2,1"), &part("1,1,1"));
        assert_eq!(
            (v.verdict, v.reason),
            (Verdict::NonIsomorphic, Reason::DistinctCharacters)
        );
        let ev = v.evidence.as_ref().unwrap();
        assert_eq!(ev.characters[0].to_string(), "q^3 + 2*q + 2*q^-1 + q^-3");
        assert_eq!(ev.characters[1].to_string(), "q^3 + 3*q + 3*q^-1 + q^-3");
        assert!(ev.round_trips(&v.partitions[0], &v.partitions[1]));

        let v = classify(&part("1,2"), &part("2,1"));
        assert_eq!(
            (v.verdict, v.reason),
            (Verdict::Isomorphic, Reason::SamePartition)
        );

        let v = classify(&part("3"), &part("2,2"));
        assert_eq!(
            (v.verdict, v.reason),
            (Verdict::NonIsomorphic, Reason::DimensionMismatch)
        );
        assert!(v.evidence.is_none());
    }

    #[test]
    fn verdict_document_json() {
        let v = classify(&part("2,1"), &part("1,1,1"));
        let json = serde_json::to_value(v.document()).unwrap();
        assert_eq!(json["verdict"], "NON_ISOMORPHIC");
        assert_eq!(json["reason"], "DISTINCT_CHARACTERS");
        assert_eq!(json["n1"], 3);
        assert_eq!(json["partition2"], "1,1,1");
        assert_eq!(json["factorization2"], "1^3");
        assert_eq!(json["character1"], "q^3 + 2*q + 2*q^-1 + q^-3");
        let v = classify(&part("3"), &part("2,2"));
        let json = serde_json::to_value(v.document()).unwrap();
        assert!(json["character1"].is_null());
    }

    #[test]
    fn multiprojective_poincare_examples() {
        let b = |p: &str| -> Vec<u64> {
            poincare_of_multiprojective(&part(p))
                .betti()
                .iter()
                .map(|v| u64::try_from(v).unwrap())
                .collect()
        };
        assert_eq!(b("1,1"), vec![1, 0, 2, 0, 1]);
        assert_eq!(b("2,1"), vec![1, 0, 2, 0, 2, 0, 1]);
        assert_eq!(
            poincare_of_multiprojective(&part("5")),
            crate::symcurve::poincare_genus_zero(5)
        );
    }

    #[test]
    fn sym2_examples() {
        assert_eq!(
            sym2_p1_map(&pt(&[1, 0]), &pt(&[0, 1])).unwrap(),
            pt(&[0, 0, 1])
        );
        assert_eq!(
            sym2_p1_map(&pt(&[1, 1]), &pt(&[1, 1])).unwrap(),
            pt(&[1, 1, 2])
        );
        assert_eq!(
            sym2_p1_map(&pt(&[2, 2]), &pt(&[3, 3])).unwrap(),
            pt(&[1, 1, 2])
        );
    }

    #[test]
    fn sym2_rejects_bad_input() {
        assert_eq!(
            ProjPoint::from_integers([0, 0]),
            Err(ProjPointError::AllZero)
        );
        assert_eq!(
            ProjPoint::new(Vec::new()),
            Err(ProjPointError::NoCoordinates)
        );
        assert_eq!(
            sym2_p1_map(&pt(&[1, 0, 0]), &pt(&[1, 1])),
            Err(ProjPointError::WrongArity {
                expected: 1,
                got: 3
            })
        );
    }

    #[test]
    fn sym2_corner_cases_never_vanish() {
        let corners = [[1, 0], [0, 1], [1, 1], [1, -1], [-1, 0], [0, -3]];
        for z in &corners {
            for w in &corners {
                let image = sym2_p1_map(&pt(z), &pt(w)).unwrap();
                assert!(image.coords().iter().any(|c| !c.is_zero()));
            }
        }
    }

    #[test]
    fn projective_equality_is_up_to_scalar() {
        assert_eq!(pt(&[2, 4, 6]), pt(&[-1, -2, -3]));
        assert_ne!(pt(&[1, 2, 3]), pt(&[1, 2, 4]));
        assert_ne!(pt(&[1, 2]), pt(&[1, 2, 0]));
        assert_eq!(pt(&[0, 5]), pt(&[0, 1]));
    }
}
