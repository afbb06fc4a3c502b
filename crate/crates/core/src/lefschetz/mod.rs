//! Explicit matrix realization of the sl(2)-action on the cohomology of
//! projective space by the Lefschetz operators.
//!
//! For `P^n` the basis `e_0, ..., e_n` stands for `H^0, H^2, ..., H^{2n}`.
//! `Y` is cup product with the hyperplane class (`e_p -> e_{p+1}`), `H` acts
//! by the degree weighting `n - 2p`, and `X` is the unique raising operator
//! with `[X, Y] = H` and `X e_0 = 0`, namely `X e_p = p(n - p + 1) e_{p-1}`.

mod matrix;

pub use matrix::{rank, span_rank, RatMatrix, SparseVec};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::LaurentPoly;
use crate::sl2rep::{Character, CharacterError, IrrepMultiset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("operator dimensions {x}, {y} do not match {weights} basis weights")]
    DimensionMismatch { x: usize, y: usize, weights: usize },
}

/// A finite-dimensional sl(2)-module given by matrices in a weight basis.
///
/// `H` is diagonal with integer entries `weights`. The bracket relations are
/// not enforced on construction; check them with [`verify_brackets`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2MatrixModule {
    x: RatMatrix,
    y: RatMatrix,
    h: RatMatrix,
    weights: Vec<i64>,
}

impl Sl2MatrixModule {
    pub fn new(x: RatMatrix, y: RatMatrix, weights: Vec<i64>) -> Result<Self, ModuleError> {
        if x.dim() != weights.len() || y.dim() != weights.len() {
            return Err(ModuleError::DimensionMismatch {
                x: x.dim(),
                y: y.dim(),
                weights: weights.len(),
            });
        }
        let h = RatMatrix::from_entries(
            weights.len(),
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| (i, i, BigRational::from_integer(BigInt::from(*w)))),
        );
        Ok(Self { x, y, h, weights })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn x(&self) -> &RatMatrix {
        &self.x
    }

    pub fn y(&self) -> &RatMatrix {
        &self.y
    }

    pub fn h(&self) -> &RatMatrix {
        &self.h
    }

    /// Diagonal of `H`.
    pub fn basis_weights(&self) -> &[i64] {
        &self.weights
    }

    /// Basis indices of the weight-`k` eigenspace.
    pub fn weight_space(&self, k: i64) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| **w == k)
            .map(|(i, _)| i)
            .collect()
    }

    /// `X` moves weight `k` to `k + 2` and `Y` moves it to `k - 2`.
    pub fn shifts_weights(&self) -> bool {
        let w = &self.weights;
        self.x.entries().all(|(r, c, _)| w[r] == w[c] + 2)
            && self.y.entries().all(|(r, c, _)| w[r] == w[c] - 2)
    }
}

/// The module `H^*(P^n)` with the Lefschetz action.
pub fn build_cohomology_module(n: u32) -> Sl2MatrixModule {
    let d = n as usize + 1;
    let n = i64::from(n);
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let y = RatMatrix::from_entries(d, (0..d - 1).map(|p| (p + 1, p, BigRational::one())));
    let x = RatMatrix::from_entries(
        d,
        (1..d).map(|p| {
            let p_i = p as i64;
            (p - 1, p, int(p_i * (n - p_i + 1)))
        }),
    );
    let weights = (0..=n).map(|p| n - 2 * p).collect();
    Sl2MatrixModule::new(x, y, weights).expect("dimensions agree by construction")
}

/// Outcome of one bracket relation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub pass: bool,
    /// Largest absolute numerator among the entries of `lhs - rhs`.
    #[serde(serialize_with = "crate::json::big_number")]
    pub max_abs_discrepancy_numerator: BigInt,
}

/// Results for `[X,Y]=H`, `[H,X]=2X`, `[H,Y]=-2Y`, in that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BracketReport {
    pub checks: Vec<RelationCheck>,
}

impl BracketReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, relation: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.relation == relation)
    }
}

pub const REL_XY: &str = "XY-YX=H";
pub const REL_HX: &str = "HX-XH=2X";
pub const REL_HY: &str = "HY-YH=-2Y";

pub fn verify_brackets(m: &Sl2MatrixModule) -> BracketReport {
    let two = BigRational::from_integer(BigInt::from(2));
    let check = |relation, lhs: RatMatrix, rhs: RatMatrix| {
        let diff = lhs.sub(&rhs);
        RelationCheck {
            relation,
            pass: diff.is_zero(),
            max_abs_discrepancy_numerator: diff.max_abs_numerator(),
        }
    };
    BracketReport {
        checks: vec![
            check(REL_XY, m.x.bracket(&m.y), m.h.clone()),
            check(REL_HX, m.h.bracket(&m.x), m.x.scale(&two)),
            check(REL_HY, m.h.bracket(&m.y), m.y.scale(&-two)),
        ],
    }
}

/// Tensor product with the Leibniz action `A -> A (x) 1 + 1 (x) A`.
pub fn tensor_modules(a: &Sl2MatrixModule, b: &Sl2MatrixModule) -> Sl2MatrixModule {
    let ia = RatMatrix::identity(a.dim());
    let ib = RatMatrix::identity(b.dim());
    let leibniz = |ma: &RatMatrix, mb: &RatMatrix| ma.kron(&ib).add(&ia.kron(mb));
    let weights = a
        .weights
        .iter()
        .flat_map(|wa| b.weights.iter().map(move |wb| wa + wb))
        .collect();
    Sl2MatrixModule::new(leibniz(&a.x, &b.x), leibniz(&a.y, &b.y), weights)
        .expect("kronecker dimensions agree")
}

/// Iterated tensor product of the cohomology modules of `P^{n_i}`.
pub fn multiprojective_module(parts: &[u32]) -> Sl2MatrixModule {
    parts
        .iter()
        .map(|&n| build_cohomology_module(n))
        .reduce(|acc, m| tensor_modules(&acc, &m))
        .unwrap_or_else(|| build_cohomology_module(0))
}

/// Character read off the diagonal of `H`. Fails only for weight lists that
/// no genuine module has (not symmetric under `k -> -k`).
pub fn module_character(m: &Sl2MatrixModule) -> Result<Character, CharacterError> {
    Character::new(LaurentPoly::from_terms(
        m.weights.iter().map(|w| (*w, BigInt::one())),
    ))
}

fn basis_vector(i: usize) -> SparseVec {
    SparseVec::from([(i, BigRational::one())])
}

/// Irreducible iff the top weight space is a line spanned by a vector killed
/// by `X` whose `Y`-string spans the whole module.
pub fn is_irreducible(m: &Sl2MatrixModule) -> bool {
    let Some(&top) = m.weights.iter().max() else {
        return false;
    };
    let top_space = m.weight_space(top);
    if top_space.len() != 1 {
        return false;
    }
    let mut v = basis_vector(top_space[0]);
    if !m.x.apply(&v).is_empty() {
        return false;
    }
    let mut string = Vec::new();
    while !v.is_empty() && string.len() <= m.dim() {
        let next = m.y.apply(&v);
        string.push(v);
        v = next;
    }
    string.len() == m.dim() && span_rank(&string, m.dim()) == m.dim()
}

/// For each weight `k >= 0`, the dimension of `ker X` on the weight-`k`
/// space. In a genuine module this is the multiplicity of the irreducible
/// with highest weight `k`.
pub fn highest_weight_counts(m: &Sl2MatrixModule) -> IrrepMultiset {
    let mut spaces: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, w) in m.weights.iter().enumerate() {
        spaces.entry(*w).or_default().push(i);
    }
    let mut out = IrrepMultiset::new();
    for (&k, cols) in spaces.range(0..) {
        let rows = spaces.get(&(k + 2)).map(Vec::as_slice).unwrap_or(&[]);
        let image_rank = if rows.is_empty() {
            0
        } else {
            rank(m.x.block(rows, cols))
        };
        out.insert(k as u32, (cols.len() - image_rank) as u64);
    }
    out
}

/// Whether `Y^k` maps the weight-`k` space bijectively onto the weight-`-k`
/// space.
pub fn lefschetz_power_is_iso(m: &Sl2MatrixModule, k: u32) -> bool {
    let k = i64::from(k);
    let src = m.weight_space(k);
    let dst = m.weight_space(-k);
    if src.len() != dst.len() {
        return false;
    }
    if src.is_empty() {
        return true;
    }
    let images: Vec<Vec<BigRational>> = src
        .iter()
        .map(|&i| {
            let mut v = basis_vector(i);
            for _ in 0..k {
                v = m.y.apply(&v);
            }
            dst.iter()
                .map(|j| v.get(j).cloned().unwrap_or_else(BigRational::zero))
                .collect()
        })
        .collect();
    rank(images) == src.len()
}
