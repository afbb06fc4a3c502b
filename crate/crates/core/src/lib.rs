//! Exact sl(2) representation theory for multiprojective spaces and the
//! cohomology of symmetric products of curves.
//!
//! The cohomology of `P^{n_1} x ... x P^{n_r}` is, as an sl(2)-module under
//! the Lefschetz operators, the tensor product of the irreducibles
//! `Sym^{n_i}(C^2)`. Its weight character determines the partition
//! `(n_1, ..., n_r)`, which separates non-isomorphic spaces.

pub mod classifier;
pub mod cli;
pub mod exactalg;
pub mod json;
pub mod lefschetz;
pub mod partition;
pub mod sl2rep;
pub mod symcurve;

pub use classifier::{classify, ClassificationVerdict, Reason, Verdict};
pub use exactalg::{binom, LaurentPoly, TruncatedBiseries};
pub use partition::Partition;
pub use sl2rep::{Character, IrrepMultiset};
pub use symcurve::PoincarePolynomial;
