//! Exact computations with finite-dimensional Lie algebras given by structure
//! constants, and with post-Lie algebra (PA) structures on pairs of them.
//!
//! Everything works over ℚ (arbitrary precision) or over a prime field 𝔽ₚ
//! with `p` odd. The main entry points:
//!
//! * [`LieAlgebra`]: brackets, Jacobi check, central and derived series,
//!   center, derivations, Heisenberg recognition.
//! * [`PaPair`]: a product `x·y` on a pair `(g, n)`, with verification of the
//!   PA / CPA / pre-Lie / LR axioms, annihilators and `H⁰`.
//! * [`symmetrization`]: the commutative product `x∘y = ½(x·y + y·x)` and the
//!   conditions under which it is a CPA-structure.
//! * [`grading`]: ℤⁿ-gradings, supports and the nilpotency class bound.
//! * [`catalog`]: named, parameterized algebras and pairs.
//! * [`ffsearch`]: exhaustive enumeration of PA-structures over small 𝔽ₚ.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod ffsearch;
pub mod grading;
pub mod lie;
pub mod linalg;
pub mod pa;
pub mod symmetrization;
pub mod verdict;

pub use lie::{LieAlgebra, LieError, NilpotencyClass};
pub use linalg::{Field, LinalgError, Matrix, Scalar, Subspace};
pub use pa::{BilinearProduct, PaError, PaPair};
pub use verdict::{Identity, Verdict, Witness};
