//! Exact kernels for symmetric functions, Grassmannian Schubert calculus and
//! the p-adic divisibility of the invariant
//! `g(m, n) = ⟨s_{m^{n-m}} s_{(n-m)^m}, s_{m^m}^{2(k-1)}⟩`.
//!
//! * [`arith`]: big-integer combinatorics and p-adic valuations.
//! * [`partition`]: partitions, rectangles, transposes and complements.
//! * [`symfunc`]: Schur/elementary/monomial bases, Kostka and LR numbers.
//! * [`schubert`]: truncated Chow rings and the Segre pullback class.
//! * [`conjectures`]: the three evaluators of `g` and the valuation checks.

pub mod arith;
pub mod conjectures;
pub mod error;
pub mod partition;
pub mod schubert;
pub mod symfunc;

pub use arith::{ExactInt, Valuation};
pub use error::{Error, Result};
pub use partition::{Partition, Rectangle};
