//! Exact combinatorics of the affine Weyl group of type A, parabolic
//! tableaux, and Iwahori-Bruhat cells of Laurent-polynomial matrices.
//!
//! The crate is organized around five layers:
//!
//! - [`partition`]: integer partitions, conjugation, dominance order.
//! - [`tableau`]: the tableau attached to a parabolic subgroup of `SL_n`
//!   and all of its derived data (block sizes, column profile, the
//!   red/blue split, the `l`/`m`/`t` enumerations).
//! - [`affine`]: the affine Weyl group as monomial matrices and windows,
//!   with length, root action, descents, Bruhat order and parabolic
//!   coset representatives.
//! - [`laurent`]: exact rational Laurent polynomials and matrices, loop
//!   group membership predicates, and Bruhat cell extraction.
//! - [`constructions`]: the named matrices and group elements built from
//!   a tableau (`Z`, `b`, `c`, the cell of `1 - t^{-1}Z`, `kappa`,
//!   `tau_q`, the Springer-type maps) together with their verdicts.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod affine;
pub mod constructions;
pub mod error;
pub mod laurent;
pub mod partition;
pub mod rational;
pub mod sample;
pub mod tableau;
pub mod verify;

pub use affine::{AffinePermutation, AffineRoot, Coroot};
pub use error::Error;
pub use laurent::{LaurentMatrix, LaurentPoly, Subgroup};
pub use partition::Partition;
pub use rational::QMatrix;
pub use tableau::{ParabolicDescriptor, ParabolicTableau};
