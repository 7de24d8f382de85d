//! Codes over the rings `R_k = F2[u_1..u_k] / (u_i^2)` under the homogeneous
//! weight, and their binary images under the Reed-Muller Gray map `ψ_k`.
//!
//! * [`ring`]: element arithmetic, units, the generating character and the
//!   homogeneous weight.
//! * [`gray`]: the isometry `ψ_k` onto `RM(1, 2^k - 1)`, its inverse and the
//!   coordinate permutations induced by unit multiplication.
//! * [`poly`]: polynomials modulo `x^m - λ`, `λ`-shifts and twistulant matrices.
//! * [`codes`]: quasi-twisted codes, binary images, weight enumerators.
//! * [`analysis`]: code families, table verification, bounds and search.

pub mod analysis;
pub mod bits;
pub mod codes;
pub mod error;
pub mod gray;
pub mod notation;
pub mod poly;
pub mod ring;

pub use bits::{BitVec, EchelonBasis};
pub use codes::{
    BinaryCode, CodeParameters, CodeRecord, QtCode, RkCode, WeightEnumerator, DEFAULT_BUDGET,
};
pub use error::{Error, Result};
pub use gray::{CoordPermutation, GrayTable};
pub use notation::Notation;
pub use poly::{Polynomial, RawPoly, TwistulantMatrix};
pub use ring::{HomWeight, RingElement, K_MAX};
