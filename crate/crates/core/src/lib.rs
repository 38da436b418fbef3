//! Exact enumeration of permutation statistics over the Coxeter groups of
//! types A, B and D: canonical reduced words, the sign-reversing involutions
//! built from them, the Foata–Zeilberger encoding by Laguerre histories,
//! signed generating polynomials and the Bruhat-order matching.

pub mod bruhat;
pub mod enumerate;
pub mod error;
pub mod genpoly;
pub mod involutions;
pub mod laguerre;
pub mod perm;
pub mod verify;
pub mod words;

pub use enumerate::{ElementSpace, Group, PermutationSpace, SignedSpace};
pub use error::{Error, Result};
pub use perm::{Permutation, SignedPermutation, StatBundle};
pub use words::{CanonicalWord, CoxeterElement, CoxeterType};
