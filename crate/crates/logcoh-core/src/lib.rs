//! Exact computational algebra for normal-crossings pairs.
//!
//! The core pipeline: describe a pair (ambient space, divisor components) by
//! the cohomology rings of its open strata and the restriction maps between
//! them, then build the associated log cohomology ring, run its weight
//! spectral sequence, and test degeneration / classification criteria.
//! Hyperplane arrangements get a dedicated combinatorial model
//! (Orlik-Solomon algebras) plus the mirror-side Jacobian ring checks.
//!
//! Everything is exact: matrices over `BigRational` or a prime field, no
//! floating point anywhere.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arrangements;
pub mod criteria;
pub mod field;
pub mod graded;
pub mod logring;
pub mod matrix;
pub mod pair;
pub mod snf;
pub mod specseq;

pub use field::{Field, Fp, Rat};
pub use matrix::Matrix;
