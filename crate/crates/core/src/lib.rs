//! Symbolic and finite-ring machinery for mixed commutator subgroups of
//! elementary matrix groups.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod coeff;
pub mod elemgroup;
pub mod error;
pub mod freering;
pub mod identities;
pub mod oracle;
pub mod rewrite;

pub use coeff::Coeff;
pub use error::Error;
pub use freering::{IdealPattern, Monomial, RingElem, Sort, Symbol};
pub use elemgroup::{eval, free_reduce, matrix_level, steinberg_comm, word_comm, word_conj, word_inv, z_gen, GroupWord, SquareMatrix, Transvection, ZGenRecord};
