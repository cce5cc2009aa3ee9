//! Exhaustive checks of the subgroup-level statements over small finite
//! rings.

mod group;
mod ring;
mod verify;

pub use group::{mixed_commutator, FinMatrix, Gen, MatCtx, SubgroupClosure, DEFAULT_CAP};
pub use ring::{FiniteIdeal, FiniteRing, MAX_RING_SIZE};
pub use verify::{
    eval_elem, eval_word, int_image, rel_elementary, unrel_elementary, verify_lemma6, verify_theorem1,
    verify_theorem2, Report,
};

#[cfg(test)]
mod tests;
