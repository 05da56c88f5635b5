//! Seeded, portable sampling of field elements and function tables.
//!
//! All randomized entry points take a caller-supplied generator so that a
//! 64-bit seed fully determines every drawn value. ChaCha8 is used as the
//! fixed algorithm; uniform draws go through explicit rejection sampling so
//! the byte stream alone determines the result.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldElement, FieldSpec};
use crate::func::FunctionTable;

/// The crate-wide deterministic generator.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from `[0, bound)` by rejection; `bound` must be nonzero.
pub fn uniform_below(rng: &mut impl RngCore, bound: u64) -> u64 {
    assert!(bound > 0);
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

pub fn random_element(spec: &FieldSpec, rng: &mut impl RngCore) -> FieldElement {
    spec.element_from_index(uniform_below(rng, spec.order())).unwrap()
}

pub fn random_nonzero_element(spec: &FieldSpec, rng: &mut impl RngCore) -> FieldElement {
    spec.element_from_index(1 + uniform_below(rng, spec.order() - 1)).unwrap()
}

/// A uniformly random function table over the field.
pub fn random_table(spec: &FieldSpec, rng: &mut impl RngCore) -> FunctionTable {
    let values = (0..spec.order()).map(|_| random_element(spec, rng)).collect();
    FunctionTable::new(spec.clone(), values).unwrap()
}
