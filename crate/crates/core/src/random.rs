//! Seeded generators of random exact field elements, matrices and triples.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::charvariety::Triple;
use crate::numfield::{FieldElem, Rational, DIM};
use crate::sl2core::Mat2;

pub const DEFAULT_SEED: u64 = 0x5EED_2024;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A field element with at most `terms` nonzero coordinates, each a ratio
/// of small integers.
pub fn random_field_elem<R: Rng + ?Sized>(rng: &mut R, terms: usize) -> FieldElem {
    let mut coeffs: [Rational; DIM] = std::array::from_fn(|_| Rational::from_integer(0.into()));
    let mut slots: Vec<usize> = (0..DIM).collect();
    slots.shuffle(rng);
    for &k in slots.iter().take(terms) {
        let p: i64 = rng.gen_range(-5..=5);
        let q: i64 = rng.gen_range(1..=3);
        coeffs[k] = Rational::new(p.into(), q.into());
    }
    FieldElem::from_coeffs(coeffs)
}

/// Product of a few elementary matrices, exactly in SL₂.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let zero = FieldElem::zero;
    let one = FieldElem::one;
    let mut m = Mat2::identity();
    for step in 0..3 {
        let t = random_field_elem(rng, 2);
        let e = if step % 2 == 0 {
            Mat2::new(one(), t, zero(), one())
        } else {
            Mat2::new(one(), zero(), t, one())
        };
        m = &m * &e.expect("elementary matrices have determinant 1");
    }
    if rng.gen_bool(0.5) {
        m = &m * &Mat2::neg_identity();
    }
    m
}

/// A random matrix with integer entries, exactly in SL₂(ℤ).
pub fn random_sl2_integer<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let mut m = Mat2::identity();
    for step in 0..4 {
        let t = FieldElem::from_int(rng.gen_range(-3..=3));
        let e = if step % 2 == 0 {
            Mat2::new(FieldElem::one(), t, FieldElem::zero(), FieldElem::one())
        } else {
            Mat2::new(FieldElem::one(), FieldElem::zero(), t, FieldElem::one())
        };
        m = &m * &e.expect("elementary matrices have determinant 1");
    }
    m
}

pub fn random_triple<R: Rng + ?Sized>(rng: &mut R) -> Triple {
    Triple::new(
        random_field_elem(rng, 2),
        random_field_elem(rng, 2),
        random_field_elem(rng, 2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_a_seed() {
        let a = random_sl2(&mut seeded_rng(7));
        let b = random_sl2(&mut seeded_rng(7));
        assert_eq!(a, b);
        let t = random_triple(&mut seeded_rng(1));
        assert_eq!(t, random_triple(&mut seeded_rng(1)));
    }
}
