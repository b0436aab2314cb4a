//! Seeded sampling of field elements, algebra elements and coefficient lists.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraElement};
use crate::field::{Fe, GaloisField};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field_vec<R: Rng + ?Sized>(f: &GaloisField, n: usize, rng: &mut R) -> Vec<Fe> {
    (0..n).map(|_| f.random(rng)).collect()
}

pub fn element<R: Rng + ?Sized>(a: &Algebra, rng: &mut R) -> AlgebraElement {
    AlgebraElement::from_coords(field_vec(a.field(), a.dim(), rng))
}

pub fn elements<R: Rng + ?Sized>(a: &Algebra, n: usize, rng: &mut R) -> Vec<AlgebraElement> {
    (0..n).map(|_| element(a, rng)).collect()
}
