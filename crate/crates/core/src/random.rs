//! Seeded sampling of ring elements and matrices.
//!
//! Every randomized check in the crate draws from a `ChaCha8Rng` so that a
//! seed reproduces the same stream on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matring::Matrix;
use crate::ptower::{Elem, QuotientRing};
use std::sync::Arc;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_elem(ring: &QuotientRing, rng: &mut impl Rng) -> Elem {
    let q = ring.modulus().q();
    Elem((0..ring.degree()).map(|_| rng.random_range(0..q)).collect())
}

pub fn random_unit(ring: &QuotientRing, rng: &mut impl Rng) -> Elem {
    loop {
        let a = random_elem(ring, rng);
        if ring.is_unit(&a) {
            return a;
        }
    }
}

pub fn random_matrix(ring: &Arc<QuotientRing>, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(ring.clone(), rows, cols, |_, _| random_elem(ring, rng))
}

/// Rejection sampling on the determinant.
pub fn random_invertible(ring: &Arc<QuotientRing>, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let m = random_matrix(ring, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}
