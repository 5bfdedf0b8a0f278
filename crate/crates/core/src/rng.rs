//! Seeded sampling helpers shared by the check/scan operations. Every sampler
//! takes an explicit seed so reports are reproducible.

use alloc::vec::Vec;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Field;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Scalar with components uniform in [-1, 1]; imaginary part zero over R.
pub fn scalar(rng: &mut ChaCha8Rng, field: Field) -> Complex64 {
    let re = rng.gen_range(-1.0..1.0);
    match field {
        Field::Real => Complex64::new(re, 0.0),
        Field::Complex => Complex64::new(re, rng.gen_range(-1.0..1.0)),
    }
}

/// Vector with components uniform in the unit box, rejecting tiny norms.
pub fn vector(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| scalar(rng, field)).collect();
        if crate::linalg::norm(&v) > 1e-3 {
            return v;
        }
    }
}

/// Unit vector by normalizing a box sample.
pub fn direction(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Vec<Complex64> {
    let v = vector(rng, field, n);
    let nv = crate::linalg::norm(&v);
    crate::linalg::scale(&v, Complex64::new(1.0 / nv, 0.0))
}
