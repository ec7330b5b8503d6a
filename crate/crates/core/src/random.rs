//! Seeded random tensors and matrices for tests, examples and the
//! verification suite. Everything is deterministic in the seed.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, C64, ZERO};
use crate::tensor::StructureTensor;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Antisymmetric tensor with standard-normal real and imaginary parts on the
/// independent coefficients.
pub fn random_tensor(n: usize, seed: u64) -> StructureTensor {
    let mut r = rng(seed);
    StructureTensor::from_fn(n, |_, _, _| gaussian(&mut r))
}

pub fn gaussian_matrix(n: usize, seed: u64) -> ComplexMatrix {
    gaussian_matrix_from(n, &mut rng(seed))
}

pub fn gaussian_matrix_from(n: usize, r: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| gaussian(r))
}

/// Haar-ish unitary from the QR factorization of a Gaussian matrix.
pub fn unitary_from(n: usize, r: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = gaussian_matrix_from(n, r).into_matrix();
    let qr = g.qr();
    let (q, rr) = (qr.q(), qr.r());
    // Fix phases so the distribution does not depend on QR sign conventions.
    let phases = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            let d = rr[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                C64::new(1.0, 0.0)
            }
        } else {
            ZERO
        }
    });
    ComplexMatrix::new(q * phases).expect("finite")
}

pub fn unitary(n: usize, seed: u64) -> ComplexMatrix {
    unitary_from(n, &mut rng(seed))
}

/// `U diag(e^{s_i}) V` with `s_i` uniform in `[-spread, spread]`, so the
/// condition number is at most `e^{2 spread}`.
pub fn bounded_condition_from(n: usize, spread: f64, r: &mut ChaCha8Rng) -> ComplexMatrix {
    let u = unitary_from(n, r);
    let v = unitary_from(n, r);
    let diag: Vec<f64> = (0..n)
        .map(|_| r.random_range(-spread..=spread).exp())
        .collect();
    u.mul(&ComplexMatrix::from_real_diagonal(&diag)).mul(&v)
}

/// Normal matrix `U diag(z) U^*` with Gaussian eigenvalues.
pub fn normal_matrix_from(n: usize, r: &mut ChaCha8Rng) -> ComplexMatrix {
    let u = unitary_from(n, r);
    let d = ComplexMatrix::from_fn(n, |i, j| if i == j { gaussian(r) } else { ZERO });
    u.mul(&d).mul(&u.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensors_are_reproducible() {
        assert_eq!(random_tensor(4, 7), random_tensor(4, 7));
        assert_ne!(random_tensor(4, 7), random_tensor(4, 8));
    }

    #[test]
    fn unitary_is_unitary() {
        let u = unitary(5, 11);
        let e = u.mul(&u.adjoint()).sub(&ComplexMatrix::identity(5));
        assert!(e.norm() < 1e-12);
    }

    #[test]
    fn condition_is_bounded() {
        let g = bounded_condition_from(4, 1.0, &mut rng(2));
        assert!(g.condition_number() <= 1.0f64.mul_add(2.0, 0.0).exp() + 1e-9);
    }
}
