use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{Element, FactorDescriptor, FactorKind};
use crate::linalg::{c64, CMatrix, CVector};

/// The generator used for every seeded draw in the crate.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// i.i.d. standard complex Gaussian entries (`E|z|² = 1`).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| c64(s * gaussian(rng), s * gaussian(rng)))
}

pub fn random_element_with<R: Rng + ?Sized>(f: &FactorDescriptor, rng: &mut R) -> Element {
    let (r, c) = f.kind.shape();
    let g = complex_gaussian(rng, r, c);
    let data = match f.kind {
        FactorKind::Type2 { .. } => (&g - g.transpose()).scale(0.5),
        FactorKind::Type3 { .. } => (&g + g.transpose()).scale(0.5),
        _ => g,
    };
    Element::from_raw(*f, data)
}

/// Gaussian element of `f`, projected onto the subtriple for types 2/3.
pub fn random_element(f: &FactorDescriptor, seed: u64) -> Element {
    random_element_with(f, &mut rng_from_seed(seed))
}

pub fn random_unit_vector_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CVector {
    loop {
        let g = complex_gaussian(rng, n, 1).column(0).into_owned();
        let norm = g.norm();
        if norm > 1e-12 {
            return g.unscale(norm);
        }
    }
}

/// Haar unitary: QR of a complex Gaussian matrix with the phases of `diag(R)`
/// moved into `Q`.
pub fn random_unitary_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let qr = complex_gaussian(rng, n, n).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            c64(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    random_unitary_with(n, &mut rng_from_seed(seed))
}

/// Haar orthogonal matrix from the QR of a real Gaussian matrix.
pub fn random_real_orthogonal_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let (mut q, r) = g.qr().unpack();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

pub fn random_real_orthogonal(n: usize, seed: u64) -> DMatrix<f64> {
    random_real_orthogonal_with(n, &mut rng_from_seed(seed))
}
