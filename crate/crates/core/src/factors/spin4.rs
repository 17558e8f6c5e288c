//! The four-dimensional spin factor realized inside `M₂(ℂ)`.
//!
//! The real basis `f₁..f₄` is sent to `I, iσ₁, iσ₂, iσ₃`; the spin conjugation
//! then corresponds to `x ↦ σ₂ conj(x) σ₂`. The map is verified numerically
//! rather than assumed, see [`verify_spin4_model`].

use serde::Serialize;

use super::{
    conjugate, jb_norm, random_element_with, rng_from_seed, triple, Element, FactorDescriptor,
    FactorKind,
};
use crate::error::{Error, Result};
use crate::linalg::{c64, CMatrix};

fn images() -> [CMatrix; 4] {
    let o = c64(0.0, 0.0);
    let one = c64(1.0, 0.0);
    let i = c64(0.0, 1.0);
    [
        CMatrix::from_row_slice(2, 2, &[one, o, o, one]),
        // iσ₁
        CMatrix::from_row_slice(2, 2, &[o, i, i, o]),
        // iσ₂ = i [[0, -i], [i, 0]]
        CMatrix::from_row_slice(2, 2, &[o, one, -one, o]),
        // iσ₃
        CMatrix::from_row_slice(2, 2, &[i, o, o, -i]),
    ]
}

/// Matrix of the model map from spin(4) coordinates to row-major `M₂(ℂ)`
/// coordinates.
pub fn spin4_matrix_model() -> CMatrix {
    let imgs = images();
    CMatrix::from_fn(4, 4, |row, col| imgs[col][(row / 2, row % 2)])
}

pub fn spin4_to_matrix(x: &Element) -> Result<Element> {
    if x.kind() != (FactorKind::Spin { n: 4 }) {
        return Err(Error::UnsupportedForFactor {
            op: "spin4_to_matrix",
            factor: x.kind(),
        });
    }
    let target = FactorDescriptor::new(FactorKind::Type1 { m: 2, n: 2 }, x.factor().tol)?;
    let coords = spin4_matrix_model() * x.coords();
    target.from_coords(&coords)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spin4ModelReport {
    /// Max `‖J{x,y,z} − {Jx,Jy,Jz}‖`.
    pub product_residual_max: f64,
    /// Max `|‖Jx‖_op − ‖x‖_spin|`.
    pub norm_residual_max: f64,
    /// Max `‖J(x̄) − σ₂ conj(Jx) σ₂‖`.
    pub conjugation_residual_max: f64,
    /// Smallest singular value of the model matrix (bijectivity).
    pub min_singular_value: f64,
    pub samples: usize,
    pub seed: u64,
}

pub fn verify_spin4_model(samples: usize, seed: u64) -> Spin4ModelReport {
    let spin = FactorDescriptor::spin(4).expect("spin(4) is valid");
    let mut rng = rng_from_seed(seed);
    let sigma2 = CMatrix::from_row_slice(
        2,
        2,
        &[c64(0.0, 0.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(0.0, 0.0)],
    );
    let j = |x: &Element| spin4_to_matrix(x).expect("spin(4) input");
    let mut report = Spin4ModelReport {
        product_residual_max: 0.0,
        norm_residual_max: 0.0,
        conjugation_residual_max: 0.0,
        min_singular_value: crate::linalg::singular_values(&spin4_matrix_model())
            .last()
            .copied()
            .unwrap_or(0.0),
        samples,
        seed,
    };
    for _ in 0..samples {
        let x = random_element_with(&spin, &mut rng);
        let y = random_element_with(&spin, &mut rng);
        let z = random_element_with(&spin, &mut rng);
        let lhs = j(&triple(&x, &y, &z));
        let rhs = triple(&j(&x), &j(&y), &j(&z));
        report.product_residual_max = report
            .product_residual_max
            .max(crate::linalg::op_norm(&(lhs.data() - rhs.data())));
        report.norm_residual_max = report
            .norm_residual_max
            .max((jb_norm(&j(&x)) - jb_norm(&x)).abs());
        let jbar = j(&conjugate(&x).expect("spin conjugation"));
        let model_bar = &sigma2 * j(&x).data().map(|c| c.conj()) * &sigma2;
        report.conjugation_residual_max = report
            .conjugation_residual_max
            .max(crate::linalg::op_norm(&(jbar.data() - model_bar)));
    }
    report
}
