use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::{l_matrix, Element};
use crate::linalg::{hermitian_eigen, CMatrix};

/// Splitting of a factor into the eigenspaces of `L(e,e)` at 0, 1/2 and 1.
#[derive(Clone, Debug)]
pub struct PeirceDecomposition {
    /// Raw eigenvalues of `L(e,e)`, ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal bases of `E₀(e)`, `E₁(e)`, `E₂(e)`.
    pub bases: [Vec<Element>; 3],
    /// Coordinate projectors `P₀`, `P₁`, `P₂`.
    pub projectors: [CMatrix; 3],
}

impl PeirceDecomposition {
    pub fn dims(&self) -> [usize; 3] {
        [
            self.bases[0].len(),
            self.bases[1].len(),
            self.bases[2].len(),
        ]
    }

    pub fn projector(&self, k: usize) -> &CMatrix {
        &self.projectors[k]
    }

    /// Residuals of `P₀+P₁+P₂ = I` and `PᵢPⱼ = δᵢⱼPᵢ` (Frobenius norms).
    pub fn algebra_residuals(&self) -> PeirceResiduals {
        let d = self.projectors[0].nrows();
        let sum = &self.projectors[0] + &self.projectors[1] + &self.projectors[2];
        let mut idempotent: f64 = 0.0;
        let mut annihilating: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let prod = &self.projectors[i] * &self.projectors[j];
                if i == j {
                    idempotent = idempotent.max((prod - &self.projectors[i]).norm());
                } else {
                    annihilating = annihilating.max(prod.norm());
                }
            }
        }
        PeirceResiduals {
            sum_to_identity: (sum - CMatrix::identity(d, d)).norm(),
            idempotent,
            annihilating,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PeirceResiduals {
    pub sum_to_identity: f64,
    pub idempotent: f64,
    pub annihilating: f64,
}

impl PeirceResiduals {
    pub fn max(&self) -> f64 {
        self.sum_to_identity
            .max(self.idempotent)
            .max(self.annihilating)
    }
}

pub(crate) fn compute(e: &Element) -> Result<PeirceDecomposition> {
    let f = *e.factor();
    let tol = f.tol.eig_cluster_tol;
    let (values, vectors) = hermitian_eigen(&l_matrix(e, e));
    let d = f.dim();
    let mut columns: [Vec<usize>; 3] = Default::default();
    for (idx, &lambda) in values.iter().enumerate() {
        let k = (lambda * 2.0).round();
        if !(0.0..=2.0).contains(&k) || (lambda - k / 2.0).abs() > tol {
            return Err(Error::PeirceCluster {
                eigenvalue: lambda,
                tol,
            });
        }
        columns[k as usize].push(idx);
    }
    let mut bases: [Vec<Element>; 3] = Default::default();
    let mut projectors: [CMatrix; 3] = [
        CMatrix::zeros(d, d),
        CMatrix::zeros(d, d),
        CMatrix::zeros(d, d),
    ];
    for k in 0..3 {
        let v = CMatrix::from_fn(d, columns[k].len(), |i, j| vectors[(i, columns[k][j])]);
        projectors[k] = &v * v.adjoint();
        bases[k] = (0..v.ncols())
            .map(|j| f.element_from_coords_unchecked(&v.column(j).into_owned()))
            .collect();
    }
    Ok(PeirceDecomposition {
        eigenvalues: values,
        bases,
        projectors,
    })
}
