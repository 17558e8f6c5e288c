use serde::Serialize;

use super::{
    jb_norm, l_matrix, random_element_with, rng_from_seed, triple, Element, FactorDescriptor,
};
use crate::linalg::{hermitian_eigen, CMatrix};

/// Worst-case residuals of the JB*-triple axioms over a seeded sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    /// Max Frobenius norm of the Jordan identity residual matrix.
    pub jordan_residual_max: f64,
    /// Max `‖L(a,a) − L(a,a)*‖_F`.
    pub l_selfadjoint_residual_max: f64,
    /// Smallest eigenvalue of any sampled `L(a,a)`.
    pub l_min_eigenvalue: f64,
    /// Max `|‖{a,a,a}‖ − ‖a‖³|`.
    pub cube_norm_residual_max: f64,
    pub samples: usize,
    pub seed: u64,
}

fn unit_sample<R: rand::Rng + ?Sized>(f: &FactorDescriptor, rng: &mut R) -> Element {
    let x = random_element_with(f, rng);
    let n = x.reference_norm();
    if n > 0.0 {
        x.scale_real(1.0 / n)
    } else {
        x
    }
}

/// Checks axioms (a)–(c) on `samples` draws of `(a, b, x, y)`, each rescaled
/// to unit reference norm.
pub fn audit_axioms(f: &FactorDescriptor, samples: usize, seed: u64) -> AxiomReport {
    let mut rng = rng_from_seed(seed);
    let mut report = AxiomReport {
        jordan_residual_max: 0.0,
        l_selfadjoint_residual_max: 0.0,
        l_min_eigenvalue: f64::INFINITY,
        cube_norm_residual_max: 0.0,
        samples,
        seed,
    };
    for _ in 0..samples {
        let a = unit_sample(f, &mut rng);
        let b = unit_sample(f, &mut rng);
        let x = unit_sample(f, &mut rng);
        let y = unit_sample(f, &mut rng);

        // L(a,b)L(x,y) − L(x,y)L(a,b) − L(L(a,b)x, y) + L(x, L(b,a)y)
        let lab = l_matrix(&a, &b);
        let lxy = l_matrix(&x, &y);
        let labx = triple(&a, &b, &x);
        let lbay = triple(&b, &a, &y);
        let jordan: CMatrix = &lab * &lxy - &lxy * &lab - l_matrix(&labx, &y) + l_matrix(&x, &lbay);
        report.jordan_residual_max = report.jordan_residual_max.max(jordan.norm());

        let laa = l_matrix(&a, &a);
        report.l_selfadjoint_residual_max = report
            .l_selfadjoint_residual_max
            .max((&laa - laa.adjoint()).norm());
        let (eigs, _) = hermitian_eigen(&laa);
        if let Some(&lo) = eigs.first() {
            report.l_min_eigenvalue = report.l_min_eigenvalue.min(lo);
        }

        let cube = jb_norm(&triple(&a, &a, &a));
        report.cube_norm_residual_max = report
            .cube_norm_residual_max
            .max((cube - jb_norm(&a).powi(3)).abs());
    }
    if samples == 0 {
        report.l_min_eigenvalue = 0.0;
    }
    report
}
