use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{LinearOperator, Linearity};
use crate::error::{Error, Result};
use crate::factors::{
    random_real_orthogonal_with, rng_from_seed, FactorDescriptor, ToleranceConfig,
};
use crate::linalg::{solve, CMatrix, CVector};

/// Linear extension of a map on unit vectors of `ℂ^dim` that preserves inner
/// products on the given data. The sources must contain a basis; it is picked
/// greedily in input order.
pub fn extend_sphere_map(images: &[(CVector, CVector)], dim: usize) -> Result<LinearOperator> {
    let tol = ToleranceConfig::default();
    let Some((_, first)) = images.first() else {
        return Err(Error::InvalidSpec("no sphere data given".into()));
    };
    let k = first.len();
    for (i, (u, w)) in images.iter().enumerate() {
        if u.len() != dim || w.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "pair {i}: expected lengths {dim} -> {k}, got {} -> {}",
                u.len(),
                w.len()
            )));
        }
        if (u.norm() - 1.0).abs() > tol.norm_tol || (w.norm() - 1.0).abs() > tol.norm_tol {
            return Err(Error::InvalidSpec(format!(
                "pair {i} is not on the unit sphere"
            )));
        }
    }

    let mut mismatch: f64 = 0.0;
    for (i, (u, w)) in images.iter().enumerate() {
        for (e, we) in &images[i..] {
            mismatch = mismatch.max((we.dotc(w) - e.dotc(u)).norm());
        }
    }
    if mismatch > tol.identity_tol {
        return Err(Error::InnerProductMismatch { mismatch });
    }

    let mut chosen: Vec<usize> = Vec::new();
    let mut ortho: Vec<CVector> = Vec::new();
    for (i, (u, _)) in images.iter().enumerate() {
        if chosen.len() == dim {
            break;
        }
        let mut r = u.clone();
        for q in &ortho {
            r -= q * q.dotc(&r);
        }
        let n = r.norm();
        if n > 1e-6 {
            ortho.push(r.unscale(n));
            chosen.push(i);
        }
    }
    if chosen.len() < dim {
        return Err(Error::BasisConstructionFailed(format!(
            "sources span only {} of {dim} dimensions",
            chosen.len()
        )));
    }
    let b = CMatrix::from_fn(dim, dim, |r, c| images[chosen[c]].0[r]);
    let y = CMatrix::from_fn(k, dim, |r, c| images[chosen[c]].1[r]);
    let mt = solve(&b.adjoint(), &y.adjoint())
        .ok_or_else(|| Error::BasisConstructionFailed("source basis is singular".into()))?;
    LinearOperator::new(
        FactorDescriptor::type1(dim, 1)?,
        FactorDescriptor::type1(k, 1)?,
        mt.adjoint(),
        Linearity::ComplexLinear,
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrthogonalityScale {
    pub gamma: f64,
    /// Max `|‖Ax‖ − γ‖x‖|` over unit samples.
    pub residual: f64,
    /// Largest `|⟨Ax, Ay⟩| / (‖Ax‖‖Ay‖)` over the orthogonal pairs tried.
    pub worst_orthogonality: f64,
    pub pairs: usize,
    pub samples: usize,
    pub seed: u64,
}

/// Recovers `γ` with `A = γ·(isometry)` from a real map preserving
/// orthogonality.
pub fn orthogonality_scale(
    a: &DMatrix<f64>,
    samples: usize,
    seed: u64,
) -> Result<OrthogonalityScale> {
    let n = a.ncols();
    if n == 0 || a.nrows() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected a square map, got {}x{n}",
            a.nrows()
        )));
    }
    if a.norm() == 0.0 {
        return Err(Error::InvalidSpec("the zero map has no scale".into()));
    }
    let tol = ToleranceConfig::default().identity_tol;
    let unit = |i: usize| DVector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 });
    let s = std::f64::consts::FRAC_1_SQRT_2;

    let mut pairs: Vec<(DVector<f64>, DVector<f64>)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((unit(i), unit(j)));
            pairs.push(((unit(i) + unit(j)) * s, (unit(i) - unit(j)) * s));
        }
    }
    let mut rng = rng_from_seed(seed);
    let mut unit_samples = Vec::with_capacity(samples);
    for _ in 0..samples {
        let q = random_real_orthogonal_with(n, &mut rng);
        unit_samples.push(q.column(0).into_owned());
        if n >= 2 {
            pairs.push((q.column(0).into_owned(), q.column(1).into_owned()));
        }
    }

    let mut worst: f64 = 0.0;
    for (x, y) in &pairs {
        let (ax, ay) = (a * x, a * y);
        let denom = ax.norm() * ay.norm();
        let c = if denom > 0.0 {
            ax.dot(&ay).abs() / denom
        } else {
            1.0
        };
        worst = worst.max(c);
    }
    if worst > tol {
        return Err(Error::NotOrthogonalityPreserving { worst });
    }

    let gamma = (a * unit(0)).norm();
    let residual = unit_samples
        .iter()
        .chain((0..n).map(unit).collect::<Vec<_>>().iter())
        .map(|x| ((a * x).norm() - gamma * x.norm()).abs())
        .fold(0.0, f64::max);
    Ok(OrthogonalityScale {
        gamma,
        residual,
        worst_orthogonality: worst,
        pairs: pairs.len(),
        samples,
        seed,
    })
}
