//! Writing an element as a positive combination of mutually orthogonal minimal
//! tripotents. The decomposition is not unique; only the multiset of
//! coefficients is.

use nalgebra::DMatrix;

use super::Tripotent;
use crate::error::{Error, Result};
use crate::factors::{inner, jb_norm, Element, FactorKind};
use crate::linalg::{c64, real_symmetric_eigen, svd_sorted, CMatrix, CVector, C64};

pub fn minimal_orthogonal_decomposition(x: &Element) -> Result<Vec<(f64, Tripotent)>> {
    let f = *x.factor();
    let scale = jb_norm(x);
    let cut = f.tol.identity_tol * scale.max(1.0);
    if scale <= cut {
        return Ok(Vec::new());
    }
    let raw = match f.kind {
        FactorKind::Type1 { .. } => type1_parts(x, cut),
        FactorKind::Type2 { n } => type2_parts(x, n, cut),
        FactorKind::Type3 { n } => type3_parts(x, n, cut),
        FactorKind::Spin { n } => spin_parts(x, n, cut),
    };

    let mut parts = Vec::with_capacity(raw.len());
    let mut rebuilt = f.zero();
    for (coef, data) in raw {
        let e = Element::from_raw(f, data);
        rebuilt.add_scaled(c64(coef, 0.0), &e);
        let t = Tripotent::new(e).map_err(|err| match err {
            Error::NotTripotent { residual } => Error::DecompositionFailed { residual },
            other => other,
        })?;
        parts.push((coef, t));
    }
    parts.sort_by(|a, b| b.0.total_cmp(&a.0));
    let residual = jb_norm(&x.checked_sub(&rebuilt)?);
    if residual > cut.max(f.tol.identity_tol) {
        return Err(Error::DecompositionFailed { residual });
    }
    Ok(parts)
}

/// Singular value decomposition: `x = Σ σₖ uₖ vₖ*`.
fn type1_parts(x: &Element, cut: f64) -> Vec<(f64, CMatrix)> {
    let svd = svd_sorted(x.data());
    svd.s
        .iter()
        .enumerate()
        .take_while(|(_, &s)| s > cut)
        .map(|(k, &s)| (s, svd.u.column(k) * svd.v_t.row(k)))
        .collect()
}

/// Peels off the top singular pair of a skew-symmetric matrix. If
/// `x v = σ w` then with `a = w`, `b = v̄` the rank-two tripotent
/// `a bᵗ − b aᵗ` agrees with `x/σ` on `ā, b̄` and the remainder is orthogonal
/// to it.
fn type2_parts(x: &Element, n: usize, cut: f64) -> Vec<(f64, CMatrix)> {
    let mut rest = x.data().clone();
    let mut parts = Vec::new();
    for _ in 0..=n / 2 {
        let svd = svd_sorted(&rest);
        let s = svd.s[0];
        if s <= cut {
            break;
        }
        let a: CVector = svd.u.column(0).into_owned();
        let mut b: CVector = svd.v_t.row(0).transpose();
        // Exact orthogonality up to rounding; re-project to keep e a tripotent.
        let overlap = a.dotc(&b);
        b -= &a * overlap;
        b.unscale_mut(b.norm());
        let e = &a * b.transpose() - &b * a.transpose();
        rest -= e.map(|z| z * s);
        rest = (&rest - rest.transpose()).scale(0.5);
        parts.push((s, e));
    }
    parts
}

/// Takagi factorization `x = Σ σₖ uₖ uₖᵗ` through the real symmetric matrix
/// `[[A, B], [B, −A]]` with `x = A + iB`: its eigenvector `[p; q]` for `σ > 0`
/// gives `u = p + iq` with `x ū = σ u`.
fn type3_parts(x: &Element, n: usize, cut: f64) -> Vec<(f64, CMatrix)> {
    let data = x.data();
    let embed = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let (bi, ii) = (i / n, i % n);
        let (bj, jj) = (j / n, j % n);
        let z = data[(ii, jj)];
        match (bi, bj) {
            (0, 0) => z.re,
            (1, 1) => -z.re,
            _ => z.im,
        }
    });
    let (values, vectors) = real_symmetric_eigen(&embed);
    values
        .iter()
        .enumerate()
        .take_while(|(_, &s)| s > cut)
        .map(|(k, &s)| {
            let u = CVector::from_fn(n, |i, _| c64(vectors[(i, k)], vectors[(n + i, k)]));
            let u = u.unscale(u.norm());
            (s, &u * u.transpose())
        })
        .collect()
}

/// `x = p + iq` lies in `span_ℂ{a, b}` for a real orthonormal pair spanning
/// `p, q`; there `x = 2⟨x,v⟩v + 2⟨x,v̄⟩v̄` with `v = (a + ib)/2`.
fn spin_parts(x: &Element, n: usize, cut: f64) -> Vec<(f64, CMatrix)> {
    let data = x.data();
    let p: Vec<f64> = data.iter().map(|z| z.re).collect();
    let q: Vec<f64> = data.iter().map(|z| z.im).collect();
    let norm = |v: &[f64]| v.iter().map(|t| t * t).sum::<f64>().sqrt();
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(s, t)| s * t).sum::<f64>();
    let tiny = 1e-12 * data.norm();

    let (first, second) = if norm(&p) >= norm(&q) { (p, q) } else { (q, p) };
    let a: Vec<f64> = {
        let l = norm(&first);
        first.iter().map(|t| t / l).collect()
    };
    let proj = dot(&second, &a);
    let mut b: Vec<f64> = second.iter().zip(&a).map(|(s, t)| s - proj * t).collect();
    if norm(&b) <= tiny {
        // x is a complex multiple of a real vector; any unit b ⊥ a will do.
        let k = (0..n)
            .min_by(|&i, &j| a[i].abs().total_cmp(&a[j].abs()))
            .expect("n >= 3");
        b = (0..n)
            .map(|i| if i == k { 1.0 } else { 0.0 } - a[k] * a[i])
            .collect();
    }
    let l = norm(&b);
    b.iter_mut().for_each(|t| *t /= l);

    let v = CMatrix::from_fn(n, 1, |i, _| c64(a[i] / 2.0, b[i] / 2.0));
    let vbar = v.map(|z| z.conj());
    let f = *x.factor();
    let v_el = Element::from_raw(f, v.clone());
    let vbar_el = Element::from_raw(f, vbar.clone());
    let c1 = inner(x, &v_el) * 2.0;
    let c2 = inner(x, &vbar_el) * 2.0;
    let mut parts = Vec::new();
    for (c, m) in [(c1, v), (c2, vbar)] {
        let r = c.norm();
        if r > cut {
            let phase: C64 = c / r;
            parts.push((r, m.map(|z| z * phase)));
        }
    }
    parts
}
