//! From maps on minimal tripotents to linear operators and triple
//! isomorphisms.

mod operator;
mod sphere;
mod spin;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::{
    jb_norm, random_element_with, rng_from_seed, triple, Element, FactorDescriptor, FactorKind,
};
use crate::linalg::{c64, singular_values, solve, CMatrix, C64};
use crate::transition::ttp;
use crate::tripotents::{
    orthogonality_residual, random_minimal_tripotent_with, random_orthogonal_minimal_pair_with,
    tripotent_residual, Tripotent,
};

pub use operator::{LinearOperator, Linearity, MapOnMinimals, MinimalFn};
pub use sphere::{extend_sphere_map, orthogonality_scale, OrthogonalityScale};
pub use spin::{conjugate_line_distance, peirce1_distance, ConjugateLineDistance};

pub const DEFAULT_PAIRS: usize = 200;
pub const DEFAULT_ELEMENTS: usize = 100;

/// `d(F)` minimal tripotents spanning `F`.
///
/// Type 1: matrix units. Type 2: `Eᵢⱼ − Eⱼᵢ`. Type 3: `Eᵢᵢ` and `uuᵗ` with
/// `u = (eᵢ + eⱼ)/√2`. Spin: `(f₁ ± if₂)/2` and `(f₁ + ifₖ)/2`.
pub fn minimal_basis(f: &FactorDescriptor) -> Result<Vec<Tripotent>> {
    let one = c64(1.0, 0.0);
    let raw: Vec<CMatrix> = match f.kind {
        FactorKind::Type1 { m, n } => (0..m * n)
            .map(|k| {
                let mut d = CMatrix::zeros(m, n);
                d[(k / n, k % n)] = one;
                d
            })
            .collect(),
        FactorKind::Type2 { n } => {
            let mut out = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut d = CMatrix::zeros(n, n);
                    d[(i, j)] = one;
                    d[(j, i)] = -one;
                    out.push(d);
                }
            }
            out
        }
        FactorKind::Type3 { n } => {
            let mut out = Vec::new();
            for i in 0..n {
                for j in i..n {
                    let mut d = CMatrix::zeros(n, n);
                    if i == j {
                        d[(i, i)] = one;
                    } else {
                        let h = c64(0.5, 0.0);
                        d[(i, i)] = h;
                        d[(j, j)] = h;
                        d[(i, j)] = h;
                        d[(j, i)] = h;
                    }
                    out.push(d);
                }
            }
            out
        }
        FactorKind::Spin { n } => {
            let mut out = Vec::new();
            let mut v = |k: usize, s: f64| {
                let mut d = CMatrix::zeros(n, 1);
                d[(0, 0)] = c64(0.5, 0.0);
                d[(k, 0)] = c64(0.0, 0.5 * s);
                out.push(d);
            };
            v(1, 1.0);
            v(1, -1.0);
            for k in 2..n {
                v(k, 1.0);
            }
            out
        }
    };

    let basis = raw
        .into_iter()
        .map(|d| Tripotent::new(Element::new(*f, d)?))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::BasisConstructionFailed(e.to_string()))?;
    for (k, e) in basis.iter().enumerate() {
        if e.peirce2_dim()? != 1 {
            return Err(Error::BasisConstructionFailed(format!(
                "element {k} is not minimal"
            )));
        }
    }
    let s = singular_values(&coordinate_matrix(&basis, f.dim()));
    if basis.len() != f.dim() || s.last().copied().unwrap_or(0.0) < 1e-8 {
        return Err(Error::BasisConstructionFailed(
            "family is not linearly independent".into(),
        ));
    }
    Ok(basis)
}

fn coordinate_matrix(family: &[Tripotent], d: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d, family.len());
    for (k, e) in family.iter().enumerate() {
        m.set_column(k, &e.element().coords());
    }
    m
}

/// The complex-linear `T₀` with `T₀(eₖ) = Φ(eₖ)` on [`minimal_basis`].
pub fn extend_to_socle(phi: &MapOnMinimals) -> Result<LinearOperator> {
    let basis = minimal_basis(phi.src())?;
    let images = basis
        .iter()
        .enumerate()
        .map(|(index, e)| phi.image(e)?.ok_or(Error::MissingImage { index }))
        .collect::<Result<Vec<_>>>()?;
    let b = coordinate_matrix(&basis, phi.src().dim());
    let y = coordinate_matrix(&images, phi.dst().dim());
    // M B = Y  ⇔  Bᴴ Mᴴ = Yᴴ
    let mt = solve(&b.adjoint(), &y.adjoint())
        .ok_or_else(|| Error::BasisConstructionFailed("basis matrix is singular".into()))?;
    LinearOperator::new(
        *phi.src(),
        *phi.dst(),
        mt.adjoint(),
        Linearity::ComplexLinear,
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WellDefinedReport {
    pub max_residual: f64,
    pub table_residual: f64,
    pub sample_residual: f64,
    pub table_entries: usize,
    pub samples: usize,
    pub seed: u64,
}

/// Largest `‖T₀(w) − Φ(w)‖` over the table and over `samples` random minimal
/// tripotents (only when `Φ` has a callable).
pub fn check_welldefined(
    phi: &MapOnMinimals,
    t0: &LinearOperator,
    samples: usize,
    seed: u64,
) -> Result<WellDefinedReport> {
    phi.src().same_kind(t0.src())?;
    phi.dst().same_kind(t0.dst())?;
    let residual = |w: &Tripotent, img: &Tripotent| -> Result<f64> {
        Ok(jb_norm(&t0.apply(w.element())?.checked_sub(img.element())?))
    };
    let mut table_residual: f64 = 0.0;
    for (w, img) in phi.table() {
        table_residual = table_residual.max(residual(w, img)?);
    }
    let mut sample_residual: f64 = 0.0;
    let mut drawn = 0;
    if phi.has_callable() {
        let mut rng = rng_from_seed(seed);
        for index in 0..samples {
            let w = random_minimal_tripotent_with(phi.src(), &mut rng);
            let img = phi.image(&w)?.ok_or(Error::MissingImage { index })?;
            sample_residual = sample_residual.max(residual(&w, &img)?);
            drawn += 1;
        }
    }
    Ok(WellDefinedReport {
        max_residual: table_residual.max(sample_residual),
        table_residual,
        sample_residual,
        table_entries: phi.table().len(),
        samples: drawn,
        seed,
    })
}

type PairList = Vec<(Tripotent, Tripotent)>;

/// Source pairs used by the preservation checks: random pairs and orthogonal
/// pairs when a callable is present, all table pairs otherwise.
fn source_pairs(phi: &MapOnMinimals, samples: usize, seed: u64) -> (PairList, PairList) {
    let mut random_pairs = Vec::new();
    let mut orthogonal_pairs = Vec::new();
    if phi.has_callable() {
        let mut rng = rng_from_seed(seed);
        for _ in 0..samples {
            let e = random_minimal_tripotent_with(phi.src(), &mut rng);
            let v = random_minimal_tripotent_with(phi.src(), &mut rng);
            random_pairs.push((e, v));
            if let Some(pair) = random_orthogonal_minimal_pair_with(phi.src(), &mut rng) {
                orthogonal_pairs.push(pair);
            }
        }
    } else {
        let t = phi.table();
        let tol = phi.src().tol.identity_tol;
        // fill the Peirce caches once so the clones below share them
        for (e, img) in t {
            let _ = e.peirce();
            let _ = img.peirce();
        }
        for i in 0..t.len() {
            for j in (i + 1)..t.len() {
                let pair = (t[i].0.clone(), t[j].0.clone());
                match orthogonality_residual(pair.0.element(), pair.1.element()) {
                    Ok(r) if r < tol => orthogonal_pairs.push(pair),
                    _ => random_pairs.push(pair),
                }
            }
        }
    }
    (random_pairs, orthogonal_pairs)
}

fn image_of(phi: &MapOnMinimals, e: &Tripotent) -> Result<Tripotent> {
    phi.image(e)?.ok_or(Error::MissingImage { index: 0 })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TtpReport {
    pub max_deviation: f64,
    pub pairs: usize,
    pub orthogonal_pairs: usize,
    pub samples: usize,
    pub seed: u64,
}

/// Largest `|TTP(Φe, Φv) − TTP(e, v)|` over sampled pairs.
pub fn check_ttp_preserving(phi: &MapOnMinimals, samples: usize, seed: u64) -> Result<TtpReport> {
    let (random_pairs, orthogonal_pairs) = source_pairs(phi, samples, seed);
    let mut max_deviation: f64 = 0.0;
    for (e, v) in random_pairs.iter().chain(&orthogonal_pairs) {
        let before = ttp(e, v)?;
        let after = ttp(&image_of(phi, e)?, &image_of(phi, v)?)?;
        max_deviation = max_deviation.max((after - before).norm());
    }
    Ok(TtpReport {
        max_deviation,
        pairs: random_pairs.len() + orthogonal_pairs.len(),
        orthogonal_pairs: orthogonal_pairs.len(),
        samples,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrthogonalityReport {
    pub pairs: usize,
    pub failures: usize,
    pub failure_fraction: f64,
    pub worst_residual: f64,
    pub preserved: bool,
    pub samples: usize,
    pub seed: u64,
}

/// Orthogonal source pairs whose images are not orthogonal. Preservation
/// requires every sampled pair to survive.
pub fn check_orthogonality_preserving(
    phi: &MapOnMinimals,
    samples: usize,
    seed: u64,
) -> Result<OrthogonalityReport> {
    let (_, pairs) = source_pairs(phi, samples, seed);
    let tol = phi.dst().tol.identity_tol;
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for (e, u) in &pairs {
        let r = orthogonality_residual(image_of(phi, e)?.element(), image_of(phi, u)?.element())?;
        worst = worst.max(r);
        if r >= tol {
            failures += 1;
        }
    }
    Ok(OrthogonalityReport {
        pairs: pairs.len(),
        failures,
        failure_fraction: if pairs.is_empty() {
            0.0
        } else {
            failures as f64 / pairs.len() as f64
        },
        worst_residual: worst,
        preserved: failures == 0,
        samples,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsomorphismReport {
    /// Max `‖T{x,y,z} − {Tx,Ty,Tz}‖` over unit-norm samples.
    pub morphism_residual: f64,
    /// Max `|‖Tx‖ − ‖x‖|` over unit-norm samples.
    pub isometry_residual: f64,
    pub samples: usize,
    pub seed: u64,
}

impl IsomorphismReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.morphism_residual < tol && self.isometry_residual < tol
    }
}

fn unit_sample<R: Rng + ?Sized>(f: &FactorDescriptor, rng: &mut R) -> Element {
    loop {
        let x = random_element_with(f, rng);
        let n = jb_norm(&x);
        if n > 1e-12 {
            return x.scale_real(1.0 / n);
        }
    }
}

pub fn certify_triple_isomorphism(
    t: &LinearOperator,
    samples: usize,
    seed: u64,
) -> Result<IsomorphismReport> {
    if t.src().dim() != t.dst().dim() {
        return Err(Error::SingularOperator { min_singular: 0.0 });
    }
    let scale = singular_values(t.matrix()).first().copied().unwrap_or(0.0);
    let min_singular = t.min_singular_value();
    if min_singular <= 1e-12 * scale.max(1.0) {
        return Err(Error::SingularOperator { min_singular });
    }
    let mut rng = rng_from_seed(seed);
    let mut morphism: f64 = 0.0;
    let mut isometry: f64 = 0.0;
    for _ in 0..samples {
        let x = unit_sample(t.src(), &mut rng);
        let y = unit_sample(t.src(), &mut rng);
        let z = unit_sample(t.src(), &mut rng);
        let (tx, ty, tz) = (
            t.apply_unchecked(&x),
            t.apply_unchecked(&y),
            t.apply_unchecked(&z),
        );
        let lhs = t.apply_unchecked(&triple(&x, &y, &z));
        let rhs = triple(&tx, &ty, &tz);
        morphism = morphism.max(jb_norm(&lhs.checked_sub(&rhs)?));
        for image in [&tx, &ty, &tz] {
            isometry = isometry.max((jb_norm(image) - 1.0).abs());
        }
    }
    Ok(IsomorphismReport {
        morphism_residual: morphism,
        isometry_residual: isometry,
        samples,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimalPreservationReport {
    /// Largest `‖{Te,Te,Te} − Te‖` over sampled minimal `e`.
    pub tripotent_residual: f64,
    /// Images whose Peirce-2 space is not one-dimensional.
    pub non_minimal_images: usize,
    pub orthogonality_failures: usize,
    pub holds: bool,
    pub samples: usize,
    pub seed: u64,
}

/// Hypothesis check for linear maps: minimal tripotents go to minimal
/// tripotents and orthogonal pairs stay orthogonal.
pub fn check_minimal_preservation(
    t: &LinearOperator,
    samples: usize,
    seed: u64,
) -> Result<MinimalPreservationReport> {
    let tol = t.dst().tol.identity_tol;
    let mut rng = rng_from_seed(seed);
    let mut worst: f64 = 0.0;
    let mut non_minimal = 0;
    let mut orth_fail = 0;
    let is_minimal_image = |x: &Element| -> (f64, bool) {
        let r = tripotent_residual(x);
        let minimal = r < tol
            && Tripotent::new(x.clone())
                .and_then(|e| e.peirce2_dim())
                .map(|d| d == 1)
                .unwrap_or(false);
        (r, minimal)
    };
    for _ in 0..samples {
        let e = random_minimal_tripotent_with(t.src(), &mut rng);
        let (r, ok) = is_minimal_image(&t.apply_unchecked(e.element()));
        worst = worst.max(r);
        non_minimal += usize::from(!ok);
        if let Some((a, b)) = random_orthogonal_minimal_pair_with(t.src(), &mut rng) {
            let (ta, tb) = (
                t.apply_unchecked(a.element()),
                t.apply_unchecked(b.element()),
            );
            if orthogonality_residual(&ta, &tb)? >= tol {
                orth_fail += 1;
            }
        }
    }
    Ok(MinimalPreservationReport {
        tripotent_residual: worst,
        non_minimal_images: non_minimal,
        orthogonality_failures: orth_fail,
        holds: non_minimal == 0 && orth_fail == 0,
        samples,
        seed,
    })
}

/// `Φ(e) := e₀` for every `e`.
pub fn constant_map(
    src: &FactorDescriptor,
    dst: &FactorDescriptor,
    e0: Tripotent,
) -> MapOnMinimals {
    MapOnMinimals::from_fn(*src, *dst, move |_| Ok(e0.clone()))
}

/// `x ↦ λx` as an operator, used for non-isometric test inputs.
pub fn scalar_operator(f: &FactorDescriptor, lambda: C64) -> LinearOperator {
    let d = f.dim();
    LinearOperator::new(
        *f,
        *f,
        CMatrix::identity(d, d).map(|z| z * lambda),
        Linearity::ComplexLinear,
    )
    .expect("square identity has the right shape")
}
