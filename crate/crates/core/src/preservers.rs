//! Model transition-preserving maps and the factorization of rank-one
//! preservers between rectangular matrix factors.
//!
//! Type 1 conventions, with `ξ ⊗ η = ξ η*`:
//! - case A: `T(x) = u x v*`, so `T(ξ ⊗ η) = uξ ⊗ vη`;
//! - case B: `T(x) = u xᵗ v*`, so `T(ξ ⊗ η) = u(η) ⊗ v(ξ)` for the
//!   conjugate-linear maps `u(η) = u·conj(η)`, `v(ξ) = v·conj(ξ)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{
    certify_triple_isomorphism, IsomorphismReport, LinearOperator, Linearity, MapOnMinimals,
};
use crate::factors::{
    random_real_orthogonal_with, random_unit_vector_with, random_unitary_with, rng_from_seed,
    Element, FactorDescriptor, FactorKind, ToleranceConfig,
};
use crate::linalg::{
    c64, outer, singular_values, svd_sorted, unitarity_defect, CMatrix, CVector, C64,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Type1PreserverSpec {
    pub case: Case,
    pub u: CMatrix,
    pub v: CMatrix,
}

impl Type1PreserverSpec {
    /// Haar-random unitaries for a map on `Type1(m, n)`.
    pub fn random(case: Case, m: usize, n: usize, seed: u64) -> Self {
        let mut rng = rng_from_seed(seed);
        let (du, dv) = match case {
            Case::A => (m, n),
            Case::B => (n, m),
        };
        let u = random_unitary_with(du, &mut rng);
        let v = random_unitary_with(dv, &mut rng);
        Self { case, u, v }
    }

    /// `(src, dst)` as `(m, n)` pairs.
    pub fn shapes(&self) -> ((usize, usize), (usize, usize)) {
        let (a, b) = (self.u.nrows(), self.v.nrows());
        match self.case {
            Case::A => ((a, b), (a, b)),
            Case::B => ((b, a), (a, b)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinAutSpec {
    pub lambda: C64,
    pub u: DMatrix<f64>,
}

impl SpinAutSpec {
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = rng_from_seed(seed);
        let u = random_real_orthogonal_with(n, &mut rng);
        let theta: f64 = rand::Rng::random_range(&mut rng, 0.0..std::f64::consts::TAU);
        Self {
            lambda: c64(theta.cos(), theta.sin()),
            u,
        }
    }
}

fn check_unitary(name: &str, m: &CMatrix, tol: f64) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(format!("{name} must be square")));
    }
    let defect = unitarity_defect(m);
    if defect > tol {
        return Err(Error::NotUnitary { defect });
    }
    Ok(())
}

pub fn make_type1_preserver(spec: &Type1PreserverSpec) -> Result<(MapOnMinimals, LinearOperator)> {
    make_type1_preserver_with(spec, ToleranceConfig::default())
}

pub fn make_type1_preserver_with(
    spec: &Type1PreserverSpec,
    tol: ToleranceConfig,
) -> Result<(MapOnMinimals, LinearOperator)> {
    check_unitary("u", &spec.u, tol.norm_tol)?;
    check_unitary("v", &spec.v, tol.norm_tol)?;
    let ((m, n), (p, q)) = spec.shapes();
    if m.min(n) < 2 {
        return Err(Error::DimensionMismatch(format!(
            "all Hilbert spaces need dimension at least 2, got {m}x{n}"
        )));
    }
    let src = FactorDescriptor::new(FactorKind::Type1 { m, n }, tol)?;
    let dst = FactorDescriptor::new(FactorKind::Type1 { m: p, n: q }, tol)?;
    let (u, v) = (spec.u.clone(), spec.v.adjoint());
    let t = match spec.case {
        Case::A => LinearOperator::from_fn(&src, &dst, |x| Element::new(dst, &u * x.data() * &v))?,
        Case::B => LinearOperator::from_fn(&src, &dst, |x| {
            Element::new(dst, &u * x.data().transpose() * &v)
        })?,
    };
    Ok((MapOnMinimals::from_operator(&t), t))
}

/// `T(a + ib) = λ(Ua + iUb)`.
pub fn make_spin_automorphism(spec: &SpinAutSpec) -> Result<(MapOnMinimals, LinearOperator)> {
    make_spin_automorphism_with(spec, ToleranceConfig::default())
}

pub fn make_spin_automorphism_with(
    spec: &SpinAutSpec,
    tol: ToleranceConfig,
) -> Result<(MapOnMinimals, LinearOperator)> {
    let n = spec.u.nrows();
    if spec.u.ncols() != n {
        return Err(Error::InvalidSpec("U must be square".into()));
    }
    if (spec.lambda.norm() - 1.0).abs() > tol.norm_tol {
        return Err(Error::InvalidSpec(format!(
            "|lambda| = {} is not 1",
            spec.lambda.norm()
        )));
    }
    let defect = (spec.u.transpose() * &spec.u - DMatrix::<f64>::identity(n, n)).norm();
    if defect > tol.norm_tol {
        return Err(Error::InvalidSpec(format!(
            "U is not orthogonal (defect {defect:.3e})"
        )));
    }
    let f = FactorDescriptor::new(FactorKind::Spin { n }, tol)
        .map_err(|e| Error::InvalidSpec(e.to_string()))?;
    let matrix = spec.u.map(|t| spec.lambda * t);
    let t = LinearOperator::new(f, f, matrix, Linearity::ComplexLinear)?;
    Ok((MapOnMinimals::from_operator(&t), t))
}

/// A random triple automorphism of `f`: `u x v*` or (square type 1) `u xᵗ v*`,
/// `u x uᵗ` on types 2/3 and `λU` on spin factors.
pub fn random_automorphism(f: &FactorDescriptor, seed: u64) -> Result<LinearOperator> {
    let mut rng = rng_from_seed(seed);
    match f.kind {
        FactorKind::Type1 { m, n } => {
            let flip = m == n && rand::Rng::random_bool(&mut rng, 0.5);
            let u = random_unitary_with(m, &mut rng);
            let v = random_unitary_with(n, &mut rng);
            if flip {
                LinearOperator::from_fn(f, f, |x| Element::new(*f, &u * x.data().transpose() * &v))
            } else {
                LinearOperator::from_fn(f, f, |x| Element::new(*f, &u * x.data() * &v))
            }
        }
        FactorKind::Type2 { n } | FactorKind::Type3 { n } => {
            let u = random_unitary_with(n, &mut rng);
            let ut = u.transpose();
            LinearOperator::from_fn(f, f, |x| Element::new(*f, &u * x.data() * &ut))
        }
        FactorKind::Spin { n } => {
            let spec = SpinAutSpec::random(n, rand::Rng::random(&mut rng));
            let (_, t) = make_spin_automorphism_with(&spec, f.tol)?;
            Ok(t)
        }
    }
}

fn type1_shape(f: &FactorDescriptor, op: &'static str) -> Result<(usize, usize)> {
    match f.kind {
        FactorKind::Type1 { m, n } => Ok((m, n)),
        other => Err(Error::UnsupportedForFactor { op, factor: other }),
    }
}

fn rank_one_ratio(x: &CMatrix) -> f64 {
    let s = singular_values(x);
    match s.as_slice() {
        [] => 0.0,
        [s0, ..] if *s0 == 0.0 => f64::INFINITY,
        [_] => 0.0,
        [s0, s1, ..] => s1 / s0,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankOneReport {
    /// Largest `σ₂/σ₁` of `T(ξ ⊗ η)` over sampled unit `ξ, η`.
    pub forward_ratio: f64,
    /// Same for `T⁻¹`.
    pub backward_ratio: f64,
    pub samples: usize,
    pub seed: u64,
}

fn max_rank_one_ratio(t: &LinearOperator, samples: usize, seed: u64) -> Result<f64> {
    let (m, n) = type1_shape(t.src(), "rank-one check")?;
    type1_shape(t.dst(), "rank-one check")?;
    let mut rng = rng_from_seed(seed);
    let mut worst: f64 = 0.0;
    for k in 0..m * n {
        worst = worst.max(rank_one_ratio(
            t.apply_unchecked(&t.src().basis_element(k)).data(),
        ));
    }
    for _ in 0..samples {
        let xi = random_unit_vector_with(m, &mut rng);
        let eta = random_unit_vector_with(n, &mut rng);
        let x = Element::new(*t.src(), outer(&xi, &eta))?;
        worst = worst.max(rank_one_ratio(t.apply_unchecked(&x).data()));
    }
    Ok(worst)
}

/// Rank-one preservation of `T` and `T⁻¹` on matrix units and random rank-one
/// matrices.
pub fn check_rank_one_preservation(
    t: &LinearOperator,
    samples: usize,
    seed: u64,
) -> Result<RankOneReport> {
    let forward_ratio = max_rank_one_ratio(t, samples, seed)?;
    let backward_ratio = max_rank_one_ratio(&t.inverse()?, samples, seed.wrapping_add(1))?;
    Ok(RankOneReport {
        forward_ratio,
        backward_ratio,
        samples,
        seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CaseTests {
    /// `|⟨a₀, a₁⟩|` for the top left singular vectors of `T(e₁⊗e₁)`, `T(e₁⊗e₂)`.
    pub left_overlap: f64,
    /// Same for the top right singular vectors.
    pub right_overlap: f64,
}

const OVERLAP_TOL: f64 = 1e-6;

impl CaseTests {
    pub fn left(&self) -> bool {
        self.left_overlap > 1.0 - OVERLAP_TOL
    }

    pub fn right(&self) -> bool {
        self.right_overlap > 1.0 - OVERLAP_TOL
    }
}

fn top_pair(x: &CMatrix) -> (CVector, CVector) {
    let svd = svd_sorted(x);
    (svd.u.column(0).into_owned(), svd.v_t.row(0).adjoint())
}

/// Whether `T(ξ₀⊗η₀)` and `T(ξ₀⊗η₁)` share their left or their right factor.
pub fn case_tests(t: &LinearOperator) -> Result<CaseTests> {
    let (m, n) = type1_shape(t.src(), "case_tests")?;
    type1_shape(t.dst(), "case_tests")?;
    if m < 2 || n < 2 {
        return Err(Error::DimensionMismatch(format!(
            "source {m}x{n} needs both dimensions >= 2"
        )));
    }
    let a = t.apply_unchecked(&t.src().basis_element(0));
    let b = t.apply_unchecked(&t.src().basis_element(1));
    let (la, ra) = top_pair(a.data());
    let (lb, rb) = top_pair(b.data());
    Ok(CaseTests {
        left_overlap: la.dotc(&lb).norm(),
        right_overlap: ra.dotc(&rb).norm(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankOneFactorization {
    pub case: Case,
    /// Case A: `u(ξ) = u·ξ`. Case B: `u(η) = u·conj(η)`.
    pub u: CMatrix,
    /// Case A: `v(η) = v·η`. Case B: `v(ξ) = v·conj(ξ)`.
    pub v: CMatrix,
    /// Max `‖T(Eᵢⱼ) − (reconstruction)(Eᵢⱼ)‖` over matrix units.
    pub residual: f64,
    /// Largest relative defect of the per-row scalar `τ`.
    pub consistency: f64,
    pub tests: CaseTests,
}

impl RankOneFactorization {
    /// The operator `x ↦ u x v*` (case A) or `x ↦ u xᵗ v*` (case B). Invariant
    /// under the gauge `(cu, v/c̄)`.
    pub fn reconstruct(
        &self,
        src: &FactorDescriptor,
        dst: &FactorDescriptor,
    ) -> Result<LinearOperator> {
        let vt = self.v.adjoint();
        match self.case {
            Case::A => {
                LinearOperator::from_fn(src, dst, |x| Element::new(*dst, &self.u * x.data() * &vt))
            }
            Case::B => LinearOperator::from_fn(src, dst, |x| {
                Element::new(*dst, &self.u * x.data().transpose() * &vt)
            }),
        }
    }
}

/// Rescales `(u, v) → (cu, v/c̄)` so both have the same mean squared column
/// norm and the largest-magnitude entry of `u` is positive real.
fn fix_gauge(u: &mut CMatrix, v: &mut CMatrix) {
    let nu = u.norm_squared() / u.ncols() as f64;
    let nv = v.norm_squared() / v.ncols() as f64;
    if nu > 0.0 && nv > 0.0 {
        let r = (nv / nu).powf(0.25);
        *u *= c64(r, 0.0);
        *v *= c64(1.0 / r, 0.0);
    }
    let pivot =
        u.iter().copied().fold(
            c64(0.0, 0.0),
            |best, z| if z.norm() > best.norm() { z } else { best },
        );
    if pivot.norm() > 0.0 {
        let phase = pivot.conj() / pivot.norm();
        // c = phase, c̄⁻¹ = phase as |phase| = 1
        *u *= phase;
        *v *= phase;
    }
}

/// Writes a bijective rank-one preserver `T` on `Type1(m, n)` as
/// `T(ξ⊗η) = u(ξ)⊗v(η)` (case A) or `u(η)⊗v(ξ)` (case B).
pub fn factor_rank_one_preserver(t: &LinearOperator) -> Result<RankOneFactorization> {
    if t.linearity() != Linearity::ComplexLinear {
        return Err(Error::InvalidSpec(
            "expected a complex-linear operator".into(),
        ));
    }
    let (m, n) = type1_shape(t.src(), "factor_rank_one_preserver")?;
    let tol = t.src().tol;
    let ratio = max_rank_one_ratio(t, 20, 0)?.max(max_rank_one_ratio(&t.inverse()?, 20, 1)?);
    if ratio > tol.norm_tol {
        return Err(Error::NotRankOnePreserving { ratio });
    }
    let tests = case_tests(t)?;
    let case = match (tests.left(), tests.right()) {
        (true, false) => Case::A,
        (false, true) => Case::B,
        (l, r) => {
            return Err(Error::FactorizationInconsistent(format!(
                "left test {l}, right test {r} (overlaps {:.3e}, {:.3e})",
                tests.left_overlap, tests.right_overlap
            )))
        }
    };
    let image = |i: usize, j: usize| {
        t.apply_unchecked(&t.src().basis_element(i * n + j))
            .into_data()
    };

    // For each row i the images T(eᵢ⊗eⱼ) share one factor `shared[i]`; the
    // other factors form a matrix `blocks[i]` that must be a multiple of
    // `blocks[0]`.
    let mut shared = Vec::with_capacity(m);
    let mut blocks = Vec::with_capacity(m);
    for i in 0..m {
        let (left, right) = top_pair(&image(i, 0));
        let (s, cols): (CVector, Vec<CVector>) = match case {
            Case::A => (
                left.clone(),
                (0..n).map(|j| image(i, j).adjoint() * &left).collect(),
            ),
            Case::B => (
                right.clone(),
                (0..n).map(|j| image(i, j) * &right).collect(),
            ),
        };
        shared.push(s);
        blocks.push(CMatrix::from_columns(&cols));
    }
    let base = blocks[0].clone();
    let base_norm = base.norm_squared();
    if base_norm == 0.0 {
        return Err(Error::FactorizationInconsistent(
            "first row has zero image".into(),
        ));
    }
    let mut consistency: f64 = 0.0;
    let mut taus = Vec::with_capacity(m);
    for b in &blocks {
        let tau = base.dotc(b) / base_norm;
        consistency = consistency.max((b - base.map(|z| z * tau)).norm() / base_norm.sqrt());
        taus.push(tau);
    }
    if consistency > tol.norm_tol.sqrt() {
        return Err(Error::FactorizationInconsistent(format!(
            "row scalars disagree by {consistency:.3e}"
        )));
    }
    let gathered = CMatrix::from_columns(
        &shared
            .iter()
            .zip(&taus)
            .map(|(s, tau)| s * tau.conj())
            .collect::<Vec<_>>(),
    );
    let (mut u, mut v) = match case {
        Case::A => (gathered, base),
        Case::B => (base, gathered),
    };
    fix_gauge(&mut u, &mut v);

    let mut fac = RankOneFactorization {
        case,
        u,
        v,
        residual: 0.0,
        consistency,
        tests,
    };
    let rebuilt = fac.reconstruct(t.src(), t.dst())?;
    fac.residual = (0..m * n)
        .map(|k| {
            let e = t.src().basis_element(k);
            (t.apply_unchecked(&e).data() - rebuilt.apply_unchecked(&e).data()).norm()
        })
        .fold(0.0, f64::max);
    Ok(fac)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Type1Classification {
    pub factorization: RankOneFactorization,
    pub u_defect: f64,
    pub v_defect: f64,
    pub isomorphism: IsomorphismReport,
}

/// Certifies `T` as a triple automorphism, factors it and checks that the
/// factors are unitary.
pub fn classify_type1_automorphism(
    t: &LinearOperator,
    samples: usize,
    seed: u64,
) -> Result<Type1Classification> {
    type1_shape(t.src(), "classify_type1_automorphism")?;
    let tol = t.src().tol;
    let isomorphism = certify_triple_isomorphism(t, samples, seed)?;
    if !isomorphism.passes(tol.norm_tol) {
        return Err(Error::NotTripleIsomorphism {
            morphism: isomorphism.morphism_residual,
            isometry: isomorphism.isometry_residual,
        });
    }
    let factorization = factor_rank_one_preserver(t)?;
    let u_defect = unitarity_defect(&factorization.u);
    let v_defect = unitarity_defect(&factorization.v);
    if u_defect.max(v_defect) > tol.norm_tol {
        return Err(Error::NotUnitary {
            defect: u_defect.max(v_defect),
        });
    }
    Ok(Type1Classification {
        factorization,
        u_defect,
        v_defect,
        isomorphism,
    })
}
