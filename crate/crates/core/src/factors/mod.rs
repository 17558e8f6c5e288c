//! Finite-dimensional Cartan factors of types 1–4.
//!
//! Every factor is stored in a fixed coordinate basis that is orthonormal for
//! the reference inner product (`tr(y* x)` for the matrix factors, the standard
//! inner product of `ℂⁿ` for the spin factor). All linear-algebraic work
//! (operators `L(a,b)`, Peirce projectors, extensions) happens in these
//! coordinates.

mod audit;
mod random;
pub mod spin4;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, max_abs, op_norm, CMatrix, CVector, C64};

pub use audit::{audit_axioms, AxiomReport};
pub use random::{
    complex_gaussian, random_element, random_element_with, random_real_orthogonal,
    random_real_orthogonal_with, random_unit_vector_with, random_unitary, random_unitary_with,
    rng_from_seed, SeededRng,
};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Snapping radius for the eigenvalues of `L(e,e)` around 0, 1/2 and 1.
    pub eig_cluster_tol: f64,
    /// Residual bound for algebraic identities.
    pub identity_tol: f64,
    /// Bound used by norm and isometry checks.
    pub norm_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eig_cluster_tol: 1e-7,
            identity_tol: 1e-9,
            norm_tol: 1e-9,
        }
    }
}

impl ToleranceConfig {
    pub fn new(eig_cluster_tol: f64, identity_tol: f64, norm_tol: f64) -> Result<Self> {
        let tol = Self {
            eig_cluster_tol,
            identity_tol,
            norm_tol,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eig_cluster_tol", self.eig_cluster_tol),
            ("identity_tol", self.identity_tol),
            ("norm_tol", self.norm_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        // The three Peirce clusters sit 1/2 apart.
        if self.eig_cluster_tol >= 0.25 {
            return Err(Error::InvalidTolerance(format!(
                "eig_cluster_tol must be < 1/4, got {}",
                self.eig_cluster_tol
            )));
        }
        Ok(())
    }
}

/// The supported Cartan factor types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    /// `B(ℂⁿ, ℂᵐ)`: complex `m × n` matrices.
    Type1 { m: usize, n: usize },
    /// Transpose-skew-symmetric `n × n` matrices.
    Type2 { n: usize },
    /// Transpose-symmetric `n × n` matrices.
    Type3 { n: usize },
    /// Spin factor `ℂⁿ` with entrywise conjugation.
    Spin { n: usize },
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::Type1 { m, n } => write!(f, "type1({m}x{n})"),
            FactorKind::Type2 { n } => write!(f, "type2({n})"),
            FactorKind::Type3 { n } => write!(f, "type3({n})"),
            FactorKind::Spin { n } => write!(f, "spin({n})"),
        }
    }
}

impl FactorKind {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            FactorKind::Type1 { m, n } => m >= 1 && n >= 1,
            FactorKind::Type2 { n } => n >= 2,
            FactorKind::Type3 { n } => n >= 1,
            FactorKind::Spin { n } => n >= 3,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidFactor(format!(
                "{self} is below the minimal supported size"
            )))
        }
    }

    /// Complex dimension of the factor.
    pub fn dim(&self) -> usize {
        match *self {
            FactorKind::Type1 { m, n } => m * n,
            FactorKind::Type2 { n } => n * (n - 1) / 2,
            FactorKind::Type3 { n } => n * (n + 1) / 2,
            FactorKind::Spin { n } => n,
        }
    }

    /// Maximal cardinality of an orthogonal family of nonzero elements.
    pub fn rank(&self) -> usize {
        match *self {
            FactorKind::Type1 { m, n } => m.min(n),
            FactorKind::Type2 { n } => n / 2,
            FactorKind::Type3 { n } => n,
            FactorKind::Spin { .. } => 2,
        }
    }

    /// Shape of the stored data (spin vectors are columns).
    pub fn shape(&self) -> (usize, usize) {
        match *self {
            FactorKind::Type1 { m, n } => (m, n),
            FactorKind::Type2 { n } | FactorKind::Type3 { n } => (n, n),
            FactorKind::Spin { n } => (n, 1),
        }
    }

    pub fn is_spin(&self) -> bool {
        matches!(self, FactorKind::Spin { .. })
    }
}

/// A concrete Cartan factor together with the tolerances used on it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorDescriptor {
    pub kind: FactorKind,
    pub tol: ToleranceConfig,
}

impl FactorDescriptor {
    pub fn new(kind: FactorKind, tol: ToleranceConfig) -> Result<Self> {
        kind.validate()?;
        tol.validate()?;
        Ok(Self { kind, tol })
    }

    pub fn type1(m: usize, n: usize) -> Result<Self> {
        Self::new(FactorKind::Type1 { m, n }, ToleranceConfig::default())
    }

    pub fn type2(n: usize) -> Result<Self> {
        Self::new(FactorKind::Type2 { n }, ToleranceConfig::default())
    }

    pub fn type3(n: usize) -> Result<Self> {
        Self::new(FactorKind::Type3 { n }, ToleranceConfig::default())
    }

    pub fn spin(n: usize) -> Result<Self> {
        Self::new(FactorKind::Spin { n }, ToleranceConfig::default())
    }

    pub fn with_tolerances(self, tol: ToleranceConfig) -> Result<Self> {
        Self::new(self.kind, tol)
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn same_kind(&self, other: &FactorDescriptor) -> Result<()> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(Error::MixedFactor {
                left: self.kind,
                right: other.kind,
            })
        }
    }

    pub fn zero(&self) -> Element {
        let (r, c) = self.kind.shape();
        Element {
            factor: *self,
            data: CMatrix::zeros(r, c),
        }
    }

    /// The `k`-th element of the orthonormal coordinate basis.
    pub fn basis_element(&self, k: usize) -> Element {
        let mut e = CVector::zeros(self.dim());
        e[k] = c64(1.0, 0.0);
        self.element_from_coords_unchecked(&e)
    }

    pub fn basis(&self) -> Vec<Element> {
        (0..self.dim()).map(|k| self.basis_element(k)).collect()
    }

    pub fn from_coords(&self, coords: &CVector) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates given for {} (dimension {})",
                coords.len(),
                self.kind,
                self.dim()
            )));
        }
        Ok(self.element_from_coords_unchecked(coords))
    }

    pub(crate) fn element_from_coords_unchecked(&self, coords: &CVector) -> Element {
        debug_assert_eq!(coords.len(), self.dim());
        let data = match self.kind {
            FactorKind::Type1 { m, n } => CMatrix::from_fn(m, n, |i, j| coords[i * n + j]),
            FactorKind::Type2 { n } => {
                let mut x = CMatrix::zeros(n, n);
                let mut k = 0;
                for i in 0..n {
                    for j in (i + 1)..n {
                        let v = coords[k] / SQRT_2;
                        x[(i, j)] = v;
                        x[(j, i)] = -v;
                        k += 1;
                    }
                }
                x
            }
            FactorKind::Type3 { n } => {
                let mut x = CMatrix::zeros(n, n);
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        if i == j {
                            x[(i, i)] = coords[k];
                        } else {
                            let v = coords[k] / SQRT_2;
                            x[(i, j)] = v;
                            x[(j, i)] = v;
                        }
                        k += 1;
                    }
                }
                x
            }
            FactorKind::Spin { n } => CMatrix::from_fn(n, 1, |i, _| coords[i]),
        };
        Element {
            factor: *self,
            data,
        }
    }
}

/// A point of a Cartan factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    factor: FactorDescriptor,
    data: CMatrix,
}

impl Element {
    /// Validates shape and, for types 2/3, the (skew-)symmetry of `data`. The
    /// stored matrix is projected onto the subtriple so the invariant is exact.
    pub fn new(factor: FactorDescriptor, data: CMatrix) -> Result<Self> {
        let (r, c) = factor.kind.shape();
        if data.shape() != (r, c) {
            return Err(Error::InvalidElement(format!(
                "{} expects a {r}x{c} array, got {}x{}",
                factor.kind,
                data.nrows(),
                data.ncols()
            )));
        }
        if data.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidElement("non-finite entry".into()));
        }
        let scale = max_abs(&data).max(1.0);
        let data = match factor.kind {
            FactorKind::Type2 { .. } => {
                let defect = max_abs(&(&data + data.transpose()));
                if defect > factor.tol.identity_tol * scale {
                    return Err(Error::InvalidElement(format!(
                        "type 2 elements must satisfy xᵗ = -x (defect {defect:.3e})"
                    )));
                }
                (&data - data.transpose()).scale(0.5)
            }
            FactorKind::Type3 { .. } => {
                let defect = max_abs(&(&data - data.transpose()));
                if defect > factor.tol.identity_tol * scale {
                    return Err(Error::InvalidElement(format!(
                        "type 3 elements must satisfy xᵗ = x (defect {defect:.3e})"
                    )));
                }
                (&data + data.transpose()).scale(0.5)
            }
            _ => data,
        };
        Ok(Self { factor, data })
    }

    /// Spin-factor element from its coordinates.
    pub fn spin(factor: FactorDescriptor, coords: &[C64]) -> Result<Self> {
        let data = CMatrix::from_column_slice(coords.len(), 1, coords);
        Self::new(factor, data)
    }

    /// Builds an element without validation; callers guarantee the invariants.
    pub(crate) fn from_raw(factor: FactorDescriptor, data: CMatrix) -> Self {
        debug_assert_eq!(data.shape(), factor.kind.shape());
        Self { factor, data }
    }

    pub fn factor(&self) -> &FactorDescriptor {
        &self.factor
    }

    pub fn kind(&self) -> FactorKind {
        self.factor.kind
    }

    pub fn data(&self) -> &CMatrix {
        &self.data
    }

    pub fn into_data(self) -> CMatrix {
        self.data
    }

    /// Coordinates in the factor's orthonormal basis.
    pub fn coords(&self) -> CVector {
        let x = &self.data;
        match self.factor.kind {
            FactorKind::Type1 { m, n } => CVector::from_fn(m * n, |k, _| x[(k / n, k % n)]),
            FactorKind::Type2 { n } => {
                let mut out = Vec::with_capacity(self.factor.dim());
                for i in 0..n {
                    for j in (i + 1)..n {
                        out.push(x[(i, j)] * SQRT_2);
                    }
                }
                CVector::from_vec(out)
            }
            FactorKind::Type3 { n } => {
                let mut out = Vec::with_capacity(self.factor.dim());
                for i in 0..n {
                    for j in i..n {
                        out.push(if i == j {
                            x[(i, i)]
                        } else {
                            x[(i, j)] * SQRT_2
                        });
                    }
                }
                CVector::from_vec(out)
            }
            FactorKind::Spin { .. } => CVector::from_column_slice(x.as_slice()),
        }
    }

    pub fn scale(&self, c: C64) -> Element {
        Element {
            factor: self.factor,
            data: self.data.map(|z| z * c),
        }
    }

    pub fn scale_real(&self, c: f64) -> Element {
        Element {
            factor: self.factor,
            data: self.data.scale(c),
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.factor.same_kind(&other.factor)?;
        Ok(Element {
            factor: self.factor,
            data: &self.data + &other.data,
        })
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.factor.same_kind(&other.factor)?;
        Ok(Element {
            factor: self.factor,
            data: &self.data - &other.data,
        })
    }

    pub(crate) fn add_scaled(&mut self, c: C64, other: &Element) {
        debug_assert_eq!(self.factor.kind, other.factor.kind);
        self.data += other.data.map(|z| z * c);
    }

    /// `√⟨x, x⟩` for the reference inner product.
    pub fn reference_norm(&self) -> f64 {
        self.data.norm()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == C64::new(0.0, 0.0))
    }
}

fn spin_inner(x: &CMatrix, y: &CMatrix) -> C64 {
    // ⟨x, y⟩ = Σ xᵢ conj(yᵢ)
    y.dotc(x)
}

/// Unchecked triple product; both factors are assumed equal.
pub(crate) fn triple(x: &Element, y: &Element, z: &Element) -> Element {
    debug_assert_eq!(x.factor.kind, y.factor.kind);
    debug_assert_eq!(x.factor.kind, z.factor.kind);
    let data = match x.factor.kind {
        FactorKind::Spin { .. } => {
            let (x, y, z) = (&x.data, &y.data, &z.data);
            let xy = spin_inner(x, y);
            let zy = spin_inner(z, y);
            let x_zbar = spin_inner(x, &z.map(|c| c.conj()));
            z.map(|c| c * xy) + x.map(|c| c * zy) - y.map(|c| c.conj() * x_zbar)
        }
        kind => {
            let (x, y, z) = (&x.data, &y.data, &z.data);
            let ys = y.adjoint();
            let raw = (x * &ys * z + z * &ys * x).scale(0.5);
            match kind {
                FactorKind::Type2 { .. } => (&raw - raw.transpose()).scale(0.5),
                FactorKind::Type3 { .. } => (&raw + raw.transpose()).scale(0.5),
                _ => raw,
            }
        }
    };
    Element {
        factor: x.factor,
        data,
    }
}

/// The triple product `{x, y, z}`.
///
/// On the matrix factors this is `(x y* z + z y* x) / 2`; on the spin factor it
/// is `⟨x,y⟩z + ⟨z,y⟩x − ⟨x,z̄⟩ȳ`.
pub fn triple_product(x: &Element, y: &Element, z: &Element) -> Result<Element> {
    x.factor.same_kind(&y.factor)?;
    x.factor.same_kind(&z.factor)?;
    Ok(triple(x, y, z))
}

pub(crate) fn l_matrix(a: &Element, b: &Element) -> CMatrix {
    let f = a.factor;
    let d = f.dim();
    let mut out = CMatrix::zeros(d, d);
    for k in 0..d {
        let col = triple(a, b, &f.basis_element(k)).coords();
        out.set_column(k, &col);
    }
    out
}

/// Matrix of `x ↦ {a, b, x}` in the factor's coordinate basis.
pub fn l_operator_matrix(a: &Element, b: &Element) -> Result<CMatrix> {
    a.factor.same_kind(&b.factor)?;
    Ok(l_matrix(a, b))
}

/// The JB*-norm: operator norm for the matrix factors, the spin norm otherwise.
pub fn jb_norm(x: &Element) -> f64 {
    match x.factor.kind {
        FactorKind::Spin { .. } => {
            let xx = spin_inner(&x.data, &x.data).re;
            let xbar = x.data.map(|c| c.conj());
            let x_xbar = spin_inner(&x.data, &xbar).norm();
            let disc = (xx * xx - x_xbar * x_xbar).max(0.0);
            (xx + disc.sqrt()).max(0.0).sqrt()
        }
        _ => op_norm(&x.data),
    }
}

/// Spin: entrywise conjugation. Types 2/3: the involution `x ↦ xᵗ`.
pub fn conjugate(x: &Element) -> Result<Element> {
    let data = match x.factor.kind {
        FactorKind::Spin { .. } => x.data.map(|c| c.conj()),
        FactorKind::Type2 { .. } | FactorKind::Type3 { .. } => x.data.transpose(),
        kind @ FactorKind::Type1 { .. } => {
            return Err(Error::UnsupportedForFactor {
                op: "conjugate",
                factor: kind,
            })
        }
    };
    Ok(Element {
        factor: x.factor,
        data,
    })
}

pub(crate) fn inner(x: &Element, y: &Element) -> C64 {
    // tr(y* x) = Σ x_ij conj(y_ij), which is also the spin inner product.
    y.data.dotc(&x.data)
}

/// Reference inner product, linear in the first slot.
pub fn reference_inner(x: &Element, y: &Element) -> Result<C64> {
    x.factor.same_kind(&y.factor)?;
    Ok(inner(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> FactorDescriptor {
        FactorDescriptor::type1(2, 2).unwrap()
    }

    fn unit(f: FactorDescriptor, i: usize, j: usize) -> Element {
        let (r, c) = f.kind.shape();
        let mut d = CMatrix::zeros(r, c);
        d[(i, j)] = c64(1.0, 0.0);
        Element::new(f, d).unwrap()
    }

    #[test]
    fn matrix_unit_products() {
        let e11 = unit(m2(), 0, 0);
        let e12 = unit(m2(), 0, 1);
        assert_eq!(triple_product(&e11, &e11, &e11).unwrap(), e11);
        let p = triple_product(&e11, &e11, &e12).unwrap();
        assert_eq!(p, e12.scale_real(0.5));
    }

    #[test]
    fn spin_real_unit_is_fixed() {
        let f = FactorDescriptor::spin(3).unwrap();
        let a = Element::spin(f, &[c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]).unwrap();
        let p = triple_product(&a, &a, &a).unwrap();
        assert!((p.data() - a.data()).norm() < 1e-15);
        assert!((jb_norm(&a) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn spin_norm_of_minimal_shape() {
        let f = FactorDescriptor::spin(4).unwrap();
        // (a + i b)/2 with a = f1, b = f3
        let x = Element::spin(
            f,
            &[c64(0.5, 0.0), c64(0.0, 0.0), c64(0.0, 0.5), c64(0.0, 0.0)],
        )
        .unwrap();
        assert!((jb_norm(&x) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn l_operator_spectrum_of_matrix_unit() {
        let e11 = unit(m2(), 0, 0);
        let l = l_operator_matrix(&e11, &e11).unwrap();
        let (vals, _) = crate::linalg::hermitian_eigen(&l);
        let expected = [0.0, 0.5, 0.5, 1.0];
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12, "{vals:?}");
        }
        let zero = m2().zero();
        assert_eq!(
            l_operator_matrix(&zero, &zero).unwrap(),
            CMatrix::zeros(4, 4)
        );
    }

    #[test]
    fn spin_l_operator_has_double_one() {
        let f = FactorDescriptor::spin(3).unwrap();
        let a = Element::spin(f, &[c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]).unwrap();
        let (vals, _) = crate::linalg::hermitian_eigen(&l_operator_matrix(&a, &a).unwrap());
        let ones = vals.iter().filter(|v| (*v - 1.0).abs() < 1e-12).count();
        assert!(ones >= 2, "{vals:?}");
    }

    #[test]
    fn identity_has_norm_one() {
        let f = m2();
        let x = Element::new(f, CMatrix::identity(2, 2)).unwrap();
        assert!((jb_norm(&x) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn conjugations() {
        let f = FactorDescriptor::spin(3).unwrap();
        let x = Element::spin(f, &[c64(0.0, 1.0), c64(0.0, 0.0), c64(0.0, 0.0)]).unwrap();
        let xb = conjugate(&x).unwrap();
        assert_eq!(xb.data()[(0, 0)], c64(0.0, -1.0));
        assert_eq!(conjugate(&xb).unwrap(), x);

        let f3 = FactorDescriptor::type3(3).unwrap();
        let s = random_element(&f3, 4);
        assert_eq!(conjugate(&s).unwrap(), s);

        assert!(matches!(
            conjugate(&m2().zero()),
            Err(Error::UnsupportedForFactor { .. })
        ));
    }

    #[test]
    fn reference_inner_examples() {
        let f = FactorDescriptor::spin(3).unwrap();
        let a = f.basis_element(0);
        let b = f.basis_element(1);
        assert_eq!(reference_inner(&a, &b).unwrap(), c64(0.0, 0.0));
        let e11 = unit(m2(), 0, 0);
        assert_eq!(reference_inner(&e11, &e11).unwrap(), c64(1.0, 0.0));
        let x = random_element(&f, 9);
        assert!(reference_inner(&x, &x).unwrap().re > 0.0);
    }

    #[test]
    fn mixed_factor_is_rejected() {
        let a = m2().zero();
        let b = FactorDescriptor::spin(3).unwrap().zero();
        assert!(matches!(
            triple_product(&a, &a, &b),
            Err(Error::MixedFactor { .. })
        ));
        assert!(reference_inner(&a, &b).is_err());
        assert!(l_operator_matrix(&a, &b).is_err());
    }

    #[test]
    fn factor_validation() {
        assert!(FactorDescriptor::spin(2).is_err());
        assert!(FactorDescriptor::type2(1).is_err());
        assert!(FactorDescriptor::type1(0, 3).is_err());
        assert!(ToleranceConfig::new(0.3, 1e-9, 1e-9).is_err());
        assert!(ToleranceConfig::new(1e-7, 0.0, 1e-9).is_err());
        assert_eq!(FactorKind::Type2 { n: 5 }.dim(), 10);
        assert_eq!(FactorKind::Type3 { n: 5 }.dim(), 15);
    }

    #[test]
    fn coordinates_are_isometric() {
        for f in [
            FactorDescriptor::type1(2, 3).unwrap(),
            FactorDescriptor::type2(4).unwrap(),
            FactorDescriptor::type3(3).unwrap(),
            FactorDescriptor::spin(5).unwrap(),
        ] {
            let x = random_element(&f, 1);
            let y = random_element(&f, 2);
            let lhs = inner(&x, &y);
            let rhs = y.coords().dotc(&x.coords());
            assert!((lhs - rhs).norm() < 1e-12, "{}", f.kind);
            let back = f.from_coords(&x.coords()).unwrap();
            assert!((back.data() - x.data()).norm() < 1e-12);
        }
    }

    #[test]
    fn element_validation() {
        let f = FactorDescriptor::type2(2).unwrap();
        let bad = CMatrix::identity(2, 2);
        assert!(Element::new(f, bad).is_err());
        assert!(Element::new(m2(), CMatrix::zeros(3, 2)).is_err());
    }
}
