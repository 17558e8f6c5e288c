//! Tripotents, their Peirce decompositions, orthogonality and order.

mod decompose;
mod peirce;

use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::factors::{
    jb_norm, random_element_with, random_real_orthogonal_with, random_unit_vector_with,
    rng_from_seed, triple, Element, FactorDescriptor, FactorKind,
};
use crate::linalg::{c64, outer, CMatrix};

pub use decompose::minimal_orthogonal_decomposition;
pub use peirce::{PeirceDecomposition, PeirceResiduals};

/// An element `e` with `{e,e,e} = e`. The Peirce decomposition is computed on
/// first use and cached.
#[derive(Clone, Debug)]
pub struct Tripotent {
    elem: Element,
    peirce: OnceLock<PeirceDecomposition>,
}

impl PartialEq for Tripotent {
    fn eq(&self, other: &Self) -> bool {
        self.elem == other.elem
    }
}

impl Tripotent {
    pub fn new(elem: Element) -> Result<Self> {
        let residual = tripotent_residual(&elem);
        if residual >= elem.factor().tol.identity_tol {
            return Err(Error::NotTripotent { residual });
        }
        Ok(Self::from_element_unchecked(elem))
    }

    pub(crate) fn from_element_unchecked(elem: Element) -> Self {
        Self {
            elem,
            peirce: OnceLock::new(),
        }
    }

    pub fn element(&self) -> &Element {
        &self.elem
    }

    pub fn into_element(self) -> Element {
        self.elem
    }

    pub fn factor(&self) -> &FactorDescriptor {
        self.elem.factor()
    }

    pub fn peirce(&self) -> Result<&PeirceDecomposition> {
        if let Some(p) = self.peirce.get() {
            return Ok(p);
        }
        let p = peirce::compute(&self.elem)?;
        Ok(self.peirce.get_or_init(|| p))
    }

    /// `λe` for unimodular `λ`, which is again a tripotent with the same
    /// Peirce spaces.
    pub fn rotate(&self, phase: crate::linalg::C64) -> Tripotent {
        let elem = self.elem.scale(phase / phase.norm());
        let peirce = OnceLock::new();
        if let Some(p) = self.peirce.get() {
            let _ = peirce.set(p.clone());
        }
        Tripotent { elem, peirce }
    }

    /// `dim E₂(e)`.
    pub fn peirce2_dim(&self) -> Result<usize> {
        Ok(self.peirce()?.dims()[2])
    }
}

/// `‖{x,x,x} − x‖`.
pub fn tripotent_residual(x: &Element) -> f64 {
    let cube = triple(x, x, x);
    jb_norm(&Element::from_raw(*x.factor(), cube.data() - x.data()))
}

pub fn is_tripotent(x: &Element) -> bool {
    tripotent_residual(x) < x.factor().tol.identity_tol
}

pub fn peirce(e: &Tripotent) -> Result<&PeirceDecomposition> {
    e.peirce()
}

/// `Pₖ(e) x` for `k ∈ {0, 1, 2}`.
pub fn peirce_project(e: &Tripotent, k: usize, x: &Element) -> Result<Element> {
    e.factor().same_kind(x.factor())?;
    if k > 2 {
        return Err(Error::InvalidSpec(format!(
            "Peirce index must be 0, 1 or 2, got {k}"
        )));
    }
    let p = e.peirce()?;
    Ok(e.factor()
        .element_from_coords_unchecked(&(p.projector(k) * x.coords())))
}

/// `E₂(e) = ℂe`; an error for the zero tripotent.
pub fn is_minimal(e: &Tripotent) -> Result<bool> {
    let dims = e.peirce()?.dims();
    if dims[2] == 0 {
        return Err(Error::ZeroTripotent);
    }
    Ok(dims[2] == 1)
}

/// `E₀(e) = {0}`.
pub fn is_complete(e: &Tripotent) -> Result<bool> {
    Ok(e.peirce()?.dims()[0] == 0)
}

/// `E₂(e) = E`.
pub fn is_unitary_tripotent(e: &Tripotent) -> Result<bool> {
    Ok(e.peirce()?.dims()[2] == e.factor().dim())
}

/// Larger of `‖{e,e,u}‖` and `‖{u,u,e}‖`.
pub fn orthogonality_residual(e: &Element, u: &Element) -> Result<f64> {
    e.factor().same_kind(u.factor())?;
    Ok(jb_norm(&triple(e, e, u)).max(jb_norm(&triple(u, u, e))))
}

/// `e ⊥ u`, checked in both directions.
pub fn are_orthogonal(e: &Tripotent, u: &Tripotent) -> Result<bool> {
    let tol = e.factor().tol.identity_tol;
    Ok(orthogonality_residual(e.element(), u.element())? < tol)
}

/// `e ≤ u` iff `u − e` is a tripotent orthogonal to `e`.
pub fn leq(e: &Tripotent, u: &Tripotent) -> Result<bool> {
    let diff = u.element().checked_sub(e.element())?;
    if !is_tripotent(&diff) {
        return Ok(false);
    }
    Ok(orthogonality_residual(&diff, e.element())? < e.factor().tol.identity_tol)
}

pub fn random_minimal_tripotent_with<R: Rng + ?Sized>(
    f: &FactorDescriptor,
    rng: &mut R,
) -> Tripotent {
    let data = match f.kind {
        FactorKind::Type1 { m, n } => {
            let xi = random_unit_vector_with(m, rng);
            let eta = random_unit_vector_with(n, rng);
            outer(&xi, &eta)
        }
        FactorKind::Spin { n } => {
            let q = random_real_orthogonal_with(n, rng);
            CMatrix::from_fn(n, 1, |i, _| c64(q[(i, 0)] / 2.0, q[(i, 1)] / 2.0))
        }
        FactorKind::Type2 { .. } | FactorKind::Type3 { .. } => loop {
            let x = random_element_with(f, rng);
            if let Ok(parts) = minimal_orthogonal_decomposition(&x) {
                if let Some((_, e)) = parts.into_iter().next() {
                    return e;
                }
            }
        },
    };
    Tripotent::from_element_unchecked(Element::from_raw(*f, data))
}

/// Random minimal tripotent: `ξ ⊗ η` (type 1), `(a + ib)/2` (spin), or the
/// leading part of a decomposed random element (types 2/3).
pub fn random_minimal_tripotent(f: &FactorDescriptor, seed: u64) -> Tripotent {
    random_minimal_tripotent_with(f, &mut rng_from_seed(seed))
}

/// Sum of a random nonempty subset of the minimal parts of a random element.
pub fn random_tripotent_with<R: Rng + ?Sized>(f: &FactorDescriptor, rng: &mut R) -> Tripotent {
    loop {
        let x = random_element_with(f, rng);
        let Ok(parts) = minimal_orthogonal_decomposition(&x) else {
            continue;
        };
        if parts.is_empty() {
            continue;
        }
        let keep = rng.random_range(1..=parts.len());
        let mut sum = f.zero();
        for (_, e) in parts.iter().take(keep) {
            sum.add_scaled(c64(1.0, 0.0), e.element());
        }
        if let Ok(t) = Tripotent::new(sum) {
            return t;
        }
    }
}

pub fn random_tripotent(f: &FactorDescriptor, seed: u64) -> Tripotent {
    random_tripotent_with(f, &mut rng_from_seed(seed))
}

/// Two orthogonal minimal tripotents, or `None` when the factor has rank one.
pub fn random_orthogonal_minimal_pair_with<R: Rng + ?Sized>(
    f: &FactorDescriptor,
    rng: &mut R,
) -> Option<(Tripotent, Tripotent)> {
    if f.rank() < 2 {
        return None;
    }
    loop {
        let x = random_element_with(f, rng);
        let Ok(parts) = minimal_orthogonal_decomposition(&x) else {
            continue;
        };
        if parts.len() < 2 {
            continue;
        }
        let mut it = parts.into_iter().map(|(_, e)| e);
        let first = it.next()?;
        let second = it.next()?;
        return Some((first, second));
    }
}
