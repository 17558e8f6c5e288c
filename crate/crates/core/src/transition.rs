//! Pure atoms and triple transition pseudo-probabilities.

use crate::error::{Error, Result};
use crate::factors::{inner, jb_norm, Element, FactorDescriptor, FactorKind};
use crate::linalg::C64;
use crate::tripotents::{are_orthogonal, Tripotent};

/// The functional `φ_e` with `P₂(e)x = φ_e(x) e`, for a minimal tripotent `e`.
#[derive(Clone, Debug)]
pub struct PureAtom {
    anchor: Tripotent,
}

impl PureAtom {
    pub fn anchor(&self) -> &Tripotent {
        &self.anchor
    }

    pub fn factor(&self) -> &FactorDescriptor {
        self.anchor.factor()
    }

    pub fn eval(&self, x: &Element) -> Result<C64> {
        eval_atom(self, x)
    }
}

pub(crate) fn require_minimal(e: &Tripotent) -> Result<()> {
    let dim = e.peirce2_dim()?;
    if dim != 1 {
        return Err(Error::NotMinimal { peirce2_dim: dim });
    }
    Ok(())
}

pub fn pure_atom(e: &Tripotent) -> Result<PureAtom> {
    require_minimal(e)?;
    Ok(PureAtom { anchor: e.clone() })
}

/// `⟨P₂(e)x, e⟩ / ⟨e, e⟩`, read off the Peirce projector.
pub fn eval_atom_peirce(phi: &PureAtom, x: &Element) -> Result<C64> {
    let e = phi.anchor.element();
    e.factor().same_kind(x.factor())?;
    let p2 = phi.anchor.peirce()?.projector(2);
    let px = p2 * x.coords();
    let ec = e.coords();
    Ok(ec.dotc(&px) / ec.norm_squared())
}

/// Closed forms: `tr(e*x)` on type 1, `2⟨x, v⟩` on spin factors and
/// `tr(e*x)/tr(e*e)` on types 2/3.
pub fn eval_atom_closed_form(phi: &PureAtom, x: &Element) -> Result<C64> {
    let e = phi.anchor.element();
    e.factor().same_kind(x.factor())?;
    Ok(match e.kind() {
        FactorKind::Type1 { .. } => inner(x, e),
        FactorKind::Spin { .. } => inner(x, e) * 2.0,
        FactorKind::Type2 { .. } | FactorKind::Type3 { .. } => {
            inner(x, e) / e.data().norm_squared()
        }
    })
}

/// `φ_e(x)`. The Peirce coefficient is returned after checking it against the
/// closed form.
pub fn eval_atom(phi: &PureAtom, x: &Element) -> Result<C64> {
    let generic = eval_atom_peirce(phi, x)?;
    let closed = eval_atom_closed_form(phi, x)?;
    let gap = (generic - closed).norm();
    if gap > phi.factor().tol.identity_tol * jb_norm(x).max(1.0) {
        return Err(Error::AtomMismatch { gap });
    }
    Ok(generic)
}

/// `TTP(e, v) = φ_v(e)`.
pub fn ttp(e: &Tripotent, v: &Tripotent) -> Result<C64> {
    e.factor().same_kind(v.factor())?;
    require_minimal(e)?;
    eval_atom(&pure_atom(v)?, e.element())
}

/// Both directions of the transition pseudo-probability plus orthogonality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TtpPair {
    pub forward: C64,
    pub backward: C64,
    pub orthogonal: bool,
    /// `|TTP(v,e) − conj(TTP(e,v))|`.
    pub symmetry_gap: f64,
}

pub fn ttp_pair(e: &Tripotent, v: &Tripotent) -> Result<TtpPair> {
    let forward = ttp(e, v)?;
    let backward = ttp(v, e)?;
    Ok(TtpPair {
        forward,
        backward,
        orthogonal: are_orthogonal(e, v)?,
        symmetry_gap: (backward - forward.conj()).norm(),
    })
}

fn require_projection(p: &Tripotent) -> Result<()> {
    let FactorKind::Type1 { m, n } = p.factor().kind else {
        return Err(Error::NotAProjection(format!(
            "{} is not a matrix factor",
            p.factor().kind
        )));
    };
    if m != n {
        return Err(Error::NotAProjection(format!("{m}x{n} is not square")));
    }
    let x = p.element().data();
    let tol = p.factor().tol.identity_tol;
    let sa = (x - x.adjoint()).norm();
    let idem = (x * x - x).norm();
    if sa > tol || idem > tol {
        return Err(Error::NotAProjection(format!(
            "self-adjointness defect {sa:.3e}, idempotency defect {idem:.3e}"
        )));
    }
    let dim = p.peirce2_dim()?;
    if dim != 1 {
        return Err(Error::NotAProjection(format!(
            "rank is not one (dim E2 = {dim})"
        )));
    }
    Ok(())
}

/// `tr(pq)` for minimal projections `p, q` of a square matrix factor.
pub fn transition_probability(p: &Tripotent, q: &Tripotent) -> Result<f64> {
    p.factor().same_kind(q.factor())?;
    require_projection(p)?;
    require_projection(q)?;
    let tr = (p.element().data() * q.element().data()).trace();
    Ok(tr.re)
}
