use crate::error::{Error, Result};
use crate::factors::{conjugate, inner, jb_norm, Element};
use crate::linalg::{c64, C64};
use crate::tripotents::Tripotent;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConjugateLineDistance {
    /// `2⟨w, v̄⟩`.
    pub mu: C64,
    /// `‖w − (μ/|μ|) v̄‖`.
    pub distance: f64,
}

/// Distance from `w` to the circle `𝕋·v̄` in a spin factor.
pub fn conjugate_line_distance(v: &Tripotent, w: &Element) -> Result<ConjugateLineDistance> {
    if !v.factor().kind.is_spin() {
        return Err(Error::UnsupportedForFactor {
            op: "conjugate_line_distance",
            factor: v.factor().kind,
        });
    }
    v.factor().same_kind(w.factor())?;
    let vbar = conjugate(v.element())?;
    let mu = inner(w, &vbar) * 2.0;
    let phase = if mu.norm() > 0.0 {
        mu / mu.norm()
    } else {
        c64(1.0, 0.0)
    };
    let distance = jb_norm(&w.checked_sub(&vbar.scale(phase))?);
    Ok(ConjugateLineDistance { mu, distance })
}

/// `‖P₁(v) − P₁(w)‖` (Frobenius).
pub fn peirce1_distance(v: &Tripotent, w: &Tripotent) -> Result<f64> {
    v.factor().same_kind(w.factor())?;
    Ok((v.peirce()?.projector(1) - w.peirce()?.projector(1)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::FactorDescriptor;
    use crate::transition::ttp;
    use crate::tripotents::random_minimal_tripotent;

    #[test]
    fn conjugate_is_on_its_own_line() {
        let f = FactorDescriptor::spin(4).unwrap();
        let v = random_minimal_tripotent(&f, 3);
        let vbar = conjugate(v.element()).unwrap();
        let w = vbar.scale(c64(0.0, 1.0));
        let d = conjugate_line_distance(&v, &w).unwrap();
        assert!(d.distance < 1e-12);
        assert!((d.mu - c64(0.0, 1.0)).norm() < 1e-12);
        let far = conjugate_line_distance(&v, v.element()).unwrap();
        assert!(far.distance > 0.5);

        let wt = Tripotent::new(w).unwrap();
        assert!(peirce1_distance(&v, &wt).unwrap() < 1e-9);
        assert!(ttp(&wt, &v).unwrap().norm() < 1e-12);
    }

    #[test]
    fn only_spin() {
        let f = FactorDescriptor::type1(2, 2).unwrap();
        let e = random_minimal_tripotent(&f, 1);
        assert!(conjugate_line_distance(&e, e.element()).is_err());
    }
}
