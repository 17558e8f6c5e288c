use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{Element, FactorDescriptor};
use crate::linalg::{singular_values, CMatrix};
use crate::tripotents::Tripotent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Linearity {
    ComplexLinear,
    /// Acts as `x ↦ M·conj(coords(x))`.
    ConjugateLinear,
}

/// A (conjugate-)linear map between factors, stored as its matrix on
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOperator {
    src: FactorDescriptor,
    dst: FactorDescriptor,
    matrix: CMatrix,
    linearity: Linearity,
}

impl LinearOperator {
    pub fn new(
        src: FactorDescriptor,
        dst: FactorDescriptor,
        matrix: CMatrix,
        linearity: Linearity,
    ) -> Result<Self> {
        if matrix.shape() != (dst.dim(), src.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "operator {} -> {} needs a {}x{} matrix, got {}x{}",
                src.kind,
                dst.kind,
                dst.dim(),
                src.dim(),
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::InvalidSpec(
                "operator matrix has non-finite entries".into(),
            ));
        }
        Ok(Self {
            src,
            dst,
            matrix,
            linearity,
        })
    }

    pub fn identity(f: &FactorDescriptor) -> Self {
        let d = f.dim();
        Self {
            src: *f,
            dst: *f,
            matrix: CMatrix::identity(d, d),
            linearity: Linearity::ComplexLinear,
        }
    }

    /// Complex-linear operator that agrees with `map` on the coordinate basis.
    pub fn from_fn<F>(src: &FactorDescriptor, dst: &FactorDescriptor, map: F) -> Result<Self>
    where
        F: Fn(&Element) -> Result<Element>,
    {
        let mut matrix = CMatrix::zeros(dst.dim(), src.dim());
        for (k, b) in src.basis().iter().enumerate() {
            let y = map(b)?;
            dst.same_kind(y.factor())?;
            matrix.set_column(k, &y.coords());
        }
        Self::new(*src, *dst, matrix, Linearity::ComplexLinear)
    }

    pub fn src(&self) -> &FactorDescriptor {
        &self.src
    }

    pub fn dst(&self) -> &FactorDescriptor {
        &self.dst
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn linearity(&self) -> Linearity {
        self.linearity
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.src.same_kind(x.factor())?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &Element) -> Element {
        let c = x.coords();
        let c = match self.linearity {
            Linearity::ComplexLinear => c,
            Linearity::ConjugateLinear => c.map(|z| z.conj()),
        };
        self.dst.element_from_coords_unchecked(&(&self.matrix * c))
    }

    /// Frobenius distance between operator matrices.
    pub fn distance(&self, other: &LinearOperator) -> Result<f64> {
        self.src.same_kind(&other.src)?;
        self.dst.same_kind(&other.dst)?;
        if self.linearity != other.linearity {
            return Err(Error::InvalidSpec(
                "cannot compare operators of different linearity".into(),
            ));
        }
        Ok((&self.matrix - &other.matrix).norm())
    }

    pub fn min_singular_value(&self) -> f64 {
        if self.matrix.nrows() != self.matrix.ncols() {
            return 0.0;
        }
        singular_values(&self.matrix).last().copied().unwrap_or(0.0)
    }

    pub fn inverse(&self) -> Result<LinearOperator> {
        let min_singular = self.min_singular_value();
        let scale = singular_values(&self.matrix)
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_singular <= 1e-12 * scale.max(1.0) {
            return Err(Error::SingularOperator { min_singular });
        }
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .ok_or(Error::SingularOperator { min_singular })?;
        let matrix = match self.linearity {
            Linearity::ComplexLinear => inv,
            Linearity::ConjugateLinear => inv.map(|z| z.conj()),
        };
        Ok(Self {
            src: self.dst,
            dst: self.src,
            matrix,
            linearity: self.linearity,
        })
    }
}

pub type MinimalFn = Arc<dyn Fn(&Tripotent) -> Result<Tripotent> + Send + Sync>;

/// A map defined on minimal tripotents: a finite table, optionally backed by a
/// callable for points outside the table.
#[derive(Clone)]
pub struct MapOnMinimals {
    src: FactorDescriptor,
    dst: FactorDescriptor,
    table: Vec<(Tripotent, Tripotent)>,
    callable: Option<MinimalFn>,
}

impl fmt::Debug for MapOnMinimals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MapOnMinimals")
            .field("src", &self.src)
            .field("dst", &self.dst)
            .field("table_len", &self.table.len())
            .field("has_callable", &self.callable.is_some())
            .finish()
    }
}

fn same_point(a: &Element, b: &Element) -> bool {
    let tol = a.factor().tol.identity_tol;
    (a.data() - b.data()).norm() < tol
}

impl MapOnMinimals {
    /// Checks that every source and image is a minimal tripotent of the right
    /// factor and that no source is repeated.
    pub fn new(
        src: FactorDescriptor,
        dst: FactorDescriptor,
        table: Vec<(Tripotent, Tripotent)>,
    ) -> Result<Self> {
        for (i, (e, image)) in table.iter().enumerate() {
            src.same_kind(e.factor())?;
            dst.same_kind(image.factor())?;
            crate::transition::require_minimal(e)?;
            crate::transition::require_minimal(image)?;
            if table[..i]
                .iter()
                .any(|(prev, _)| same_point(prev.element(), e.element()))
            {
                return Err(Error::InvalidSpec(format!(
                    "duplicate source at table row {i}"
                )));
            }
        }
        Ok(Self {
            src,
            dst,
            table,
            callable: None,
        })
    }

    pub fn from_fn<F>(src: FactorDescriptor, dst: FactorDescriptor, f: F) -> Self
    where
        F: Fn(&Tripotent) -> Result<Tripotent> + Send + Sync + 'static,
    {
        Self {
            src,
            dst,
            table: Vec::new(),
            callable: Some(Arc::new(f)),
        }
    }

    /// Restriction of `t` to minimal tripotents.
    pub fn from_operator(t: &LinearOperator) -> Self {
        let t = t.clone();
        Self::from_fn(*t.src(), *t.dst(), move |e| {
            Tripotent::new(t.apply(e.element())?)
        })
    }

    pub fn with_callable(mut self, callable: MinimalFn) -> Self {
        self.callable = Some(callable);
        self
    }

    /// A table-only map holding the images of `points`.
    pub fn tabulate(&self, points: &[Tripotent]) -> Result<MapOnMinimals> {
        let table = points
            .iter()
            .enumerate()
            .map(|(index, e)| {
                Ok((
                    e.clone(),
                    self.image(e)?.ok_or(Error::MissingImage { index })?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        MapOnMinimals::new(self.src, self.dst, table)
    }

    pub fn src(&self) -> &FactorDescriptor {
        &self.src
    }

    pub fn dst(&self) -> &FactorDescriptor {
        &self.dst
    }

    pub fn table(&self) -> &[(Tripotent, Tripotent)] {
        &self.table
    }

    pub fn table_mut(&mut self) -> &mut Vec<(Tripotent, Tripotent)> {
        &mut self.table
    }

    pub fn has_callable(&self) -> bool {
        self.callable.is_some()
    }

    /// `Φ(e)`: the table entry if `e` is listed, otherwise the callable.
    pub fn image(&self, e: &Tripotent) -> Result<Option<Tripotent>> {
        self.src.same_kind(e.factor())?;
        if let Some((_, img)) = self
            .table
            .iter()
            .find(|(s, _)| same_point(s.element(), e.element()))
        {
            return Ok(Some(img.clone()));
        }
        match &self.callable {
            Some(f) => {
                let img = f(e)?;
                self.dst.same_kind(img.factor())?;
                Ok(Some(img))
            }
            None => Ok(None),
        }
    }
}
