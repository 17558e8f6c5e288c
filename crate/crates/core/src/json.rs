//! JSON wire formats. Matrices are row-major `re`/`im` arrays; spin vectors are
//! written as `1×n`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{LinearOperator, Linearity, MapOnMinimals};
use crate::factors::{Element, FactorDescriptor, FactorKind, ToleranceConfig};
use crate::linalg::{c64, CMatrix, C64};
use crate::preservers::{Case, RankOneFactorization, SpinAutSpec, Type1PreserverSpec};
use crate::tripotents::{PeirceDecomposition, PeirceResiduals, Tripotent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindJson {
    Type1,
    Type2,
    Type3,
    Spin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    pub kind: KindJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n: usize,
}

impl From<FactorKind> for FactorJson {
    fn from(k: FactorKind) -> Self {
        match k {
            FactorKind::Type1 { m, n } => Self {
                kind: KindJson::Type1,
                m: Some(m),
                n,
            },
            FactorKind::Type2 { n } => Self {
                kind: KindJson::Type2,
                m: None,
                n,
            },
            FactorKind::Type3 { n } => Self {
                kind: KindJson::Type3,
                m: None,
                n,
            },
            FactorKind::Spin { n } => Self {
                kind: KindJson::Spin,
                m: None,
                n,
            },
        }
    }
}

impl FactorJson {
    pub fn to_kind(&self) -> Result<FactorKind> {
        let n = self.n;
        match (self.kind, self.m) {
            (KindJson::Type1, Some(m)) => Ok(FactorKind::Type1 { m, n }),
            (KindJson::Type1, None) => Err(Error::InvalidFactor("type1 needs both m and n".into())),
            (_, Some(_)) => Err(Error::InvalidFactor("only type1 takes m".into())),
            (KindJson::Type2, None) => Ok(FactorKind::Type2 { n }),
            (KindJson::Type3, None) => Ok(FactorKind::Type3 { n }),
            (KindJson::Spin, None) => Ok(FactorKind::Spin { n }),
        }
    }

    pub fn to_descriptor(&self, tol: ToleranceConfig) -> Result<FactorDescriptor> {
        FactorDescriptor::new(self.to_kind()?, tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexJson {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexJson> for C64 {
    fn from(z: ComplexJson) -> Self {
        c64(z.re, z.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        let rows = |f: fn(&C64) -> f64| {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        Self {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }
}

fn parse_rows(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<CMatrix> {
    let r = re.len();
    let c = re.first().map_or(0, Vec::len);
    if im.len() != r || re.iter().any(|row| row.len() != c) || im.iter().any(|row| row.len() != c) {
        return Err(Error::InvalidElement(
            "re and im must be rectangular arrays of equal shape".into(),
        ));
    }
    Ok(CMatrix::from_fn(r, c, |i, j| c64(re[i][j], im[i][j])))
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<CMatrix> {
        parse_rows(&self.re, &self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub factor: FactorJson,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validated: Option<bool>,
}

impl From<&Element> for ElementJson {
    fn from(x: &Element) -> Self {
        let data = match x.kind() {
            FactorKind::Spin { .. } => x.data().transpose(),
            _ => x.data().clone(),
        };
        let MatrixJson { re, im } = MatrixJson::from(&data);
        Self {
            factor: x.kind().into(),
            re,
            im,
            validated: None,
        }
    }
}

impl From<&Tripotent> for ElementJson {
    fn from(e: &Tripotent) -> Self {
        Self {
            validated: Some(true),
            ..ElementJson::from(e.element())
        }
    }
}

impl ElementJson {
    pub fn to_element(&self, tol: ToleranceConfig) -> Result<Element> {
        let f = self.factor.to_descriptor(tol)?;
        let data = parse_rows(&self.re, &self.im)?;
        let data = match f.kind {
            FactorKind::Spin { .. } => {
                if data.nrows() != 1 {
                    return Err(Error::InvalidElement(
                        "spin elements are written as 1xn".into(),
                    ));
                }
                data.transpose()
            }
            _ => data,
        };
        Element::new(f, data)
    }

    pub fn to_tripotent(&self, tol: ToleranceConfig) -> Result<Tripotent> {
        Tripotent::new(self.to_element(tol)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorJson {
    pub src: FactorJson,
    pub dst: FactorJson,
    #[serde(default = "complex_linear")]
    pub linearity: Linearity,
    pub matrix: MatrixJson,
}

fn complex_linear() -> Linearity {
    Linearity::ComplexLinear
}

impl From<&LinearOperator> for OperatorJson {
    fn from(t: &LinearOperator) -> Self {
        Self {
            src: t.src().kind.into(),
            dst: t.dst().kind.into(),
            linearity: t.linearity(),
            matrix: t.matrix().into(),
        }
    }
}

impl OperatorJson {
    pub fn to_operator(&self, tol: ToleranceConfig) -> Result<LinearOperator> {
        LinearOperator::new(
            self.src.to_descriptor(tol)?,
            self.dst.to_descriptor(tol)?,
            self.matrix.to_matrix()?,
            self.linearity,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub e: ElementJson,
    pub image: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub src: FactorJson,
    pub dst: FactorJson,
    pub pairs: Vec<PairJson>,
}

impl From<&MapOnMinimals> for MapJson {
    fn from(phi: &MapOnMinimals) -> Self {
        Self {
            src: phi.src().kind.into(),
            dst: phi.dst().kind.into(),
            pairs: phi
                .table()
                .iter()
                .map(|(e, img)| PairJson {
                    e: e.into(),
                    image: img.into(),
                })
                .collect(),
        }
    }
}

impl MapJson {
    pub fn to_map(&self, tol: ToleranceConfig) -> Result<MapOnMinimals> {
        let src = self.src.to_descriptor(tol)?;
        let dst = self.dst.to_descriptor(tol)?;
        let table = self
            .pairs
            .iter()
            .map(|p| Ok((p.e.to_tripotent(tol)?, p.image.to_tripotent(tol)?)))
            .collect::<Result<Vec<_>>>()?;
        MapOnMinimals::new(src, dst, table)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Type1SpecJson {
    pub case: Case,
    pub u: MatrixJson,
    pub v: MatrixJson,
}

impl From<&Type1PreserverSpec> for Type1SpecJson {
    fn from(s: &Type1PreserverSpec) -> Self {
        Self {
            case: s.case,
            u: (&s.u).into(),
            v: (&s.v).into(),
        }
    }
}

impl Type1SpecJson {
    pub fn to_spec(&self) -> Result<Type1PreserverSpec> {
        Ok(Type1PreserverSpec {
            case: self.case,
            u: self.u.to_matrix()?,
            v: self.v.to_matrix()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinSpecJson {
    pub lambda: ComplexJson,
    pub u: Vec<Vec<f64>>,
}

impl From<&SpinAutSpec> for SpinSpecJson {
    fn from(s: &SpinAutSpec) -> Self {
        let u = (0..s.u.nrows())
            .map(|i| s.u.row(i).iter().copied().collect())
            .collect();
        Self {
            lambda: s.lambda.into(),
            u,
        }
    }
}

impl SpinSpecJson {
    pub fn to_spec(&self) -> Result<SpinAutSpec> {
        let n = self.u.len();
        if self.u.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSpec("U must be a square array".into()));
        }
        Ok(SpinAutSpec {
            lambda: self.lambda.into(),
            u: DMatrix::from_fn(n, n, |i, j| self.u[i][j]),
        })
    }
}

/// A generator spec: `{"type1": {...}}` or `{"spin": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum PreserverSpecJson {
    Type1(Type1SpecJson),
    Spin(SpinSpecJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub case: Case,
    pub u: MatrixJson,
    pub v: MatrixJson,
    pub residual: f64,
    pub consistency: f64,
    pub left_overlap: f64,
    pub right_overlap: f64,
    pub gauge_note: String,
}

impl From<&RankOneFactorization> for FactorizationJson {
    fn from(f: &RankOneFactorization) -> Self {
        let gauge_note = match f.case {
            Case::A => "T(x) = u x v*; (u, v) ~ (c u, v / conj(c))",
            Case::B => "T(x) = u x^t v*; u, v act conjugate-linearly; (u, v) ~ (c u, v / conj(c))",
        };
        Self {
            case: f.case,
            u: (&f.u).into(),
            v: (&f.v).into(),
            residual: f.residual,
            consistency: f.consistency,
            left_overlap: f.tests.left_overlap,
            right_overlap: f.tests.right_overlap,
            gauge_note: gauge_note.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeirceJson {
    pub dims: [usize; 3],
    pub eigenvalues: Vec<f64>,
    pub projectors: [MatrixJson; 3],
    pub residuals: PeirceResiduals,
}

impl From<&PeirceDecomposition> for PeirceJson {
    fn from(p: &PeirceDecomposition) -> Self {
        Self {
            dims: p.dims(),
            eigenvalues: p.eigenvalues.clone(),
            projectors: [
                (&p.projectors[0]).into(),
                (&p.projectors[1]).into(),
                (&p.projectors[2]).into(),
            ],
            residuals: p.algebra_residuals(),
        }
    }
}
