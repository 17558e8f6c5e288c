use thiserror::Error;

use crate::factors::FactorKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("elements belong to different factors ({left} vs {right})")]
    MixedFactor { left: FactorKind, right: FactorKind },

    #[error("operation `{op}` is not available on {factor}")]
    UnsupportedForFactor {
        op: &'static str,
        factor: FactorKind,
    },

    #[error("invalid factor: {0}")]
    InvalidFactor(String),

    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("element is not a tripotent (residual {residual:.3e})")]
    NotTripotent { residual: f64 },

    #[error("eigenvalue {eigenvalue} of L(e,e) is not within {tol:.1e} of 0, 1/2 or 1")]
    PeirceCluster { eigenvalue: f64, tol: f64 },

    #[error("the zero tripotent has no minimality")]
    ZeroTripotent,

    #[error("decomposition into minimal tripotents failed (residual {residual:.3e})")]
    DecompositionFailed { residual: f64 },

    #[error("tripotent is not minimal (dim E2 = {peirce2_dim})")]
    NotMinimal { peirce2_dim: usize },

    #[error("closed-form and Peirce evaluations of a pure atom disagree by {gap:.3e}")]
    AtomMismatch { gap: f64 },

    #[error("not a minimal projection: {0}")]
    NotAProjection(String),

    #[error("map has no image for minimal tripotent #{index} of the basis")]
    MissingImage { index: usize },

    #[error("could not build a basis of minimal tripotents: {0}")]
    BasisConstructionFailed(String),

    #[error("operator is singular or not square (smallest singular value {min_singular:.3e})")]
    SingularOperator { min_singular: f64 },

    #[error("inner products are not preserved (worst mismatch {mismatch:.3e})")]
    InnerProductMismatch { mismatch: f64 },

    #[error("map does not preserve orthogonality (worst inner product {worst:.3e})")]
    NotOrthogonalityPreserving { worst: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("operator does not preserve rank-one matrices (singular value ratio {ratio:.3e})")]
    NotRankOnePreserving { ratio: f64 },

    #[error("rank-one factorization is inconsistent: {0}")]
    FactorizationInconsistent(String),

    #[error("recovered factor is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("operator is not a triple isomorphism (morphism residual {morphism:.3e}, isometry residual {isometry:.3e})")]
    NotTripleIsomorphism { morphism: f64, isometry: f64 },
}
