//! Finite-dimensional Cartan factors of types 1 to 4: triple products, Peirce
//! decompositions, triple transition pseudo-probabilities and the
//! reconstruction of triple isomorphisms from maps on minimal tripotents.

pub mod error;
pub mod extension;
pub mod factors;
pub mod json;
pub mod linalg;
pub mod preservers;
pub mod transition;
pub mod tripotents;

pub use error::{Error, Result};
pub use extension::{LinearOperator, Linearity, MapOnMinimals};
pub use factors::{Element, FactorDescriptor, FactorKind, ToleranceConfig};
pub use linalg::{CMatrix, CVector, C64};
pub use preservers::{Case, RankOneFactorization, SpinAutSpec, Type1PreserverSpec};
pub use transition::{ttp, PureAtom};
pub use tripotents::{PeirceDecomposition, Tripotent};
