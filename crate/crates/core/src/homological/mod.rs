//! Euler-Koszul complexes, graded Koszul homology, strictness of filtered
//! morphisms and the Ishida complex computing local cohomology of `C[N A^s]`.

mod complex;
mod ishida;
mod koszul;
mod strictness;

pub use complex::{ComplexPiece, PieceHomology};
pub use ishida::{
    default_box, ishida_cohomology, local_cohomology_scan, Face, IshidaDegree, IshidaReport, IshidaSetup,
    LocalCohomologyReport, ProjectionCheck,
};
pub use koszul::{
    euler_koszul, euler_koszul_regularity, graded_koszul_homology, standard_monomial_counts, Chain,
    CommutativeQuotient, EulerKoszul, DEFAULT_KOSZUL_BOUND, KoszulPiece, KoszulReport, RegularityReport,
};
pub use strictness::{
    duality_strictness, filtration_snapshot, strictness_check, FilteredQuotient, FiltrationSnapshot, Grading,
    SnapshotPiece, StrictnessFailure, DEFAULT_STRICTNESS_BOUND, StrictnessReport, STRICTNESS_SLACK,
};

use crate::gkz::GkzError;
use crate::groebner::GroebnerError;
use crate::linalg::LinalgError;
use crate::toric::ToricError;
use crate::weyl::WeylError;

#[derive(Debug, thiserror::Error)]
pub enum HomologicalError {
    #[error("not well defined: {0}")]
    NotWellDefined(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("no basis elements up to bound {0}")]
    BoundTooSmall(usize),
    #[error(transparent)]
    Gkz(#[from] GkzError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
