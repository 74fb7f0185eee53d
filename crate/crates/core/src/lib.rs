//! Exact computations for GKZ hypergeometric systems and the filtrations that
//! carry their Hodge structure: toric cone data, Weyl algebra Groebner bases,
//! Euler-Koszul and Ishida complexes, and shift bookkeeping.

pub mod gkz;
pub mod groebner;
pub mod homological;
pub mod linalg;
pub mod toric;
pub mod weyl;
