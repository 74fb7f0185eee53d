//! Buchberger's algorithm in the Weyl algebra, normal forms and membership,
//! toric ideals, and Bernstein polynomials along a coordinate hyperplane.

mod bernstein;
mod buchberger;
mod poly;
mod lift;
mod toric_ideal;

pub use bernstein::{bernstein_exponent, bernstein_polynomial, graph_ideal, BernsteinError, BernsteinExponent, GraphIdeal};
pub use buchberger::{
    buchberger, buchberger_with_budget, default_budget, normal_form, s_pair, GbStats, GroebnerBasis, DEFAULT_BUDGET,
};
pub use lift::{lift_exists_exact, lift_filtered, LiftOutcome};
pub use toric_ideal::{binomial, toric_ideal};

use crate::weyl::WeylElement;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("zero input element")]
    ZeroInput,
    #[error("empty generator list")]
    EmptyInput,
    #[error("step budget of {steps} reductions exceeded")]
    ResourceLimit { steps: u64 },
    #[error("term order is not compatible with Weyl multiplication")]
    OrderNotMultiplicative,
    #[error("Groebner bases need polynomial (non-Laurent) elements")]
    NegativeExponent,
    #[error("operands belong to different algebra signatures")]
    SignatureMismatch,
}

pub fn ideal_membership(p: &WeylElement, gb: &GroebnerBasis) -> Result<bool, GroebnerError> {
    gb.contains(p)
}
