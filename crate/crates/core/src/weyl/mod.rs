//! Weyl algebra arithmetic: signatures, normally ordered elements, term orders,
//! filtrations, and the Fourier-Laplace and Rees rewrites.

mod element;
pub mod filtration;
mod order;
mod parse;
mod signature;
pub mod transform;

pub use element::{q, Monomial, WeylElement};
pub(crate) use element::mono_mul;
pub use filtration::{filtration_degree, initial_form, initial_form_v, is_pure, leading_term, FiltrationDegree, FiltrationSpec};
pub use order::TermOrder;
pub use parse::parse_element;
pub use signature::{Sig, Signature};
pub use transform::{fourier_laplace, fourier_laplace_inverse, fourier_laplace_localized, rees_homogenize, substitute, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("operands belong to different algebra signatures")]
    SignatureMismatch,
    #[error("zero element has no degree or leading term")]
    ZeroElement,
    #[error("unknown name '{0}'")]
    UnknownName(String),
    #[error("invalid name '{0}'")]
    BadName(String),
    #[error("duplicate name '{0}'")]
    DuplicateName(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported localization: {0}")]
    UnsupportedLocalization(String),
    #[error("element is not expressible in the localized ring (negative power of {0})")]
    NotLocalized(String),
}
