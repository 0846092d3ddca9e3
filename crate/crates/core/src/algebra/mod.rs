//! Arithmetic substrate: prime fields, polynomials, evaluation domains.

pub mod domain;
pub mod field;
pub mod limbs;
pub mod poly;

pub use domain::{DomainKind, EvaluationDomain};
pub use field::{FieldElement, FieldParams};
pub use poly::Polynomial;
