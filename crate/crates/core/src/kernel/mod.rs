//! Exact arithmetic in the Leavitt path algebra over ℚ, with witnesses for
//! the relation `x ≾ y` and for proper infiniteness.

mod element;
mod infinite;
mod literal;
mod matrix;
mod normalize;
mod reduce;
mod witness;

pub use element::{scalar, Element, Leavitt, Monomial, Scalar};
pub use infinite::{PiOutcome, PiRoute, SearchBudget};
pub use matrix::ElementMatrix;
pub use normalize::RewriteOrder;
pub use witness::Witness;

use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("elements belong to different algebras")]
    GraphMismatch,
    #[error("malformed monomial: {0}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element is zero")]
    ZeroElement,
    #[error("condition (L) fails: cycle {0} has no exit")]
    ConditionLFails(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("step budget exhausted in {0}")]
    NonTermination(String),
    #[error("syntax error at token {position}: {message}")]
    Syntax { position: usize, message: String },
}
