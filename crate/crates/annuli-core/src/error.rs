//! Error types, one enum per layer.

use alloc::string::String;
use thiserror::Error;

/// Failures of exact scalar, polynomial and quotient-ring arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// Inversion of an exact zero.
    #[error("division by zero")]
    DivisionByZero,
    /// Operands live in different quadratic fields.
    #[error("field mismatch: sqrt({left}) vs sqrt({right})")]
    FieldMismatch {
        /// Radicand of the left operand.
        left: i64,
        /// Radicand of the right operand.
        right: i64,
    },
    /// Evaluation of a Laurent polynomial with negative exponents at zero.
    #[error("evaluation at a pole (t = 0)")]
    EvalAtPole,
    /// Exact division left a remainder.
    #[error("polynomial division is not exact")]
    NotDivisible,
    /// Radicand is zero or not squarefree.
    #[error("radicand {0} is not a squarefree integer")]
    BadRadicand(i64),
    /// A rational literal failed to parse.
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
}

/// Failures of the curve model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    /// One of the components is constant.
    #[error("component {0} is constant")]
    ConstantComponent(char),
    /// No row of the type table applies.
    #[error("curve cannot be classified: {0}")]
    Unclassifiable(String),
    /// Reduction to handsome form exceeded its move budget.
    #[error("handsome reduction did not terminate within {0} moves")]
    NonTermination(usize),
}

/// Failures of the local analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    /// Characteristic data not resolved below the truncation cap.
    #[error("truncation cap {0} reached before the characteristic data closed")]
    TruncationCap(usize),
    /// A codimension was requested for an unresolved branch.
    #[error("branch is incomplete")]
    IncompleteBranch,
    /// The two places share their asymptotic direction; use the tangency analysis.
    #[error("ps = rq: tangency case")]
    TangentCase,
    /// Neither coordinate has a pole at the place.
    #[error("no coordinate has a pole at the place t = {0}")]
    NotProper(&'static str),
}

/// Failure of the semigroup delta oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// The conductor was not reached below the bound.
    #[error("conductor not reached below bound {0}")]
    BoundTooSmall(usize),
}

/// Failures of the catalog generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    /// A parameter constraint of the family is violated.
    #[error("excluded parameters: {0}")]
    ExcludedParams(String),
    /// A tower move was applied to a curve of the wrong shape.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// Umbrella error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// See [`AlgebraError`].
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// See [`CurveError`].
    #[error(transparent)]
    Curve(#[from] CurveError),
    /// See [`LocalError`].
    #[error(transparent)]
    Local(#[from] LocalError),
    /// See [`OracleError`].
    #[error(transparent)]
    Oracle(#[from] OracleError),
    /// See [`CatalogError`].
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}
