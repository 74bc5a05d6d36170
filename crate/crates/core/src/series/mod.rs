//! Exact sparse Laurent polynomials and the truncated expansions used to
//! compute Segre series.

mod expand;
mod poly;
mod rational_fn;
mod var;

use thiserror::Error;

pub use expand::{
    binomial_general, coefficient_of, descending_expand, geometric_expand, negative_part, shift_expand,
};
pub use poly::{BaseRing, LaurentPoly};
pub use rational_fn::RationalFunction1V;
pub use var::{ExponentVector, VarKind, VariableId};

/// Exact rational coefficient.
pub type Rational = num_rational::BigRational;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("expected a function of {var} with base coefficients, found variable {found}")]
    NotUnivariate { var: String, found: String },
    #[error("leading coefficient of the denominator is not a monomial")]
    NonMonomialLeadingCoefficient,
    #[error("shift contains the pivot variable")]
    ShiftContainsPivot,
    #[error("shift has a negative exponent")]
    NegativeShiftExponent,
    #[error("shift has a constant term")]
    ShiftConstantTerm,
    #[error("series to be shifted already contains shift variable {0}")]
    ShiftVariableInSeries(String),
    #[error("outer and inner variables coincide")]
    SameVariable,
    #[error("monomial involves variable {0} outside the extraction set")]
    ForeignVariable(String),
}
