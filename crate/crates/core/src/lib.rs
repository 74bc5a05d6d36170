//! Push-forwards of tautological classes down projective towers, computed
//! exactly from the Segre series of the individual steps.
//!
//! [`series`] holds the exact Laurent-polynomial kernel, [`tower`] the tower
//! model with its closed formula and stepwise push-forward, and [`flag`] the
//! complete flag variety with its Vandermonde and localization integrals.

pub mod corpus;
pub mod flag;
pub mod series;
pub mod tower;

pub use series::{LaurentPoly, Rational};
